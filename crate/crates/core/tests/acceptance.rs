//! Acceptance suite: golden examples and randomized property runs, one
//! PASS/FAIL line per criterion, each checked against its time budget.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use graded_cones::cli::{execute, Command, Options, Status};
use graded_cones::cone::{linear_part, make_homogeneous_ideal, minimal_embedding, singular_locus_ideal, smooth_at_origin, HomogeneousIdeal};
use graded_cones::grading::{homogeneous_degree, positivity_witness, verify_certificate, verify_witness, GradingMap, Positivity};
use graded_cones::ideal::{ideal_combine, ideal_intersection, krull_dimension, vanishes_at, CombineKind, IdealPresentation};
use graded_cones::strata::{fiber_has_initial_ideal, on_stratum, reduced_stratum, MonomialIdealSpec, TailMode};
use graded_cones::torus::{act, low_orbit_stratum, orbit_closure_ideal, rational_curve_through, torus_character, RationalPoint};
use graded_cones::poly::parse_polynomial;
use graded_cones::{BigRational, Polynomial, Ring, TermOrder};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

const F: &str = "y1^2*y2*y3 + y1*y4 + y2*y3^2*y4";

fn ex45() -> GradingMap {
    GradingMap::new(&ring(4), 2, vec![vec![1, 2], vec![1, 0], vec![0, 1], vec![2, 3]]).unwrap()
}

fn poly(text: &str, g: &GradingMap) -> Polynomial {
    parse_polynomial(text, g.ring()).unwrap()
}

fn hypersurface(g: &GradingMap) -> HomogeneousIdeal {
    let ideal = IdealPresentation::new(g.ring(), vec![poly(F, g)]).unwrap();
    make_homogeneous_ideal(&ideal, g).unwrap()
}

fn session() -> String {
    format!("ring y1 y2 y3 y4;\ngrading [[1,2],[1,0],[0,1],[2,3]];\nideal F = {F};\n")
}

fn criterion_1() -> Check {
    let report = execute(&session(), Command::Check, &Options::default());
    ensure!(report.status == Status::Ok, "check rejected: {:?}", report.diagnostics);
    ensure!(report.result["homogeneous"] == true, "not reported homogeneous");
    let degree = &report.result["degrees"][0];
    ensure!(*degree == serde_json::json!([3, 5]), "degree {degree}");
    Ok(format!("degree {degree}"))
}

fn proportional(f: &Polynomial, g: &Polynomial) -> bool {
    let Some((m, c)) = f.terms().next() else {
        return g.is_zero();
    };
    let d = g.coefficient(m);
    !d.is_zero() && &f.scale(&(d / c)) == g
}

fn criterion_2() -> Check {
    let g = ex45();
    let closure = ok(orbit_closure_ideal(&RationalPoint::from_integers(&[1, 1, 1, 1]), &g))?;
    let expected = IdealPresentation::new(g.ring(), vec![poly("y1 - y2*y3^2", &g), poly("y4 - y2^2*y3^3", &g)]).unwrap();
    ensure!(ok(closure.base().contains_ideal(&expected))?, "formula not contained in the closure ideal");
    ensure!(ok(expected.contains_ideal(closure.base()))?, "closure ideal not contained in the formula");
    let mut rng = StdRng::seed_from_u64(45);
    for _ in 0..5 {
        let a: Vec<BigRational> = (0..4).map(|_| nonzero_rational(&mut rng)).collect();
        let p = RationalPoint::new(a.clone());
        let c = ok(orbit_closure_ideal(&p, &g))?;
        let y = |i: usize| Polynomial::variable(g.ring(), i);
        let k = |x: BigRational| Polynomial::constant(g.ring(), x);
        let f1 = &(&k(&a[1] * &a[2] * &a[2]) * &y(0)) - &(&k(a[0].clone()) * &(&y(1) * &(&y(2) * &y(2))));
        let f2 = &(&k(&a[1] * &a[1] * &a[2] * &a[2] * &a[2]) * &y(3))
            - &(&k(a[3].clone()) * &(&y(1).pow(2) * &y(2).pow(3)));
        let gens = c.generators();
        ensure!(gens.len() == 2, "{} generators at {p}", gens.len());
        ensure!(
            proportional(&gens[0], &f1) && proportional(&gens[1], &f2),
            "generators at {p}: {}, {}",
            gens[0],
            gens[1]
        );
    }
    Ok("P(1,1,1,1) and 5 random points match".into())
}

fn criterion_3() -> Check {
    let g = GradingMap::new(&ring(4), 2, vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]]).unwrap();
    let u = ok(low_orbit_stratum(&g, 1))?;
    ensure!(u.components == vec![vec![0], vec![1, 2, 3]], "components {:?}", u.components);
    Ok("{y2=y3=y4=0} and {y1=0}".into())
}

fn criterion_4() -> Check {
    let g = ex45();
    let v = hypersurface(&g);
    let sing = ok(singular_locus_ideal(&v))?;
    let locus = &sing.ideal;
    let mut rng = StdRng::seed_from_u64(49);
    let p2 = RationalPoint::from_integers(&[0, 1, 0, 0]);
    let p3 = RationalPoint::from_integers(&[0, 0, 1, 0]);
    let mut singular = vec![p2.clone(), p3.clone(), RationalPoint::origin(4)];
    for _ in 0..10 {
        for p in [&p2, &p3] {
            singular.push(act(&random_torus_element(&mut rng, 2), p, &g));
        }
    }
    for p in &singular {
        ensure!(vanishes_at(locus, &p.coords), "singular ideal does not vanish at {p}");
    }
    let f = poly(F, &g);
    let mut smooth = 0;
    while smooth < 10 {
        let y: Vec<BigRational> = (0..3).map(|_| nonzero_rational(&mut rng)).collect();
        let coeff = &y[0] + &y[1] * &y[2] * &y[2];
        if coeff.is_zero() {
            continue;
        }
        let y4 = -(&y[0] * &y[0] * &y[1] * &y[2]) / coeff;
        let p = RationalPoint::new(vec![y[0].clone(), y[1].clone(), y[2].clone(), y4]);
        ensure!(f.evaluate(&p.coords).is_zero(), "generated point {p} is not on V");
        ensure!(!vanishes_at(locus, &p.coords), "singular ideal vanishes at the torus point {p}");
        smooth += 1;
    }
    Ok(format!("{} singular points, 10 smooth points", singular.len()))
}

fn criterion_5() -> Check {
    let mut rng = StdRng::seed_from_u64(241);
    let mut generators = 0;
    for case in 0..100 {
        let s = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=2);
        let g = positive_grading(&mut rng, s, m);
        let classes = degree_classes(&g, 4);
        let random_ideal = |rng: &mut StdRng| {
            let k = rng.gen_range(1..=3);
            let gens = (0..k).map(|_| homogeneous_polynomial(rng, &g, &classes)).collect();
            IdealPresentation::new(g.ring(), gens).unwrap()
        };
        let a = random_ideal(&mut rng);
        let b = random_ideal(&mut rng);
        let results = [
            ok(ideal_combine(&a, &b, CombineKind::Sum))?,
            ok(ideal_combine(&a, &b, CombineKind::Product))?,
            ok(ideal_intersection(&a, &b))?,
        ];
        for c in &results {
            for f in c.generators() {
                ensure!(homogeneous_degree(f, &g).is_some(), "case {case}: {f} is not homogeneous");
                generators += 1;
            }
        }
    }
    Ok(format!("100 pairs, {generators} generators homogeneous"))
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(32);
    let mut done = 0;
    let mut smooth_count = 0;
    while done < 50 {
        let s = rng.gen_range(2..=4);
        let m = rng.gen_range(1..=2);
        let g = positive_grading(&mut rng, s, m);
        let classes = degree_classes(&g, 3);
        let k = rng.gen_range(1..=3);
        let gens = (0..k).map(|_| homogeneous_with_linear_terms(&mut rng, &g, &classes)).collect();
        let ideal = IdealPresentation::new(g.ring(), gens).unwrap();
        let Ok(a) = make_homogeneous_ideal(&ideal, &g) else {
            // the unit ideal has no cone
            continue;
        };
        done += 1;
        let e = ok(minimal_embedding(&a, None))?;
        let full = g.ring();
        let back: Vec<Option<usize>> = (0..e.kept.len()).map(|j| Some(e.kept[j])).collect();
        let mut regenerated: Vec<Polynomial> = Vec::new();
        for f in e.embedded.generators() {
            regenerated.push(ok(f.map_ring(full, &back))?);
        }
        for (p, q) in &e.substitution {
            regenerated.push(&Polynomial::variable(full, *p) - &ok(q.map_ring(full, &back))?);
        }
        let regenerated = ok(IdealPresentation::new(full, regenerated))?;
        ensure!(ok(regenerated.equals(a.base()))?, "case {done}: substitution does not regenerate {:?}", a.base());
        let before = ok(krull_dimension(a.base()))?;
        let after = ok(krull_dimension(e.embedded.base()))?;
        ensure!(before == after, "case {done}: dimension {before} became {after}");
        ensure!(linear_part(&e.embedded).dim() == 0, "case {done}: embedded ideal has a linear part");
        let smooth = ok(smooth_at_origin(&a))?.smooth;
        ensure!(
            smooth == e.embedded.base().is_zero_ideal(),
            "case {done}: smooth = {smooth} but embedded ideal {:?}",
            e.embedded.base()
        );
        smooth_count += smooth as usize;
    }
    Ok(format!("50 ideals, {smooth_count} smooth at the origin"))
}

fn criterion_7() -> Check {
    let mut rng = StdRng::seed_from_u64(41);
    for case in 0..100 {
        let s = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=3);
        let g = positive_grading(&mut rng, s, m);
        let classes = degree_classes(&g, 4);
        let f = homogeneous_polynomial(&mut rng, &g, &classes);
        let d = homogeneous_degree(&f, &g).expect("homogeneous by construction");
        let p = random_point(&mut rng, s);
        let t = random_torus_element(&mut rng, m);
        let lhs = f.evaluate(&act(&t, &p, &g).coords);
        let rhs = torus_character(&t, &d) * f.evaluate(&p.coords);
        ensure!(lhs == rhs, "case {case}: F(t·p) = {lhs}, t^d F(p) = {rhs}");
    }
    Ok("100 triples".into())
}

/// Independent check that no small `α ≥ 0` lies in the kernel.
fn small_kernel_vector(g: &GradingMap) -> bool {
    let s = g.columns().len();
    let mut alpha = vec![0i64; s];
    loop {
        let mut k = 0;
        while k < s && alpha[k] == 3 {
            alpha[k] = 0;
            k += 1;
        }
        if k == s {
            return false;
        }
        alpha[k] += 1;
        let zero = (0..g.rank()).all(|r| (0..s).map(|i| alpha[i] * g.columns()[i][r]).sum::<i64>() == 0);
        if zero {
            return true;
        }
    }
}

fn criterion_8() -> Check {
    let mut rng = StdRng::seed_from_u64(22);
    let (mut witnesses, mut certificates) = (0, 0);
    for case in 0..100 {
        let s = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=3);
        let cols: Vec<Vec<i64>> = (0..s).map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let g = GradingMap::new(&ring(s), m, cols.clone()).unwrap();
        match positivity_witness(&g) {
            Positivity::Witness(w) => {
                ensure!(verify_witness(&g, &w).is_ok(), "case {case}: witness {w:?} fails for {cols:?}");
                ensure!(!small_kernel_vector(&g), "case {case}: witness but a kernel vector exists for {cols:?}");
                witnesses += 1;
            }
            Positivity::Certificate(c) => {
                ensure!(verify_certificate(&g, &c), "case {case}: certificate {c:?} fails for {cols:?}");
                certificates += 1;
            }
        }
    }
    Ok(format!("{witnesses} witnesses, {certificates} certificates"))
}

fn criterion_9() -> Check {
    let lex = TermOrder::lex();
    let x01 = Ring::new(["x0", "x1"]);
    let r = ok(reduced_stratum(&ok(MonomialIdealSpec::parse(&x01, "x0", lex.clone()))?, TailMode::Homogeneous))?;
    ensure!(r.stratum_ideal.ring().nvars() == 1 && r.stratum_ideal.is_zero_ideal(), "J=(x0): {:?}", r.stratum_ideal);

    let xy = Ring::new(["x", "y"]);
    let r = ok(reduced_stratum(&ok(MonomialIdealSpec::parse(&xy, "x^2, x*y, y^2", lex.clone()))?, TailMode::Homogeneous))?;
    ensure!(r.stratum_ideal.ring().nvars() == 0 && r.stratum_ideal.is_zero_ideal(), "J=(x^2,xy,y^2): {:?}", r.stratum_ideal);

    let r = ok(reduced_stratum(&ok(MonomialIdealSpec::parse(&xy, "x^2, x*y", lex))?, TailMode::Homogeneous))?;
    let shown: Vec<String> = r.stratum_ideal.generators().iter().map(|f| f.to_string()).collect();
    ensure!(shown == ["C1 + C2^2"], "J=(x^2,xy): {shown:?}");
    ensure!(r.grading.columns() == [vec![2, -2], vec![1, -1]], "coefficient degrees {:?}", r.grading.columns());
    ensure!(r.grading.witness().is_some(), "no positivity witness");
    let e = r.reduced.as_ref().ok_or("stratum was not reduced")?;
    ensure!(
        e.embedded.base().is_zero_ideal() && e.kept_ring().names() == ["C2"],
        "reduced form {:?}",
        e.embedded.base()
    );
    for c in -2i64..=2 {
        let values = vec![int(-c * c), int(c)];
        ensure!(on_stratum(&r, &values), "({}, {c}) not on the stratum", -c * c);
        ensure!(ok(fiber_has_initial_ideal(&r.scheme, &values))?, "fiber at c = {c} has a different initial ideal");
    }
    Ok("three golden strata, 5 fibers".into())
}

fn criterion_10() -> Check {
    let g = ex45();
    let f = poly(F, &g);
    let v = hypersurface(&g);
    let mut rng = StdRng::seed_from_u64(47);
    let mut on_v = 0;
    for case in 0..20 {
        let p = if case % 2 == 0 {
            random_point(&mut rng, 4)
        } else {
            // a point of V: y1 = 0 forces y2*y3^2*y4 = 0
            let mut p = random_point(&mut rng, 4);
            p.coords[0] = int(0);
            let k = rng.gen_range(1..=3);
            p.coords[k] = int(0);
            p
        };
        let c = ok(rational_curve_through(&p, &g))?;
        ensure!(c.exponents == [3, 1, 1, 5], "exponents {:?}", c.exponents);
        ensure!(g.witness().map(|w| w.omega.clone()) == Some(vec![1, 1]), "witness {:?}", g.witness());
        ensure!(c.at(&int(0)).is_origin(), "curve misses the origin");
        ensure!(c.at(&int(1)) == p, "curve misses {p}");
        if f.evaluate(&p.coords).is_zero() {
            on_v += 1;
            ensure!(c.lies_on(v.base()), "curve through {p} leaves V");
        }
    }
    Ok(format!("20 curves, {on_v} on V"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 homogeneity of F", criterion_1, Duration::from_secs(1)),
        ("2 orbit closure", criterion_2, Duration::from_secs(5)),
        ("3 low orbit stratum", criterion_3, Duration::from_secs(1)),
        ("4 singular locus", criterion_4, Duration::from_secs(10)),
        ("5 homogeneity closure", criterion_5, Duration::from_secs(300)),
        ("6 minimal embedding", criterion_6, Duration::from_secs(300)),
        ("7 equivariance", criterion_7, Duration::from_secs(30)),
        ("8 positivity dichotomy", criterion_8, Duration::from_secs(30)),
        ("9 groebner strata", criterion_9, Duration::from_secs(5)),
        ("10 rational curves", criterion_10, Duration::from_secs(10)),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(detail) if elapsed <= budget => format!("PASS  criterion {name}: {detail} ({elapsed:.2?})"),
            Ok(detail) => format!("FAIL  criterion {name}: {detail}, but took {elapsed:.2?} > {budget:?}"),
            Err(why) => format!("FAIL  criterion {name}: {why} ({elapsed:.2?})"),
        };
        if line.starts_with("FAIL") {
            failures += 1;
        }
        println!("{line}");
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Random generators shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use graded_cones::grading::{Degree, GradingMap};
use graded_cones::torus::RationalPoint;
use graded_cones::{BigRational, Monomial, Polynomial, Ring};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn ring(s: usize) -> Arc<Ring> {
    Ring::new((1..=s).map(|i| format!("y{i}")))
}

pub fn small_rational(rng: &mut StdRng) -> BigRational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut StdRng) -> BigRational {
    loop {
        let r = small_rational(rng);
        if r != int(0) {
            return r;
        }
    }
}

/// A random grading with entries in [-2, 3] that admits a positivity witness.
pub fn positive_grading(rng: &mut StdRng, s: usize, m: usize) -> GradingMap {
    let r = ring(s);
    loop {
        let cols: Vec<Vec<i64>> = (0..s)
            .map(|_| (0..m).map(|_| rng.gen_range(-2..=3)).collect())
            .collect();
        let g = GradingMap::new(&r, m, cols).unwrap();
        if g.is_positive() {
            return g;
        }
    }
}

fn monomials_up_to(s: usize, d: u32) -> Vec<Monomial> {
    fn rec(s: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == s {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(s, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(s, d, &mut Vec::new(), &mut out);
    out
}

/// Non-constant monomials of standard degree ≤ `d`, grouped by λ-degree.
pub fn degree_classes(g: &GradingMap, d: u32) -> BTreeMap<Degree, Vec<Monomial>> {
    let mut out: BTreeMap<Degree, Vec<Monomial>> = BTreeMap::new();
    for m in monomials_up_to(g.ring().nvars(), d) {
        if !m.is_one() {
            out.entry(g.degree_of(&m)).or_default().push(m);
        }
    }
    out
}

/// A random nonzero λ-homogeneous polynomial with terms from one class.
pub fn homogeneous_polynomial(rng: &mut StdRng, g: &GradingMap, classes: &BTreeMap<Degree, Vec<Monomial>>) -> Polynomial {
    let keys: Vec<&Degree> = classes.keys().collect();
    let class = &classes[*keys.choose(rng).unwrap()];
    homogeneous_in_class(rng, g.ring(), class, None)
}

fn homogeneous_in_class(rng: &mut StdRng, r: &Arc<Ring>, class: &[Monomial], force: Option<&Monomial>) -> Polynomial {
    let k = rng.gen_range(1..=class.len().min(3));
    let mut picked: Vec<&Monomial> = class.choose_multiple(rng, k).collect();
    if let Some(f) = force {
        if !picked.contains(&f) {
            picked.push(f);
        }
    }
    let terms = picked.into_iter().map(|m| (m.clone(), nonzero_rational(rng)));
    Polynomial::from_terms(r, terms)
}

/// Like [`homogeneous_polynomial`], but half the time in the degree of a
/// variable with that variable present, so that linear parts are common.
pub fn homogeneous_with_linear_terms(
    rng: &mut StdRng,
    g: &GradingMap,
    classes: &BTreeMap<Degree, Vec<Monomial>>,
) -> Polynomial {
    if rng.gen_bool(0.5) {
        let s = g.ring().nvars();
        let i = rng.gen_range(0..s);
        let v = Monomial::variable(s, i);
        let class = &classes[&g.column(i)];
        homogeneous_in_class(rng, g.ring(), class, Some(&v))
    } else {
        homogeneous_polynomial(rng, g, classes)
    }
}

pub fn random_point(rng: &mut StdRng, s: usize) -> RationalPoint {
    RationalPoint::new((0..s).map(|_| small_rational(rng)).collect())
}

pub fn random_torus_element(rng: &mut StdRng, m: usize) -> Vec<BigRational> {
    (0..m).map(|_| nonzero_rational(rng)).collect()
}

//! λ-cones: homogeneous ideals, linear parts, minimal embeddings into the
//! tangent space at the origin, smoothness and singular loci.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::{homogeneous_components, Degree, GradingMap};
use crate::ideal::{krull_dimension, IdealPresentation};
use crate::poly::{BigRational, Monomial, Polynomial, Ring, TermOrder};

/// A proper ideal generated by λ-homogeneous polynomials under a positive grading.
#[derive(Clone, Debug)]
pub struct HomogeneousIdeal {
    base: IdealPresentation,
    grading: GradingMap,
    degrees: Vec<Degree>,
}

impl HomogeneousIdeal {
    pub fn base(&self) -> &IdealPresentation {
        &self.base
    }

    pub fn grading(&self) -> &GradingMap {
        &self.grading
    }

    /// One degree per generator, in generator order.
    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.base.ring()
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.base.generators()
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }
}

fn describe_degrees(ds: &[Degree]) -> String {
    ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
}

/// Degrees of the generators, failing on the first non-homogeneous one.
pub fn generator_degrees(gens: &[Polynomial], g: &GradingMap) -> Result<Vec<Degree>> {
    gens.iter()
        .map(|f| {
            let comps = homogeneous_components(f, g)?;
            if comps.len() == 1 {
                Ok(comps.into_keys().next().unwrap())
            } else {
                Err(Error::NotHomogeneous {
                    generator: f.to_string(),
                    degrees: describe_degrees(&comps.into_keys().collect::<Vec<_>>()),
                })
            }
        })
        .collect()
}

/// Validates homogeneity of every generator and properness of the ideal.
pub fn make_homogeneous_ideal(gens: &IdealPresentation, g: &GradingMap) -> Result<HomogeneousIdeal> {
    Ring::ensure_same(gens.ring(), g.ring())?;
    g.require_positive()?;
    let degrees = generator_degrees(gens.generators(), g)?;
    if !gens.is_proper()? {
        return Err(Error::ImproperIdeal);
    }
    Ok(HomogeneousIdeal {
        base: gens.clone(),
        grading: g.clone(),
        degrees,
    })
}

/// Row-reduced basis `B₁,…,B_e` of the linear part `L(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearPartBasis {
    pub forms: Vec<Polynomial>,
    pub pivots: Vec<usize>,
}

impl LinearPartBasis {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }
}

/// Reduced row-echelon form over ℚ, pivoting on the earliest column.
fn rref(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn linear_coefficients(f: &Polynomial) -> Vec<BigRational> {
    let s = f.nvars();
    (0..s)
        .map(|i| f.coefficient(&Monomial::variable(s, i)))
        .collect()
}

/// Extracts and row-reduces the standard-degree-1 parts of the generators.
pub fn linear_part(a: &HomogeneousIdeal) -> LinearPartBasis {
    let s = a.nvars();
    let rows: Vec<Vec<BigRational>> = a
        .generators()
        .iter()
        .map(linear_coefficients)
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let (rows, pivots) = rref(rows, s);
    let forms = rows
        .into_iter()
        .map(|row| {
            Polynomial::from_terms(
                a.ring(),
                row.into_iter()
                    .enumerate()
                    .map(|(i, c)| (Monomial::variable(s, i), c)),
            )
        })
        .collect();
    LinearPartBasis { forms, pivots }
}

/// Output of [`minimal_embedding`].
#[derive(Clone, Debug)]
pub struct EmbeddingResult {
    /// Indices of the surviving variables `y''`, ascending.
    pub kept: Vec<usize>,
    /// Indices of the eliminated variables, ascending.
    pub eliminated: Vec<usize>,
    /// `y_p ↦ q_p(y'')` for every eliminated `y_p`, as polynomials in `k[y'']`.
    pub substitution: Vec<(usize, Polynomial)>,
    /// The image ideal in `k[y'']` with the restricted grading.
    pub embedded: HomogeneousIdeal,
    pub tangent_dim: usize,
    pub linear_part: LinearPartBasis,
}

impl EmbeddingResult {
    /// Ring of `y''`.
    pub fn kept_ring(&self) -> &Arc<Ring> {
        self.embedded.ring()
    }

    /// Images of all original variables in `k[y'']`.
    pub fn images(&self, source: &Arc<Ring>) -> Vec<Polynomial> {
        let target = self.kept_ring();
        (0..source.nvars())
            .map(|i| match self.kept.iter().position(|&k| k == i) {
                Some(j) => Polynomial::variable(target, j),
                None => self
                    .substitution
                    .iter()
                    .find(|(p, _)| *p == i)
                    .map(|(_, q)| q.clone())
                    .expect("every eliminated variable has a substitution"),
            })
            .collect()
    }
}

/// Projects the λ-cone isomorphically onto the coordinate subspace `y''`.
///
/// Without `kept`, `y''` is the complement of the pivot variables of the
/// linear part, which gives the embedding into the Zariski tangent space.
pub fn minimal_embedding(a: &HomogeneousIdeal, kept: Option<&[usize]>) -> Result<EmbeddingResult> {
    let s = a.nvars();
    let lp = linear_part(a);
    let kept: Vec<usize> = match kept {
        None => (0..s).filter(|i| !lp.pivots.contains(i)).collect(),
        Some(k) => {
            let mut k = k.to_vec();
            k.sort_unstable();
            k.dedup();
            if let Some(&bad) = k.iter().find(|&&i| i >= s) {
                return Err(Error::InvalidInput(format!("variable index {bad} out of range")));
            }
            check_spanning(a, &lp, &k)?;
            k
        }
    };
    let eliminated: Vec<usize> = (0..s).filter(|i| !kept.contains(i)).collect();
    let order = TermOrder::elimination(s, &eliminated);
    let gb = a.base().groebner_basis(&order)?;

    let target = a.ring().restricted(&kept);
    let map: Vec<Option<usize>> = (0..s).map(|i| kept.iter().position(|&k| k == i)).collect();

    let mut substitution = Vec::with_capacity(eliminated.len());
    for &p in &eliminated {
        let y = Monomial::variable(s, p);
        let elem = gb
            .elements()
            .iter()
            .find(|g| g.leading_monomial(&order) == Some(&y))
            .ok_or_else(|| {
                Error::Internal(format!(
                    "no basis element solves for {}",
                    a.ring().name(p)
                ))
            })?;
        let q = &Polynomial::variable(a.ring(), p) - elem;
        if q.involves_any(&eliminated) {
            return Err(Error::Internal(format!(
                "substitution for {} involves eliminated variables",
                a.ring().name(p)
            )));
        }
        substitution.push((p, q.map_ring(&target, &map)?));
    }

    let embedded_gens = gb
        .elements()
        .iter()
        .filter(|g| !g.involves_any(&eliminated))
        .map(|g| g.map_ring(&target, &map))
        .collect::<Result<Vec<_>>>()?;
    let grading = a.grading().restricted(&target, &kept)?;
    let embedded = make_homogeneous_ideal(&IdealPresentation::new(&target, embedded_gens)?, &grading)?;
    Ok(EmbeddingResult {
        tangent_dim: kept.len(),
        kept,
        eliminated,
        substitution,
        embedded,
        linear_part: lp,
    })
}

fn check_spanning(a: &HomogeneousIdeal, lp: &LinearPartBasis, kept: &[usize]) -> Result<()> {
    let s = a.nvars();
    let mut rows: Vec<Vec<BigRational>> = lp.forms.iter().map(linear_coefficients).collect();
    for &k in kept {
        let mut r = vec![BigRational::zero(); s];
        r[k] = BigRational::one();
        rows.push(r);
    }
    let (_, pivots) = rref(rows, s);
    if pivots.len() == s {
        return Ok(());
    }
    // the first coordinate outside the span
    let (basis, _) = rref(
        lp.forms
            .iter()
            .map(linear_coefficients)
            .chain(kept.iter().map(|&k| {
                let mut r = vec![BigRational::zero(); s];
                r[k] = BigRational::one();
                r
            }))
            .collect(),
        s,
    );
    for i in 0..s {
        let mut rows = basis.clone();
        let mut r = vec![BigRational::zero(); s];
        r[i] = BigRational::one();
        rows.push(r);
        if rref(rows, s).1.len() > basis.len() {
            return Err(Error::SpanningFailure {
                form: a.ring().name(i).to_string(),
            });
        }
    }
    unreachable!("rank deficit implies an uncovered coordinate")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub dim_v: usize,
    pub dim_l: usize,
    pub ambient: usize,
    pub smooth: bool,
}

/// The origin is smooth iff `dim V = s − dim L(a)`; in that case the minimal
/// embedding is checked to be the zero ideal.
pub fn smooth_at_origin(a: &HomogeneousIdeal) -> Result<SmoothnessReport> {
    let dim_v = krull_dimension(a.base())?;
    let dim_l = linear_part(a).dim();
    let ambient = a.nvars();
    let smooth = dim_v + dim_l == ambient;
    if smooth {
        let e = minimal_embedding(a, None)?;
        if !e.embedded.base().is_zero_ideal() {
            return Err(Error::Internal(
                "smooth origin but the minimal embedding is not the zero ideal".into(),
            ));
        }
    }
    Ok(SmoothnessReport {
        dim_v,
        dim_l,
        ambient,
        smooth,
    })
}

/// Ideal of the singular locus, or of a superset of it when `exact` is false.
#[derive(Clone, Debug)]
pub struct SingularLocus {
    pub ideal: IdealPresentation,
    /// Degree of every generator of `ideal`.
    pub degrees: Vec<Degree>,
    /// True for hypersurfaces and complete intersections.
    pub exact: bool,
    pub codimension: usize,
}

impl SingularLocus {
    /// True when the locus is empty, i.e. the ideal is the unit ideal.
    pub fn is_empty(&self) -> Result<bool> {
        Ok(!self.ideal.is_proper()?)
    }
}

fn determinant(m: &[Vec<Polynomial>], ring: &Arc<Ring>) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(&minor, ring);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// `a` plus the `c × c` minors of the Jacobian, `c = s − dim V`.
pub fn singular_locus_ideal(a: &HomogeneousIdeal) -> Result<SingularLocus> {
    let ring = a.ring();
    let s = a.nvars();
    let gens = a.generators();
    let dim = krull_dimension(a.base())?;
    let c = s - dim;
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|f| (0..s).map(|i| f.derivative(i)).collect())
        .collect();
    let mut out: Vec<Polynomial> = gens.to_vec();
    if c <= gens.len() {
        for rows in subsets(gens.len(), c) {
            for cols in subsets(s, c) {
                let m: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&k| jac[r][k].clone()).collect())
                    .collect();
                let d = determinant(&m, ring);
                if !d.is_zero() && !out.contains(&d) {
                    out.push(d);
                }
            }
        }
    }
    let ideal = IdealPresentation::new(ring, out)?;
    let degrees = generator_degrees(ideal.generators(), a.grading())?;
    Ok(SingularLocus {
        ideal,
        degrees,
        exact: gens.len() == c,
        codimension: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::vanishes_at;
    use crate::poly::parse_polynomial;

    fn hom(names: &[&str], cols: Vec<Vec<i64>>, gens: &[&str]) -> Result<HomogeneousIdeal> {
        let r = Ring::new(names.iter().copied());
        let m = cols.first().map_or(1, Vec::len);
        let g = GradingMap::new(&r, m, cols)?;
        let gens = gens.iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        make_homogeneous_ideal(&IdealPresentation::new(&r, gens)?, &g)
    }

    fn ex45_cols() -> Vec<Vec<i64>> {
        vec![vec![1, 2], vec![1, 0], vec![0, 1], vec![2, 3]]
    }

    const F: &str = "y1^2*y2*y3 + y1*y4 + y2*y3^2*y4";

    #[test]
    fn construction_validates() {
        let a = hom(&["y1", "y2", "y3", "y4"], ex45_cols(), &[F]).unwrap();
        assert_eq!(a.degrees(), &[Degree(vec![3, 5])]);
        match hom(&["y1", "y2", "y3", "y4"], ex45_cols(), &["y1 + y2"]) {
            Err(Error::NotHomogeneous { degrees, .. }) => assert_eq!(degrees, "[1,0], [1,2]"),
            other => panic!("{other:?}"),
        }
        let b = hom(&["y1", "y2"], vec![vec![2], vec![1]], &["y1 - y2^2"]).unwrap();
        assert_eq!(b.degrees(), &[Degree(vec![2])]);
        assert!(matches!(
            hom(&["y1", "y2"], vec![vec![1], vec![-1]], &["y1*y2"]),
            Err(Error::NotPositive { .. })
        ));
        assert!(matches!(hom(&["y1"], vec![vec![1]], &["y1", "1"]), Err(Error::ImproperIdeal)));
    }

    #[test]
    fn linear_parts() {
        let a = hom(&["y1", "y2"], vec![vec![2], vec![1]], &["y1 - y2^2"]).unwrap();
        let lp = linear_part(&a);
        assert_eq!(lp.pivots, vec![0]);
        assert_eq!(lp.forms[0].to_string(), "y1");
        let b = hom(&["y1", "y2"], vec![vec![1], vec![1]], &["y1*y2"]).unwrap();
        assert_eq!(linear_part(&b).dim(), 0);
        let c = hom(
            &["y1", "y2", "y3"],
            vec![vec![2], vec![1], vec![1]],
            &["y1 + y2^2", "y3"],
        )
        .unwrap();
        let lp = linear_part(&c);
        assert_eq!(lp.pivots, vec![0, 2]);
        let shown: Vec<String> = lp.forms.iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, vec!["y1", "y3"]);
    }

    #[test]
    fn embedding_examples() {
        let a = hom(&["y1", "y2"], vec![vec![2], vec![1]], &["y1 - y2^2"]).unwrap();
        let e = minimal_embedding(&a, None).unwrap();
        assert_eq!(e.eliminated, vec![0]);
        assert_eq!(e.substitution[0].1.to_string(), "y2^2");
        assert!(e.embedded.base().is_zero_ideal());
        assert_eq!(e.tangent_dim, 1);

        let b = hom(&["y1", "y2"], vec![vec![3], vec![2]], &["y1^2 - y2^3"]).unwrap();
        let e = minimal_embedding(&b, None).unwrap();
        assert!(e.eliminated.is_empty());
        assert!(e.embedded.base().equals(b.base()).unwrap());

        let c = hom(
            &["y1", "y2", "y3"],
            vec![vec![2], vec![1], vec![3]],
            &["y1 + y2^2", "y3 + y2^3"],
        )
        .unwrap();
        let e = minimal_embedding(&c, None).unwrap();
        assert_eq!(e.eliminated, vec![0, 2]);
        assert!(e.embedded.base().is_zero_ideal());
        assert_eq!(e.kept_ring().names(), &["y2".to_string()]);
    }

    #[test]
    fn embedding_with_explicit_kept_variables() {
        let a = hom(&["y1", "y2"], vec![vec![1], vec![1]], &["y1 - y2"]).unwrap();
        // keep y1 instead of the default y2
        let e = minimal_embedding(&a, Some(&[0])).unwrap();
        assert_eq!(e.eliminated, vec![1]);
        assert_eq!(e.substitution[0].1.to_string(), "y1");
        let b = hom(&["y1", "y2", "y3"], vec![vec![1], vec![1], vec![1]], &["y1 - y2"]).unwrap();
        match minimal_embedding(&b, Some(&[0])) {
            Err(Error::SpanningFailure { form }) => assert_eq!(form, "y3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn smoothness_examples() {
        let a = hom(&["y1", "y2"], vec![vec![2], vec![1]], &["y1 - y2^2"]).unwrap();
        let r = smooth_at_origin(&a).unwrap();
        assert_eq!((r.dim_v, r.dim_l, r.ambient, r.smooth), (1, 1, 2, true));
        let b = hom(&["y1", "y2"], vec![vec![3], vec![2]], &["y1^2 - y2^3"]).unwrap();
        let r = smooth_at_origin(&b).unwrap();
        assert_eq!((r.dim_v, r.dim_l, r.smooth), (1, 0, false));
        let z = hom(&["y1", "y2", "y3"], vec![vec![1]; 3], &[]).unwrap();
        assert!(smooth_at_origin(&z).unwrap().smooth);
    }

    #[test]
    fn singular_loci() {
        let a = hom(&["y1", "y2", "y3", "y4"], ex45_cols(), &[F]).unwrap();
        let sl = singular_locus_ideal(&a).unwrap();
        assert!(sl.exact);
        let q = |v: &[i64]| -> Vec<BigRational> {
            v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
        };
        assert!(vanishes_at(&sl.ideal, &q(&[0, 1, 0, 0])));
        assert!(vanishes_at(&sl.ideal, &q(&[0, 0, 1, 0])));
        assert!(vanishes_at(&sl.ideal, &q(&[0, 0, 0, 0])));
        assert!(!vanishes_at(&sl.ideal, &q(&[1, 0, 0, 0])));

        let lin = hom(&["y1", "y2"], vec![vec![1], vec![1]], &["y1"]).unwrap();
        assert!(singular_locus_ideal(&lin).unwrap().is_empty().unwrap());
        let sq = hom(&["y1", "y2"], vec![vec![1], vec![1]], &["y1^2"]).unwrap();
        let sl = singular_locus_ideal(&sq).unwrap();
        let y1 = IdealPresentation::new(sq.ring(), vec![parse_polynomial("y1", sq.ring()).unwrap()]).unwrap();
        assert!(sl.ideal.equals(&y1).unwrap());
    }
}

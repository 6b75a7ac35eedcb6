//! ℤᵐ-gradings of polynomial rings.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{gordan_fourier_motzkin, gordan_simplex, GordanOutcome};
use crate::poly::{BigRational, Monomial, Polynomial, Ring, TermOrder};

/// Largest group rank solved by Fourier–Motzkin; larger ones use simplex.
pub const FOURIER_MOTZKIN_MAX_RANK: usize = 3;

/// An element of ℤᵐ.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn zero(m: usize) -> Self {
        Degree(vec![0; m])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Integer vector `ω` with `ω·λ(y_i) > 0` for every variable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositivityWitness {
    pub omega: Vec<i64>,
    pub dots: Vec<i64>,
}

/// Nonzero `α ≥ 0` with `Λ·α = 0`: `y^α` is a nonconstant monomial of degree zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonPositivityCertificate {
    pub alpha: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Positivity {
    Witness(PositivityWitness),
    Certificate(NonPositivityCertificate),
}

impl Positivity {
    pub fn witness(&self) -> Option<&PositivityWitness> {
        match self {
            Positivity::Witness(w) => Some(w),
            Positivity::Certificate(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&NonPositivityCertificate> {
        match self {
            Positivity::Witness(_) => None,
            Positivity::Certificate(c) => Some(c),
        }
    }
}

/// The degree map `y_i ↦ λ(y_i) ∈ ℤᵐ`, stored column by column, together
/// with the outcome of the positivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingMap {
    ring: Arc<Ring>,
    rank: usize,
    columns: Vec<Vec<i64>>,
    positivity: Positivity,
}

impl GradingMap {
    /// `columns[i] = λ(y_i)`, each of length `rank`.
    pub fn new(ring: &Arc<Ring>, rank: usize, columns: Vec<Vec<i64>>) -> Result<Self> {
        if columns.len() != ring.nvars() {
            return Err(Error::LengthMismatch {
                expected: ring.nvars(),
                found: columns.len(),
            });
        }
        for c in &columns {
            if c.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    found: c.len(),
                });
            }
        }
        let positivity = compute_positivity(&columns, rank);
        Ok(GradingMap {
            ring: ring.clone(),
            rank,
            columns,
            positivity,
        })
    }

    /// Every variable in degree 1 of ℤ.
    pub fn standard(ring: &Arc<Ring>) -> Self {
        GradingMap::new(ring, 1, vec![vec![1]; ring.nvars()]).expect("consistent")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// `m`, the rank of the grading group.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> Degree {
        Degree(self.columns[i].clone())
    }

    /// The `m × s` matrix whose columns are the variable degrees.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|k| self.columns.iter().map(|c| c[k]).collect())
            .collect()
    }

    pub fn positivity(&self) -> &Positivity {
        &self.positivity
    }

    pub fn witness(&self) -> Option<&PositivityWitness> {
        self.positivity.witness()
    }

    pub fn is_positive(&self) -> bool {
        self.witness().is_some()
    }

    pub fn require_positive(&self) -> Result<&PositivityWitness> {
        match &self.positivity {
            Positivity::Witness(w) => Ok(w),
            Positivity::Certificate(c) => Err(Error::NotPositive {
                alpha: c.alpha.clone(),
            }),
        }
    }

    /// The grading restricted to the variables `kept`, on the ring `target`.
    pub fn restricted(&self, target: &Arc<Ring>, kept: &[usize]) -> Result<Self> {
        GradingMap::new(
            target,
            self.rank,
            kept.iter().map(|&i| self.columns[i].clone()).collect(),
        )
    }

    pub fn degree_of(&self, m: &Monomial) -> Degree {
        let mut d = vec![0i64; self.rank];
        for (c, &e) in self.columns.iter().zip(m.exponents()) {
            for (x, w) in d.iter_mut().zip(c) {
                *x += w * e as i64;
            }
        }
        Degree(d)
    }
}

fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

fn compute_positivity(columns: &[Vec<i64>], rank: usize) -> Positivity {
    let outcome = if rank <= FOURIER_MOTZKIN_MAX_RANK {
        gordan_fourier_motzkin(columns, rank)
    } else {
        gordan_simplex(columns, rank)
    };
    match outcome {
        GordanOutcome::Witness(w) => {
            let omega: Vec<i64> = primitive_integer_vector(&w)
                .iter()
                .map(|x| x.to_i64().expect("witness entry fits in i64"))
                .collect();
            let dots = columns
                .iter()
                .map(|c| c.iter().zip(&omega).map(|(a, b)| a * b).sum())
                .collect();
            Positivity::Witness(PositivityWitness { omega, dots })
        }
        GordanOutcome::Certificate(a) => {
            let alpha = primitive_integer_vector(&a)
                .iter()
                .map(|x| x.to_u64().expect("certificate entry is a nonnegative u64"))
                .collect();
            Positivity::Certificate(NonPositivityCertificate { alpha })
        }
    }
}

/// `λ(y^α) = Λ·α`.
pub fn lambda_degree(mono: &Monomial, g: &GradingMap) -> Result<Degree> {
    if mono.nvars() != g.ring.nvars() {
        return Err(Error::LengthMismatch {
            expected: g.ring.nvars(),
            found: mono.nvars(),
        });
    }
    Ok(g.degree_of(mono))
}

/// Splits `f` into its λ-homogeneous components.
pub fn homogeneous_components(f: &Polynomial, g: &GradingMap) -> Result<BTreeMap<Degree, Polynomial>> {
    Ring::ensure_same(f.ring(), g.ring())?;
    let mut out: BTreeMap<Degree, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let d = g.degree_of(m);
        let term = Polynomial::term(f.ring(), m.clone(), c.clone());
        out.entry(d)
            .and_modify(|p| *p = &*p + &term)
            .or_insert(term);
    }
    Ok(out)
}

/// The λ-degree of a nonzero homogeneous `f`; `None` otherwise.
pub fn homogeneous_degree(f: &Polynomial, g: &GradingMap) -> Option<Degree> {
    let mut degrees = f.terms().map(|(m, _)| g.degree_of(m));
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// Recomputes the positivity test of `g` from scratch.
pub fn positivity_witness(g: &GradingMap) -> Positivity {
    compute_positivity(&g.columns, g.rank)
}

/// Checks `w` against `g`: recorded dot products match and are positive.
pub fn verify_witness(g: &GradingMap, w: &PositivityWitness) -> Result<()> {
    if w.omega.len() != g.rank {
        return Err(Error::InvalidWitness(format!(
            "omega has length {}, grading rank is {}",
            w.omega.len(),
            g.rank
        )));
    }
    for (i, c) in g.columns.iter().enumerate() {
        let dot: i64 = c.iter().zip(&w.omega).map(|(a, b)| a * b).sum();
        if dot <= 0 || w.dots.get(i) != Some(&dot) {
            return Err(Error::InvalidWitness(format!(
                "omega·λ({}) = {dot}",
                g.ring.name(i)
            )));
        }
    }
    Ok(())
}

/// Checks a certificate: `α ≥ 0`, `α ≠ 0`, `Λ·α = 0`.
pub fn verify_certificate(g: &GradingMap, c: &NonPositivityCertificate) -> bool {
    c.alpha.len() == g.columns.len()
        && c.alpha.iter().any(|&a| a > 0)
        && g.degree_of(&Monomial::new(c.alpha.iter().map(|&a| a as u32).collect())).is_zero()
}

/// Weight order `ω·λ(y^α)` refined by `tiebreak`.
pub fn induced_term_order(g: &GradingMap, w: &PositivityWitness, tiebreak: TermOrder) -> Result<TermOrder> {
    verify_witness(g, w)?;
    Ok(TermOrder::weighted(w.dots.clone(), tiebreak))
}

pub use crate::lattice::lattice_rank_index;

/// Parses the `[[1,2],[1,0],…]` column list of the grading syntax.
pub fn parse_columns(text: &str) -> std::result::Result<Vec<Vec<i64>>, String> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let arr = v.as_array().ok_or("expected a list of degree vectors")?;
    arr.iter()
        .map(|c| match c {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|x| vec![x])
                .ok_or_else(|| format!("non-integer degree {n}")),
            serde_json::Value::Array(a) => a
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| format!("non-integer entry {x}")))
                .collect(),
            other => Err(format!("unexpected degree {other}")),
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ex45() -> GradingMap {
        let r = Ring::new(["y1", "y2", "y3", "y4"]);
        GradingMap::new(&r, 2, vec![vec![1, 2], vec![1, 0], vec![0, 1], vec![2, 3]]).unwrap()
    }

    #[test]
    fn degrees_of_monomials() {
        let g = ex45();
        let d = lambda_degree(&Monomial::new(vec![2, 1, 1, 0]), &g).unwrap();
        assert_eq!(d, Degree(vec![3, 5]));
        assert!(lambda_degree(&Monomial::one(4), &g).unwrap().is_zero());
        assert!(lambda_degree(&Monomial::one(3), &g).is_err());
        let r = Ring::new(["y1", "y2"]);
        let std = GradingMap::standard(&r);
        assert_eq!(lambda_degree(&Monomial::new(vec![1, 2]), &std).unwrap(), Degree(vec![3]));
    }

    #[test]
    fn components() {
        let g = ex45();
        let f = parse_polynomial("y1^2*y2*y3 + y1*y4 + y2*y3^2*y4", g.ring()).unwrap();
        let c = homogeneous_components(&f, &g).unwrap();
        assert_eq!(c.keys().cloned().collect::<Vec<_>>(), vec![Degree(vec![3, 5])]);
        let f = parse_polynomial("y1 + y2", g.ring()).unwrap();
        let c = homogeneous_components(&f, &g).unwrap();
        assert_eq!(c[&Degree(vec![1, 2])].to_string(), "y1");
        assert_eq!(c[&Degree(vec![1, 0])].to_string(), "y2");
        assert!(homogeneous_components(&Polynomial::zero(g.ring()), &g).unwrap().is_empty());
    }

    #[test]
    fn witnesses_and_certificates() {
        let g = ex45();
        let w = g.witness().unwrap();
        assert_eq!(w.omega, vec![1, 1]);
        assert_eq!(w.dots, vec![3, 1, 1, 5]);
        let r = Ring::new(["a", "b", "c"]);
        assert_eq!(GradingMap::standard(&r).witness().unwrap().omega, vec![1]);
        let r2 = Ring::new(["y1", "y2"]);
        let opp = GradingMap::new(&r2, 1, vec![vec![1], vec![-1]]).unwrap();
        let c = opp.positivity().certificate().unwrap();
        assert_eq!(c.alpha, vec![1, 1]);
        assert!(verify_certificate(&opp, c));
        assert!(matches!(opp.require_positive(), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn induced_order_compares_by_weight_then_tiebreak() {
        let g = ex45();
        let o = induced_term_order(&g, g.witness().unwrap(), TermOrder::lex()).unwrap();
        let v = |i| Monomial::variable(4, i);
        assert_eq!(o.cmp(&v(3), &v(0)), std::cmp::Ordering::Greater);
        assert_eq!(o.cmp(&v(0), &v(1)), std::cmp::Ordering::Greater);
        // y2 and y3 both weigh 1; lex decides
        assert_eq!(o.cmp(&v(1), &v(2)), std::cmp::Ordering::Greater);
        let bad = PositivityWitness { omega: vec![1, -1], dots: vec![-1, 1, -1, -1] };
        assert!(induced_term_order(&g, &bad, TermOrder::lex()).is_err());
    }

    #[test]
    fn column_syntax() {
        assert_eq!(parse_columns("[[1,2],[1,0]]").unwrap(), vec![vec![1, 2], vec![1, 0]]);
        assert_eq!(parse_columns("[2,1]").unwrap(), vec![vec![2], vec![1]]);
        assert!(parse_columns("[[1,x]]").is_err());
    }
}

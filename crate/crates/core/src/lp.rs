//! Exact rational feasibility for positivity witnesses.
//!
//! Gordan's alternative for vectors `v₁,…,v_s ∈ ℚᵐ`: either some `ω` has
//! `ω·v_i > 0` for every `i`, or some nonzero `α ≥ 0` has `Σ α_i v_i = 0`.
//! Both routes below return exactly one of the two objects.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GordanOutcome {
    /// `ω` with `ω·v_i ≥ 1` for all `i`.
    Witness(Vec<BigRational>),
    /// `α ≥ 0`, `α ≠ 0`, `Σ α_i v_i = 0`.
    Certificate(Vec<BigRational>),
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Ineq {
    coef: Vec<BigRational>,
    rhs: BigRational,
    mult: Vec<BigRational>,
}

impl Ineq {
    fn combine(p: &Ineq, n: &Ineq, k: usize) -> Ineq {
        // coefficient of variable k cancels: (-n_k)·p + p_k·n
        let a = -n.coef[k].clone();
        let b = p.coef[k].clone();
        let mut r = Ineq {
            coef: p.coef.iter().zip(&n.coef).map(|(x, y)| x * &a + y * &b).collect(),
            rhs: &p.rhs * &a + &n.rhs * &b,
            mult: p.mult.iter().zip(&n.mult).map(|(x, y)| x * &a + y * &b).collect(),
        };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        let lead = self
            .coef
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.abs())
            .unwrap_or_else(|| self.rhs.abs());
        if lead.is_zero() || lead.is_one() {
            return;
        }
        let inv = lead.recip();
        for c in self.coef.iter_mut().chain(self.mult.iter_mut()) {
            *c *= &inv;
        }
        self.rhs *= &inv;
    }
}

/// Picks a value in `[lo, hi]`: zero if allowed, else the integer nearest to zero
/// inside the interval, else the finite end point nearest to zero.
fn choose(lo: Option<BigRational>, hi: Option<BigRational>) -> BigRational {
    let zero = BigRational::zero();
    let lo_ok = lo.as_ref().is_none_or(|l| *l <= zero);
    let hi_ok = hi.as_ref().is_none_or(|h| *h >= zero);
    if lo_ok && hi_ok {
        return zero;
    }
    if !lo_ok {
        let l = lo.unwrap();
        let c = l.ceil();
        match hi {
            Some(h) if c > h => l,
            _ => c,
        }
    } else {
        let h = hi.unwrap();
        let f = h.floor();
        match lo {
            Some(l) if f < l => h,
            _ => f,
        }
    }
}

/// Fourier–Motzkin elimination on `{ω : ω·v_i ≥ 1}`, tracking the
/// nonnegative multipliers of every derived inequality so that an
/// infeasible system yields a Gordan certificate.
pub fn gordan_fourier_motzkin(vectors: &[Vec<i64>], dim: usize) -> GordanOutcome {
    let s = vectors.len();
    let mut system: Vec<Ineq> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| Ineq {
            coef: v.iter().map(|&x| q(x)).collect(),
            rhs: BigRational::one(),
            mult: (0..s).map(|j| if i == j { q(1) } else { q(0) }).collect(),
        })
        .collect();
    let mut stages = Vec::with_capacity(dim);
    for k in 0..dim {
        stages.push(system.clone());
        let (mut pos, mut neg, mut next) = (Vec::new(), Vec::new(), Vec::new());
        for r in system {
            if r.coef[k].is_positive() {
                pos.push(r);
            } else if r.coef[k].is_negative() {
                neg.push(r);
            } else {
                next.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let c = Ineq::combine(p, n, k);
                if !next.iter().any(|e: &Ineq| e.coef == c.coef && e.rhs == c.rhs) {
                    next.push(c);
                }
            }
        }
        system = next;
    }
    if let Some(bad) = system.iter().find(|r| r.rhs.is_positive()) {
        return GordanOutcome::Certificate(bad.mult.clone());
    }
    let mut omega = vec![BigRational::zero(); dim];
    for k in (0..dim).rev() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in &stages[k] {
            let a = &r.coef[k];
            if a.is_zero() {
                continue;
            }
            let mut rest = r.rhs.clone();
            for (c, w) in r.coef[k + 1..dim].iter().zip(&omega[k + 1..dim]) {
                rest -= c * w;
            }
            let bound = rest / a;
            if a.is_positive() {
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| bound < *h) {
                hi = Some(bound);
            }
        }
        omega[k] = choose(lo, hi);
    }
    GordanOutcome::Witness(omega)
}

/// Phase-one simplex with Bland's rule: a point of `{x ≥ 0 : A·x = b}` or
/// `None` when the polyhedron is empty.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    // tableau rows: constraints; last row: phase-one objective (reduced costs)
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![BigRational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut obj = vec![BigRational::zero(); width];
    for row in &t {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let enter = (0..n + m).find(|&j| t[m][j].is_negative());
        let Some(e) = enter else { break };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((l, _)) = leave else {
            // unbounded direction; cannot happen for a phase-one objective
            break;
        };
        let piv = t[l][e].clone();
        for x in t[l].iter_mut() {
            *x /= &piv;
        }
        let prow = t[l].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != l && !row[e].is_zero() {
                let f = row[e].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &f * p;
                }
            }
        }
        basis[l] = e;
    }
    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

/// Gordan's alternative through two simplex feasibility problems.
pub fn gordan_simplex(vectors: &[Vec<i64>], dim: usize) -> GordanOutcome {
    let s = vectors.len();
    // variables: ω⁺ (dim), ω⁻ (dim), slack (s); ω·v_i − slack_i = 1
    let mut a = Vec::with_capacity(s);
    for (i, v) in vectors.iter().enumerate() {
        let mut row = vec![BigRational::zero(); 2 * dim + s];
        for k in 0..dim {
            row[k] = q(v[k]);
            row[dim + k] = -q(v[k]);
        }
        row[2 * dim + i] = -q(1);
        a.push(row);
    }
    let b = vec![q(1); s];
    if let Some(x) = feasible_point(&a, &b) {
        let omega = (0..dim).map(|k| &x[k] - &x[dim + k]).collect();
        return GordanOutcome::Witness(omega);
    }
    certificate_by_simplex(vectors, dim)
        .map(GordanOutcome::Certificate)
        .expect("Gordan's alternative guarantees a certificate")
}

/// A point of `{α ≥ 0 : Σ α_i v_i = 0, Σ α_i = 1}`, if any.
pub fn certificate_by_simplex(vectors: &[Vec<i64>], dim: usize) -> Option<Vec<BigRational>> {
    let s = vectors.len();
    let mut a: Vec<Vec<BigRational>> = (0..dim)
        .map(|k| vectors.iter().map(|v| q(v[k])).collect())
        .collect();
    a.push(vec![q(1); s]);
    let mut b = vec![BigRational::zero(); dim];
    b.push(q(1));
    feasible_point(&a, &b)
}

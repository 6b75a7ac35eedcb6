//! Integer lattices: Hermite and Smith normal forms, ranks, indices and
//! kernel bases, all in exact big-integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn ncols(a: &IntMatrix, fallback: usize) -> usize {
    a.first().map_or(fallback, Vec::len)
}

/// Row-style Hermite normal form `H = U·A` with `U` unimodular.
///
/// Nonzero rows of `H` come first, pivots strictly increase, pivots are
/// positive and entries above a pivot lie in `[0, pivot)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn row_sub_mul(a: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = a[src].clone();
    for (x, y) in a[target].iter_mut().zip(src_row) {
        *x -= q * y;
    }
}

pub fn hermite_normal_form(a: &IntMatrix) -> HermiteForm {
    let n = a.len();
    let cols = ncols(a, 0);
    let mut h = a.clone();
    let mut u: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let best = (r..n)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&i, &j| h[i][c].abs().cmp(&h[j][c].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..n {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_sub_mul(&mut h, i, r, &q);
                row_sub_mul(&mut u, i, r, &q);
                if !h[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            row_sub_mul(&mut h, i, r, &q);
            row_sub_mul(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    HermiteForm { h, u, pivots }
}

pub fn rank(a: &IntMatrix) -> usize {
    hermite_normal_form(a).rank()
}

/// Basis (in Hermite form) of the lattice generated by the rows of `a`.
pub fn row_lattice_basis(a: &IntMatrix) -> IntMatrix {
    let hf = hermite_normal_form(a);
    hf.h.into_iter().take(hf.pivots.len()).collect()
}

/// A basis of `{u ∈ ℤⁿ : A·u = 0}` for `A` with `n` columns.
pub fn kernel_basis(a: &IntMatrix, n: usize) -> IntMatrix {
    let at: IntMatrix = (0..n)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect();
    let at = if a.is_empty() {
        vec![Vec::new(); n]
    } else {
        at
    };
    let hf = hermite_normal_form(&at);
    let r = hf.rank();
    let ker: IntMatrix = hf.u.into_iter().skip(r).collect();
    row_lattice_basis(&ker)
}

/// Nonzero invariant factors `d₁ | d₂ | …` of the Smith normal form.
pub fn smith_invariants(a: &IntMatrix) -> Vec<BigInt> {
    let m = a.len();
    let n = ncols(a, 0);
    let mut s = a.clone();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let pos = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !s[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| s[i][j].abs().cmp(&s[k][l].abs()));
        let Some((pi, pj)) = pos else { break };
        s.swap(t, pi);
        for row in s.iter_mut() {
            row.swap(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..m {
            let q = s[i][t].div_floor(&s[t][t]);
            row_sub_mul(&mut s, i, t, &q);
            dirty |= !s[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = s[t][j].div_floor(&s[t][t]);
            if !q.is_zero() {
                for row in s.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
            }
            dirty |= !s[t][j].is_zero();
        }
        if dirty {
            continue;
        }
        // enforce divisibility of the remaining block by the pivot
        let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&s[i][j] % &s[t][t]).is_zero()));
        if let Some(i) = bad {
            let row = s[i].clone();
            for (x, y) in s[t].iter_mut().zip(row) {
                *x += y;
            }
            continue;
        }
        diag.push(s[t][t].abs());
        t += 1;
    }
    diag
}

/// Index of a sublattice; infinite when the ranks differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeIndex {
    Finite(#[serde(with = "bigint_string")] BigInt),
    Infinite,
}

/// Rank of the lattice generated by `degrees`, and, when `sub` (indices into
/// `degrees`) is given, the index of the sublattice it generates.
pub fn lattice_rank_index(degrees: &[Vec<i64>], sub: Option<&[usize]>) -> (usize, Option<LatticeIndex>) {
    let full = to_big(degrees);
    let full_rank = rank(&full);
    let index = sub.map(|idx| {
        let part: IntMatrix = idx.iter().map(|&i| full[i].clone()).collect();
        sublattice_index(&full, &part)
    });
    (full_rank, index)
}

/// `[L(full) : L(part)]` for row lattices with `L(part) ⊆ L(full)`.
pub fn sublattice_index(full: &IntMatrix, part: &IntMatrix) -> LatticeIndex {
    let fr = rank(full);
    let pr = rank(part);
    if fr != pr {
        return LatticeIndex::Infinite;
    }
    let prod = |v: Vec<BigInt>| v.into_iter().fold(BigInt::one(), |a, b| a * b);
    let pf = prod(smith_invariants(full));
    let pp = prod(smith_invariants(part));
    LatticeIndex::Finite(pp / pf)
}

pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

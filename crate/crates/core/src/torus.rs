//! The torus action `y_i ↦ t^{λ(y_i)}·y_i` induced by a grading, and the
//! geometry of its orbits on λ-cones.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{k_subsets, make_homogeneous_ideal, HomogeneousIdeal};
use crate::error::{Error, Result};
use crate::grading::{Degree, GradingMap};
use crate::ideal::{eliminate, krull_dimension, saturate, IdealPresentation};
use crate::lattice::{self, kernel_basis, sublattice_index, to_big, IntMatrix, LatticeIndex};
use crate::poly::{format_rational, BigRational, Monomial, Polynomial, Ring, TermOrder};

/// A point of `𝔸^s` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint { coords }
    }

    pub fn from_integers(v: &[i64]) -> Self {
        RationalPoint {
            coords: v.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        }
    }

    pub fn origin(s: usize) -> Self {
        RationalPoint {
            coords: vec![BigRational::zero(); s],
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| !self.coords[i].is_zero())
            .collect()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn check_len(p: &RationalPoint, s: usize) -> Result<()> {
    if p.len() == s {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected: s,
            found: p.len(),
        })
    }
}

fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// `t·p`, the action of a torus element `t ∈ (ℚ*)^m`.
pub fn act(t: &[BigRational], p: &RationalPoint, g: &GradingMap) -> RationalPoint {
    RationalPoint {
        coords: p
            .coords
            .iter()
            .zip(g.columns())
            .map(|(a, col)| {
                let mut v = a.clone();
                for (tk, &e) in t.iter().zip(col) {
                    if e != 0 {
                        v *= rat_pow(tk, e);
                    }
                }
                v
            })
            .collect(),
    }
}

/// `t^d` for a degree `d`.
pub fn torus_character(t: &[BigRational], d: &Degree) -> BigRational {
    t.iter()
        .zip(d.entries())
        .fold(BigRational::one(), |acc, (tk, &e)| acc * rat_pow(tk, e))
}

/// A Laurent polynomial in `t₁,…,t_m`.
pub type LaurentPolynomial = BTreeMap<Vec<i64>, BigRational>;

/// `f(a₁t^{λ(y₁)}, …, a_s t^{λ(y_s)})` as a Laurent polynomial in `t`.
pub fn substitute_orbit(f: &Polynomial, p: &RationalPoint, g: &GradingMap) -> LaurentPolynomial {
    let mut out = LaurentPolynomial::new();
    for (m, c) in f.terms() {
        let mut coef = c.clone();
        for (a, &e) in p.coords.iter().zip(m.exponents()) {
            if e > 0 {
                coef *= num_traits::pow(a.clone(), e as usize);
            }
        }
        if coef.is_zero() {
            continue;
        }
        let key = g.degree_of(m).0;
        let entry = out.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += coef;
        if entry.is_zero() {
            out.remove(&key);
        }
    }
    out
}

/// Orbit data of a point: support and the orbit dimension `m(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    pub point: RationalPoint,
    pub support: Vec<usize>,
    pub rank: usize,
    /// `λ(y_i)` for `i` in the support.
    pub witness_exponents: Vec<Degree>,
}

pub fn orbit_dimension(p: &RationalPoint, g: &GradingMap) -> Result<OrbitInfo> {
    g.require_positive()?;
    check_len(p, g.ring().nvars())?;
    let support = p.support();
    let witness_exponents: Vec<Degree> = support.iter().map(|&i| g.column(i)).collect();
    let cols: Vec<Vec<i64>> = support.iter().map(|&i| g.columns()[i].clone()).collect();
    let rank = lattice::rank(&to_big(&cols));
    Ok(OrbitInfo {
        point: p.clone(),
        support,
        rank,
        witness_exponents,
    })
}

/// Whether the orbit of `p` lies in the λ-cone of `a`.
///
/// Substitutes the orbit parametrization into every generator and compares
/// with plain evaluation at `p`; the two must agree for homogeneous input.
pub fn orbit_contained(p: &RationalPoint, a: &HomogeneousIdeal) -> Result<bool> {
    check_len(p, a.nvars())?;
    let mut inside = true;
    for (f, d) in a.generators().iter().zip(a.degrees()) {
        let along = substitute_orbit(f, p, a.grading());
        let value = f.evaluate(&p.coords);
        let expected: LaurentPolynomial = if value.is_zero() {
            LaurentPolynomial::new()
        } else {
            [(d.0.clone(), value.clone())].into_iter().collect()
        };
        if along != expected {
            return Err(Error::Internal(format!(
                "orbit substitution of {f} disagrees with its value at {p}"
            )));
        }
        inside &= value.is_zero();
    }
    Ok(inside)
}

fn columns_of(g: &GradingMap, idx: &[usize]) -> IntMatrix {
    to_big(&idx.iter().map(|&i| g.columns()[i].clone()).collect::<Vec<_>>())
}

/// A unimodular basis `B ⊆ support` of the lattice spanned by the support
/// columns, the lexicographically greatest one if several exist.
fn unimodular_basis(g: &GradingMap, support: &[usize], rank: usize) -> Option<Vec<usize>> {
    let full = columns_of(g, support);
    let mut found = None;
    for pick in k_subsets(support.len(), rank) {
        let b: Vec<usize> = pick.iter().map(|&k| support[k]).collect();
        let part = columns_of(g, &b);
        if sublattice_index(&full, &part) == LatticeIndex::Finite(BigInt::one()) {
            found = Some(b);
        }
    }
    found
}

fn binomial(
    ring: &Arc<Ring>,
    support: &[usize],
    u: &[BigInt],
    p: &RationalPoint,
) -> Polynomial {
    let s = ring.nvars();
    let mut plus = vec![0u32; s];
    let mut minus = vec![0u32; s];
    let mut a_plus = BigRational::one();
    let mut a_minus = BigRational::one();
    for (&i, e) in support.iter().zip(u) {
        let k: u32 = e.abs().try_into().expect("small kernel entry");
        if e.is_positive() {
            plus[i] = k;
            a_plus *= num_traits::pow(p.coords[i].clone(), k as usize);
        } else if e.is_negative() {
            minus[i] = k;
            a_minus *= num_traits::pow(p.coords[i].clone(), k as usize);
        }
    }
    let b = &Polynomial::term(ring, Monomial::new(plus.clone()), a_minus)
        - &Polynomial::term(ring, Monomial::new(minus), a_plus);
    // integer content-free coefficients, the y^{u+} side positive
    let prim = b.primitive(&TermOrder::lex());
    if prim.coefficient(&Monomial::new(plus)).is_negative() {
        -&prim
    } else {
        prim
    }
}

/// Ideal of the orbit closure of `p`: the lattice ideal of the relations
/// among the support columns, plus the vanishing coordinates.
pub fn orbit_closure_ideal(p: &RationalPoint, g: &GradingMap) -> Result<HomogeneousIdeal> {
    let info = orbit_dimension(p, g)?;
    let ring = g.ring();
    let s = ring.nvars();
    let support = &info.support;
    let n = support.len();

    let lambda_s: IntMatrix = (0..g.rank())
        .map(|k| support.iter().map(|&i| BigInt::from(g.columns()[i][k])).collect())
        .collect();
    let mut kernel = kernel_basis(&lambda_s, n);
    if let Some(b) = unimodular_basis(g, support, info.rank) {
        // reorder so dependent variables come first; the Hermite form then
        // expresses each dependent variable through the basis B
        let mut perm: Vec<usize> = (0..n).filter(|&k| !b.contains(&support[k])).collect();
        perm.extend((0..n).filter(|&k| b.contains(&support[k])));
        let permuted: IntMatrix = kernel
            .iter()
            .map(|row| perm.iter().map(|&k| row[k].clone()).collect())
            .collect();
        let h = lattice::row_lattice_basis(&permuted);
        kernel = h
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); n];
                for (pos, &k) in perm.iter().enumerate() {
                    out[k] = row[pos].clone();
                }
                out
            })
            .collect();
    }
    let binomials: Vec<Polynomial> = kernel.iter().map(|u| binomial(ring, support, u, p)).collect();

    let lattice_part = IdealPresentation::new(ring, binomials.clone())?;
    let mut saturated = lattice_part.clone();
    for &i in support {
        saturated = saturate(&saturated, &Polynomial::variable(ring, i))?;
    }
    let mut gens = if lattice_part.contains_ideal(&saturated)? {
        binomials
    } else {
        let order = TermOrder::degrevlex();
        saturated
            .groebner_basis(&order)?
            .elements()
            .iter()
            .map(|f| f.primitive(&order))
            .collect()
    };
    for j in 0..s {
        if !support.contains(&j) {
            gens.push(Polynomial::variable(ring, j));
        }
    }
    let ideal = make_homogeneous_ideal(&IdealPresentation::new(ring, gens)?, g)?;

    for f in ideal.generators() {
        if !substitute_orbit(f, p, g).is_empty() {
            return Err(Error::Internal(format!("{f} does not vanish on the orbit of {p}")));
        }
    }
    let dim = krull_dimension(ideal.base())?;
    if dim != info.rank {
        return Err(Error::Internal(format!(
            "orbit closure has dimension {dim}, orbit has dimension {}",
            info.rank
        )));
    }
    Ok(ideal)
}

/// Union of coordinate subspaces, each given by its allowed-nonzero variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateSubspaceUnion {
    pub components: Vec<Vec<usize>>,
}

/// Maximal supports `S` with `rank Λ_S ≤ mu0`, i.e. the coordinate subspaces
/// making up the locus of points with orbit dimension at most `mu0`.
pub fn low_orbit_stratum(g: &GradingMap, mu0: usize) -> Result<CoordinateSubspaceUnion> {
    if mu0 > g.rank() {
        return Err(Error::InvalidInput(format!(
            "orbit dimension bound {mu0} exceeds the grading rank {}",
            g.rank()
        )));
    }
    let s = g.ring().nvars();
    let all: Vec<usize> = (0..s).collect();
    let rank_of = |idx: &[usize]| lattice::rank(&columns_of(g, idx));
    if rank_of(&all) <= mu0 {
        return Ok(CoordinateSubspaceUnion {
            components: vec![all],
        });
    }
    // maximal sets of rank ≤ mu0 are the closures (flats) of independent mu0-sets
    let mut components: Vec<Vec<usize>> = Vec::new();
    for base in k_subsets(s, mu0) {
        if rank_of(&base) != mu0 {
            continue;
        }
        let flat: Vec<usize> = (0..s)
            .filter(|&i| {
                let mut ext = base.clone();
                if !ext.contains(&i) {
                    ext.push(i);
                }
                rank_of(&ext) == mu0
            })
            .collect();
        if !components.contains(&flat) {
            components.push(flat);
        }
    }
    components.sort();
    Ok(CoordinateSubspaceUnion { components })
}

/// Variables that do not vanish identically on `V(a)`.
pub fn surviving_variables(a: &HomogeneousIdeal) -> Result<Vec<usize>> {
    let mut h = Vec::new();
    for i in 0..a.nvars() {
        let sat = saturate(a.base(), &Polynomial::variable(a.ring(), i))?;
        if sat.is_proper()? {
            h.push(i);
        }
    }
    Ok(h)
}

/// `μ(V)`, the maximal dimension of an orbit in `V(a)`.
pub fn max_orbit_dimension(a: &HomogeneousIdeal) -> Result<usize> {
    let h = surviving_variables(a)?;
    Ok(lattice::rank(&columns_of(a.grading(), &h)))
}

/// Rational roots of a polynomial in the single variable `v`.
fn rational_roots(f: &Polynomial, v: usize) -> Vec<BigRational> {
    let mut coeffs: BTreeMap<u32, BigRational> = BTreeMap::new();
    for (m, c) in f.terms() {
        coeffs.insert(m.exponents()[v], c.clone());
    }
    let Some(&low) = coeffs.keys().next() else {
        return Vec::new();
    };
    let den = coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: BTreeMap<u32, BigInt> = coeffs
        .iter()
        .map(|(&e, c)| (e - low, c.numer() * (&den / c.denom())))
        .collect();
    let a0 = ints.get(&0).cloned().unwrap_or_default();
    let an = ints.values().next_back().cloned().unwrap_or_default();
    if a0.is_zero() || an.is_zero() {
        return Vec::new();
    }
    let mut roots = Vec::new();
    for p in divisors(&a0.abs()) {
        for q in divisors(&an.abs()) {
            for sign in [1, -1] {
                let r = BigRational::new(BigInt::from(sign) * &p, q.clone());
                if !roots.contains(&r) {
                    let value: BigRational = ints
                        .iter()
                        .map(|(&e, c)| BigRational::from_integer(c.clone()) * num_traits::pow(r.clone(), e as usize))
                        .sum();
                    if value.is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)));
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

const FREE_CANDIDATES: [i64; 6] = [1, -1, 2, -2, 3, -3];

fn saturate_by(a: &IdealPresentation, vars: &[usize]) -> Result<IdealPresentation> {
    let mut cur = a.clone();
    for &v in vars {
        cur = saturate(&cur, &Polynomial::variable(a.ring(), v))?;
    }
    Ok(cur)
}

/// Searches a rational point of `V(j)` whose coordinates in `vars` are all
/// nonzero; `j` must already be saturated by those variables.
fn rational_point_on(j: &IdealPresentation, vars: &[usize]) -> Result<Option<Vec<(usize, BigRational)>>> {
    let Some((&v, rest)) = vars.split_first() else {
        return Ok(Some(Vec::new()));
    };
    let ring = j.ring();
    let others: Vec<usize> = (0..ring.nvars()).filter(|&i| i != v).collect();
    let univariate = eliminate(j, &others)?;
    let candidates: Vec<BigRational> = match univariate.generators().first() {
        Some(f) => rational_roots(f, v),
        None => FREE_CANDIDATES
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect(),
    };
    for c in candidates {
        let fixed = &Polynomial::variable(ring, v) - &Polynomial::constant(ring, c.clone());
        let mut gens = j.generators().to_vec();
        gens.push(fixed);
        let next = saturate_by(&IdealPresentation::new(ring, gens)?, rest)?;
        if !next.is_proper()? {
            continue;
        }
        if let Some(mut sol) = rational_point_on(&next, rest)? {
            sol.insert(0, (v, c));
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

fn nonempty_subsets_desc(set: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in (1..=set.len()).rev() {
        for pick in k_subsets(set.len(), k) {
            out.push(pick.iter().map(|&i| set[i]).collect());
        }
    }
    out
}

/// A rational point of `V(a)` whose orbit is one-dimensional.
pub fn find_one_dim_orbit(a: &HomogeneousIdeal) -> Result<RationalPoint> {
    if krull_dimension(a.base())? < 1 {
        return Err(Error::InvalidInput(
            "the λ-cone is the origin; it has no 1-dimensional orbit".into(),
        ));
    }
    let ring = a.ring();
    let s = a.nvars();
    let mut unsolved: Option<(Vec<usize>, String)> = None;
    for support in low_orbit_stratum(a.grading(), 1)?.components {
        for t in nonempty_subsets_desc(&support) {
            let mut gens = a.generators().to_vec();
            gens.extend((0..s).filter(|j| !t.contains(j)).map(|j| Polynomial::variable(ring, j)));
            let restricted = saturate_by(&IdealPresentation::new(ring, gens)?, &t)?;
            if !restricted.is_proper()? {
                continue;
            }
            match rational_point_on(&restricted, &t)? {
                Some(sol) => {
                    let mut p = RationalPoint::origin(s);
                    for (i, c) in sol {
                        p.coords[i] = c;
                    }
                    return Ok(p);
                }
                None => {
                    if unsolved.is_none() {
                        unsolved = Some((t.clone(), format!("{restricted:?}")));
                    }
                }
            }
        }
    }
    match unsolved {
        Some((support, system)) => Err(Error::NoRationalPoint { support, system }),
        None => Err(Error::Internal(
            "positive-dimensional cone without a rank-1 support".into(),
        )),
    }
}

/// The slice `y_{i₁} = ⋯ = y_{i_μ} = 1` through the maximal orbits.
#[derive(Debug, Clone)]
pub struct CrossSectionChart {
    pub chosen: Vec<usize>,
    /// Index of the chosen columns in the lattice of the non-vanishing columns.
    pub index_r: BigInt,
    pub slice_ideal: IdealPresentation,
    /// Variables not vanishing identically on the cone.
    pub surviving: Vec<usize>,
}

impl CrossSectionChart {
    /// Each maximal orbit in the chart meets the slice exactly once iff `r = 1`.
    pub fn unique_intersection(&self) -> bool {
        self.index_r.is_one()
    }

    /// The point where the orbit of `p` meets the slice, when `r = 1`, the
    /// chosen coordinates of `p` are nonzero, and every nonzero coordinate
    /// degree is an integer combination of the chosen ones.
    pub fn section_point(&self, p: &RationalPoint, g: &GradingMap) -> Result<Option<RationalPoint>> {
        check_len(p, g.ring().nvars())?;
        if !self.unique_intersection() || self.chosen.iter().any(|&b| p.coords[b].is_zero()) {
            return Ok(None);
        }
        let mut out = RationalPoint::origin(p.len());
        for j in 0..p.len() {
            if p.coords[j].is_zero() {
                continue;
            }
            let Some(c) = integer_combination(g, &self.chosen, j) else {
                return Ok(None);
            };
            let mut v = p.coords[j].clone();
            for (&b, cb) in self.chosen.iter().zip(&c) {
                v *= rat_pow(&p.coords[b], -cb);
            }
            out.coords[j] = v;
        }
        Ok(Some(out))
    }
}

/// Integer `c` with `λ(y_j) = Σ c_b λ(y_b)` over the chosen (independent) columns.
fn integer_combination(g: &GradingMap, chosen: &[usize], j: usize) -> Option<Vec<i64>> {
    let m = g.rank();
    let k = chosen.len();
    // augmented system m × (k + 1) over ℚ
    let mut rows: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            let mut row: Vec<BigRational> = chosen
                .iter()
                .map(|&b| BigRational::from_integer(g.columns()[b][r].into()))
                .collect();
            row.push(BigRational::from_integer(g.columns()[j][r].into()));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
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
        pivot_cols.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut c = vec![0i64; k];
    for (row, &pc) in rows.iter().zip(&pivot_cols) {
        if !row[k].is_integer() {
            return None;
        }
        c[pc] = row[k].to_integer().try_into().ok()?;
    }
    Some(c)
}

pub fn cross_section(a: &HomogeneousIdeal, chosen: &[usize]) -> Result<CrossSectionChart> {
    let s = a.nvars();
    if let Some(&bad) = chosen.iter().find(|&&i| i >= s) {
        return Err(Error::InvalidInput(format!("variable index {bad} out of range")));
    }
    let surviving = surviving_variables(a)?;
    let mu = lattice::rank(&columns_of(a.grading(), &surviving));
    if chosen.len() != mu {
        return Err(Error::InvalidInput(format!(
            "expected {mu} chosen variables (the maximal orbit dimension), got {}",
            chosen.len()
        )));
    }
    if lattice::rank(&columns_of(a.grading(), chosen)) != chosen.len() {
        return Err(Error::DependentColumns {
            columns: chosen.to_vec(),
        });
    }
    if let Some(&v) = chosen.iter().find(|i| !surviving.contains(i)) {
        return Err(Error::InvalidInput(format!(
            "{} vanishes identically on the cone; the slice would be empty",
            a.ring().name(v)
        )));
    }
    let index_r = match sublattice_index(
        &columns_of(a.grading(), &surviving),
        &columns_of(a.grading(), chosen),
    ) {
        LatticeIndex::Finite(r) => r,
        LatticeIndex::Infinite => {
            return Err(Error::Internal("chosen columns do not have full rank".into()))
        }
    };
    let ring = a.ring();
    let mut gens = a.generators().to_vec();
    gens.extend(
        chosen
            .iter()
            .map(|&i| &Polynomial::variable(ring, i) - &Polynomial::one(ring)),
    );
    Ok(CrossSectionChart {
        chosen: chosen.to_vec(),
        index_r,
        slice_ideal: IdealPresentation::new(ring, gens)?,
        surviving,
    })
}

/// The curve `t ↦ (a₁t^{c₁}, …, a_st^{c_s})` through the origin and `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurve {
    pub point: RationalPoint,
    pub exponents: Vec<u64>,
}

impl RationalCurve {
    pub fn at(&self, t: &BigRational) -> RationalPoint {
        RationalPoint {
            coords: self
                .point
                .coords
                .iter()
                .zip(&self.exponents)
                .map(|(a, &c)| a * num_traits::pow(t.clone(), c as usize))
                .collect(),
        }
    }

    /// `f` along the curve, as coefficients of powers of `t`.
    pub fn pullback(&self, f: &Polynomial) -> BTreeMap<u64, BigRational> {
        let mut out: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (m, c) in f.terms() {
            let mut coef = c.clone();
            let mut e = 0u64;
            for ((a, &k), &ci) in self.point.coords.iter().zip(m.exponents()).zip(&self.exponents) {
                if k > 0 {
                    coef *= num_traits::pow(a.clone(), k as usize);
                    e += ci * k as u64;
                }
            }
            if coef.is_zero() {
                continue;
            }
            let entry = out.entry(e).or_insert_with(BigRational::zero);
            *entry += coef;
            if entry.is_zero() {
                out.remove(&e);
            }
        }
        out
    }

    /// Whether the curve lies on `V(a)`, identically in `t`.
    pub fn lies_on(&self, a: &IdealPresentation) -> bool {
        a.generators().iter().all(|f| self.pullback(f).is_empty())
    }
}

/// Exponents `c_i = ω·λ(y_i)` with the cached witness `ω`, divided by their gcd.
pub fn rational_curve_through(p: &RationalPoint, g: &GradingMap) -> Result<RationalCurve> {
    let w = g.require_positive()?;
    check_len(p, g.ring().nvars())?;
    let gcd = w.dots.iter().fold(0i64, |acc, &d| acc.gcd(&d)).max(1);
    let exponents = w.dots.iter().map(|&d| (d / gcd) as u64).collect();
    Ok(RationalCurve {
        point: p.clone(),
        exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ex45() -> GradingMap {
        let r = Ring::new(["y1", "y2", "y3", "y4"]);
        GradingMap::new(&r, 2, vec![vec![1, 2], vec![1, 0], vec![0, 1], vec![2, 3]]).unwrap()
    }

    fn hom(g: &GradingMap, gens: &[&str]) -> HomogeneousIdeal {
        let gens = gens.iter().map(|s| parse_polynomial(s, g.ring()).unwrap()).collect();
        make_homogeneous_ideal(&IdealPresentation::new(g.ring(), gens).unwrap(), g).unwrap()
    }

    const F: &str = "y1^2*y2*y3 + y1*y4 + y2*y3^2*y4";

    fn shown(a: &HomogeneousIdeal) -> Vec<String> {
        a.generators().iter().map(|f| f.to_string()).collect()
    }

    #[test]
    fn orbit_dimensions() {
        let g = ex45();
        assert_eq!(orbit_dimension(&RationalPoint::from_integers(&[1, 1, 1, 1]), &g).unwrap().rank, 2);
        assert_eq!(orbit_dimension(&RationalPoint::origin(4), &g).unwrap().rank, 0);
        assert_eq!(orbit_dimension(&RationalPoint::from_integers(&[1, 0, 0, 0]), &g).unwrap().rank, 1);
        assert!(orbit_dimension(&RationalPoint::origin(3), &g).is_err());
    }

    #[test]
    fn orbit_membership() {
        let g = ex45();
        let v = hom(&g, &[F]);
        assert!(orbit_contained(&RationalPoint::from_integers(&[0, 1, 0, 0]), &v).unwrap());
        assert!(orbit_contained(&RationalPoint::origin(4), &v).unwrap());
        assert!(!orbit_contained(&RationalPoint::from_integers(&[1, 1, 1, 1]), &v).unwrap());
        let r = Ring::new(["y1", "y2"]);
        let g2 = GradingMap::new(&r, 1, vec![vec![2], vec![1]]).unwrap();
        let c = hom(&g2, &["y1 - y2^2"]);
        assert!(!orbit_contained(&RationalPoint::from_integers(&[2, 1]), &c).unwrap());
    }

    #[test]
    fn orbit_closures_match_the_worked_example() {
        let g = ex45();
        let c = orbit_closure_ideal(&RationalPoint::from_integers(&[1, 1, 1, 1]), &g).unwrap();
        assert_eq!(shown(&c), vec!["y1 - y2*y3^2", "-y2^2*y3^3 + y4"]);
        let o = orbit_closure_ideal(&RationalPoint::origin(4), &g).unwrap();
        assert_eq!(shown(&o), vec!["y1", "y2", "y3", "y4"]);
        let axis = orbit_closure_ideal(&RationalPoint::from_integers(&[1, 0, 0, 0]), &g).unwrap();
        assert_eq!(shown(&axis), vec!["y2", "y3", "y4"]);
    }

    #[test]
    fn orbit_closure_needs_saturation() {
        // λ = (2, 3) in ℤ: kernel generated by (3, -2), binomial y1^3 - y2^2
        let r = Ring::new(["y1", "y2"]);
        let g = GradingMap::new(&r, 1, vec![vec![2], vec![3]]).unwrap();
        let c = orbit_closure_ideal(&RationalPoint::from_integers(&[1, 2]), &g).unwrap();
        assert_eq!(shown(&c), vec!["4*y1^3 - y2^2"]);
    }

    #[test]
    fn strata_of_low_orbit_dimension() {
        let r = Ring::new(["y1", "y2", "y3", "y4"]);
        let g44 = GradingMap::new(&r, 2, vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(low_orbit_stratum(&g44, 1).unwrap().components, vec![vec![0], vec![1, 2, 3]]);
        assert_eq!(low_orbit_stratum(&g44, 0).unwrap().components, vec![Vec::<usize>::new()]);
        assert_eq!(low_orbit_stratum(&g44, 2).unwrap().components, vec![vec![0, 1, 2, 3]]);
        assert!(low_orbit_stratum(&g44, 3).is_err());
        let g = ex45();
        assert_eq!(
            low_orbit_stratum(&g, 1).unwrap().components,
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
    }

    #[test]
    fn maximal_orbit_dimensions() {
        let g = ex45();
        assert_eq!(max_orbit_dimension(&hom(&g, &[])).unwrap(), 2);
        assert_eq!(max_orbit_dimension(&hom(&g, &["y2", "y3", "y4"])).unwrap(), 1);
        assert_eq!(max_orbit_dimension(&hom(&g, &["y1", "y2", "y3", "y4"])).unwrap(), 0);
    }

    #[test]
    fn one_dimensional_orbits() {
        let r = Ring::new(["y1"]);
        let g = GradingMap::new(&r, 1, vec![vec![1]]).unwrap();
        assert_eq!(find_one_dim_orbit(&hom(&g, &[])).unwrap(), RationalPoint::from_integers(&[1]));
        let r = Ring::new(["y1", "y2"]);
        let g = GradingMap::new(&r, 1, vec![vec![2], vec![1]]).unwrap();
        assert_eq!(
            find_one_dim_orbit(&hom(&g, &["y1 - y2^2"])).unwrap(),
            RationalPoint::from_integers(&[1, 1])
        );
        let g = ex45();
        let v = hom(&g, &[F]);
        let p = find_one_dim_orbit(&v).unwrap();
        assert!(orbit_contained(&p, &v).unwrap());
        assert_eq!(orbit_dimension(&p, &g).unwrap().rank, 1);
        assert_eq!(p, RationalPoint::from_integers(&[1, 0, 0, 0]));
        assert!(find_one_dim_orbit(&hom(&g, &["y1", "y2", "y3", "y4"])).is_err());
    }

    #[test]
    fn one_dimensional_orbit_through_algebraic_equation() {
        // y1^2 - 4*y2^2 with equal weights: points (2c, ±c)
        let r = Ring::new(["y1", "y2", "y3"]);
        let g = GradingMap::new(&r, 2, vec![vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let v = hom(&g, &["y1^2 - 4*y2^2", "y3"]);
        let p = find_one_dim_orbit(&v).unwrap();
        assert!(orbit_contained(&p, &v).unwrap());
        assert_eq!(orbit_dimension(&p, &g).unwrap().rank, 1);
    }

    #[test]
    fn no_rational_point_is_reported() {
        // y1^2 + y2^2 = 0 has no nonzero rational solutions; y3 axis excluded
        let r = Ring::new(["y1", "y2", "y3"]);
        let g = GradingMap::new(&r, 2, vec![vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let v = hom(&g, &["y1^2 + y2^2", "y3"]);
        match find_one_dim_orbit(&v) {
            Err(Error::NoRationalPoint { support, .. }) => assert_eq!(support, vec![0, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cross_sections() {
        let g = ex45();
        let z = hom(&g, &[]);
        let c = cross_section(&z, &[1, 2]).unwrap();
        assert_eq!(c.index_r, BigInt::one());
        let p = c.section_point(&RationalPoint::from_integers(&[1, 1, 1, 1]), &g).unwrap();
        assert_eq!(p, Some(RationalPoint::from_integers(&[1, 1, 1, 1])));
        let q = RationalPoint::from_integers(&[3, 2, 5, 7]);
        let sp = c.section_point(&q, &g).unwrap().unwrap();
        let expect = |x: i64, y: i64| BigRational::new(x.into(), y.into());
        assert_eq!(sp.coords[0], expect(3, 2 * 25));
        assert_eq!(sp.coords[3], expect(7, 4 * 125));
        assert_eq!(cross_section(&z, &[0, 3]).unwrap().index_r, BigInt::one());
        let c2 = cross_section(&z, &[0, 1]).unwrap();
        assert_eq!(c2.index_r, BigInt::from(2));
        assert!(!c2.unique_intersection());
        assert!(matches!(cross_section(&z, &[0]), Err(Error::InvalidInput(_))));
        let r = Ring::new(["y1", "y2", "y3"]);
        let g3 = GradingMap::new(&r, 2, vec![vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            cross_section(&hom(&g3, &[]), &[0, 1]),
            Err(Error::DependentColumns { .. })
        ));
    }

    #[test]
    fn rational_curves() {
        let g = ex45();
        let p = RationalPoint::from_integers(&[0, 1, 0, 0]);
        let c = rational_curve_through(&p, &g).unwrap();
        assert_eq!(c.exponents, vec![3, 1, 1, 5]);
        assert!(c.at(&BigRational::zero()).is_origin());
        assert_eq!(c.at(&BigRational::one()), p);
        let v = hom(&g, &[F]);
        assert!(c.lies_on(v.base()));
        let r = Ring::new(["a", "b"]);
        let std = GradingMap::standard(&r);
        assert_eq!(rational_curve_through(&RationalPoint::origin(2), &std).unwrap().exponents, vec![1, 1]);
    }
}

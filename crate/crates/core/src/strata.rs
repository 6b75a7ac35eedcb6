//! Gröbner strata of monomial ideals: the affine family of ideals with a
//! fixed initial ideal, cut out in the space of tail coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{make_homogeneous_ideal, minimal_embedding, EmbeddingResult};
use crate::error::{Error, Result};
use crate::grading::{homogeneous_degree, GradingMap, Positivity};
use crate::groebner::groebner_basis;
use crate::ideal::{krull_dimension, IdealPresentation};
use crate::poly::{BigRational, Monomial, Polynomial, Ring, TermOrder};

/// A monomial ideal `J ⊆ k[x₀,…,x_n]` with its minimal generators.
#[derive(Debug, Clone)]
pub struct MonomialIdealSpec {
    ring: Arc<Ring>,
    generators: Vec<Monomial>,
    order: TermOrder,
}

impl MonomialIdealSpec {
    /// Minimizes the given generators and sorts them descending under `order`.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Monomial>, order: TermOrder) -> Result<Self> {
        order.ensure_well_order(ring.nvars())?;
        for m in &generators {
            if m.nvars() != ring.nvars() {
                return Err(Error::LengthMismatch {
                    expected: ring.nvars(),
                    found: m.nvars(),
                });
            }
        }
        let mut minimal: Vec<Monomial> = Vec::new();
        for m in &generators {
            let redundant = generators
                .iter()
                .any(|other| other != m && other.divides(m))
                || minimal.contains(m);
            if !redundant {
                minimal.push(m.clone());
            }
        }
        minimal.sort_by(|a, b| order.cmp(b, a));
        Ok(MonomialIdealSpec {
            ring: ring.clone(),
            generators: minimal,
            order,
        })
    }

    /// Reads generators such as `x^2, x*y`; each must be a monomial.
    pub fn parse(ring: &Arc<Ring>, text: &str, order: TermOrder) -> Result<Self> {
        let mut gens = Vec::new();
        for piece in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let f = crate::poly::parse_polynomial(piece, ring)?;
            let head = f.terms().next().filter(|_| f.is_monomial()).map(|(m, _)| m.clone());
            match head {
                Some(m) => gens.push(m),
                None => return Err(Error::InvalidInput(format!("{piece} is not a monomial"))),
            }
        }
        MonomialIdealSpec::new(ring, gens, order)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn generator_polynomials(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .map(|m| Polynomial::term(&self.ring, m.clone(), BigRational::one()))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMode {
    /// Tails of the same standard degree as the head.
    #[default]
    Homogeneous,
    /// Tails of standard degree at most that of the head.
    Full,
}

impl TailMode {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "homogeneous" => Some(TailMode::Homogeneous),
            "full" => Some(TailMode::Full),
            _ => None,
        }
    }
}

/// One coefficient variable `C_{α,β}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailCoefficient {
    /// Position of the head `x^α` among the generators of `J`.
    pub head: usize,
    pub tail: Monomial,
}

#[derive(Debug, Clone)]
pub struct TailScheme {
    pub spec: MonomialIdealSpec,
    pub mode: TailMode,
    /// Per head, its tails sorted descending.
    pub tails: Vec<Vec<Monomial>>,
    /// Coefficients in ring order: heads in generator order, tails descending.
    pub coefficients: Vec<TailCoefficient>,
    /// Ring of the coefficients `C1, C2, …`.
    pub coefficient_ring: Arc<Ring>,
}

impl TailScheme {
    pub fn num_coefficients(&self) -> usize {
        self.coefficients.len()
    }

    /// `λ(C_{α,β}) = α − β`.
    pub fn coefficient_degrees(&self) -> Vec<Vec<i64>> {
        self.coefficients
            .iter()
            .map(|c| {
                let head = &self.spec.generators[c.head];
                head.exponents()
                    .iter()
                    .zip(c.tail.exponents())
                    .map(|(&a, &b)| a as i64 - b as i64)
                    .collect()
            })
            .collect()
    }

    pub fn coefficient_grading(&self) -> Result<GradingMap> {
        GradingMap::new(
            &self.coefficient_ring,
            self.spec.ring.nvars(),
            self.coefficient_degrees(),
        )
    }

    /// `g_α = x^α + Σ_β c_{α,β} x^β` for given coefficient values.
    pub fn specialize(&self, values: &[BigRational]) -> Result<Vec<Polynomial>> {
        if values.len() != self.coefficients.len() {
            return Err(Error::LengthMismatch {
                expected: self.coefficients.len(),
                found: values.len(),
            });
        }
        let ring = &self.spec.ring;
        let mut gens: Vec<Polynomial> = self.spec.generator_polynomials();
        for (c, v) in self.coefficients.iter().zip(values) {
            gens[c.head] = &gens[c.head] + &Polynomial::term(ring, c.tail.clone(), v.clone());
        }
        Ok(gens)
    }
}

/// All monomials in `n` variables of total degree `d`, ascending lexicographically.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn tail_scheme(j: &MonomialIdealSpec, mode: TailMode) -> TailScheme {
    let n = j.ring.nvars();
    let mut tails = Vec::new();
    let mut coefficients = Vec::new();
    for (h, head) in j.generators.iter().enumerate() {
        let d = head.total_degree() as u32;
        let degrees = match mode {
            TailMode::Homogeneous => d..=d,
            TailMode::Full => 0..=d,
        };
        let mut list: Vec<Monomial> = degrees
            .flat_map(|e| monomials_of_degree(n, e))
            .filter(|m| j.order.cmp(m, head).is_lt() && !j.contains(m))
            .collect();
        list.sort_by(|a, b| j.order.cmp(b, a));
        for t in &list {
            coefficients.push(TailCoefficient {
                head: h,
                tail: t.clone(),
            });
        }
        tails.push(list);
    }
    let names: Vec<String> = (1..=coefficients.len()).map(|i| format!("C{i}")).collect();
    TailScheme {
        spec: j.clone(),
        mode,
        tails,
        coefficients,
        coefficient_ring: Ring::new(names),
    }
}

/// A polynomial in `x` with coefficients in `k[C]`.
type Generic = BTreeMap<Monomial, Polynomial>;

fn generic_generators(scheme: &TailScheme) -> Vec<Generic> {
    let cring = &scheme.coefficient_ring;
    scheme
        .spec
        .generators
        .iter()
        .enumerate()
        .map(|(h, head)| {
            let mut g = Generic::new();
            g.insert(head.clone(), Polynomial::one(cring));
            for (k, c) in scheme.coefficients.iter().enumerate() {
                if c.head == h {
                    g.insert(c.tail.clone(), Polynomial::variable(cring, k));
                }
            }
            g
        })
        .collect()
}

fn add_scaled(target: &mut Generic, g: &Generic, shift: &Monomial, factor: &Polynomial) {
    for (m, c) in g {
        let key = m.mul(shift);
        let updated = match target.remove(&key) {
            Some(old) => &old + &(c * factor),
            None => c * factor,
        };
        if !updated.is_zero() {
            target.insert(key, updated);
        }
    }
}

/// Full reduction by the monic generic generators; the greatest reducible
/// term is always treated first, with the first head dividing it.
fn reduce_generic(mut f: Generic, gens: &[Generic], heads: &[Monomial], order: &TermOrder) -> Generic {
    loop {
        let mut target = None;
        for m in f.keys() {
            if let Some(k) = heads.iter().position(|h| h.divides(m)) {
                if target.as_ref().is_none_or(|(t, _): &(Monomial, usize)| order.cmp(m, t).is_gt()) {
                    target = Some((m.clone(), k));
                }
            }
        }
        let Some((m, k)) = target else {
            return f;
        };
        let coef = f[&m].clone();
        let shift = heads[k].quotient(&m).expect("head divides");
        add_scaled(&mut f, &gens[k], &shift, &-&coef);
    }
}

#[derive(Debug, Clone)]
pub struct StratumResult {
    pub scheme: TailScheme,
    pub stratum_ideal: IdealPresentation,
    pub grading: GradingMap,
    pub reduced: Option<EmbeddingResult>,
}

impl StratumResult {
    pub fn positivity(&self) -> &Positivity {
        self.grading.positivity()
    }
}

pub fn stratum_ideal(scheme: &TailScheme) -> Result<StratumResult> {
    let spec = &scheme.spec;
    let order = &spec.order;
    let cring = &scheme.coefficient_ring;
    let heads = &spec.generators;
    let gens = generic_generators(scheme);

    let mut pairs: Vec<(Monomial, usize, usize)> = Vec::new();
    for i in 0..heads.len() {
        for k in i + 1..heads.len() {
            pairs.push((heads[i].lcm(&heads[k]), i, k));
        }
    }
    pairs.sort_by(|a, b| order.cmp(&a.0, &b.0).then((a.1, a.2).cmp(&(b.1, b.2))));

    let one = Polynomial::one(cring);
    let mut equations: Vec<Polynomial> = Vec::new();
    for (lcm, i, k) in pairs {
        let mut s = Generic::new();
        add_scaled(&mut s, &gens[i], &heads[i].quotient(&lcm).expect("divides"), &one);
        add_scaled(&mut s, &gens[k], &heads[k].quotient(&lcm).expect("divides"), &-&one);
        let remainder = reduce_generic(s, &gens, heads, order);
        equations.extend(remainder.into_values());
    }
    let lex = TermOrder::lex();
    let mut normalized: Vec<Polynomial> = Vec::new();
    for e in equations {
        let p = e.primitive(&lex);
        if !normalized.contains(&p) {
            normalized.push(p);
        }
    }
    normalized.sort_by(|a, b| {
        let la = a.leading_monomial(&lex).expect("nonzero");
        let lb = b.leading_monomial(&lex).expect("nonzero");
        lex.cmp(lb, la).then_with(|| a.to_string().cmp(&b.to_string()))
    });

    let grading = scheme.coefficient_grading()?;
    for f in &normalized {
        if homogeneous_degree(f, &grading).is_none() {
            return Err(Error::Internal(format!(
                "stratum equation {f} is not homogeneous for the coefficient grading"
            )));
        }
    }
    Ok(StratumResult {
        scheme: scheme.clone(),
        stratum_ideal: IdealPresentation::new(cring, normalized)?,
        grading,
        reduced: None,
    })
}

/// The stratum with its minimal embedding, when the coefficient grading is
/// positive; otherwise the unreduced stratum with its certificate.
pub fn reduced_stratum(j: &MonomialIdealSpec, mode: TailMode) -> Result<StratumResult> {
    let mut result = stratum_ideal(&tail_scheme(j, mode))?;
    if result.grading.is_positive() {
        let hom = make_homogeneous_ideal(&result.stratum_ideal, &result.grading)?;
        let emb = minimal_embedding(&hom, None)?;
        let before = krull_dimension(&result.stratum_ideal)?;
        let after = krull_dimension(emb.embedded.base())?;
        if before != after {
            return Err(Error::Internal(format!(
                "embedding changed the dimension from {before} to {after}"
            )));
        }
        result.reduced = Some(emb);
    }
    Ok(result)
}

/// Minimal generators of the initial ideal of the specialized generators.
pub fn fiber_initial_ideal(scheme: &TailScheme, values: &[BigRational]) -> Result<Vec<Monomial>> {
    let spec = &scheme.spec;
    let gens = scheme.specialize(values)?;
    let gb = groebner_basis(&spec.ring, &gens, &spec.order)?;
    Ok(MonomialIdealSpec::new(&spec.ring, gb.leading_monomials(), spec.order.clone())?.generators)
}

/// Whether specializing `C` at `values` gives an ideal with initial ideal `J`.
pub fn fiber_has_initial_ideal(scheme: &TailScheme, values: &[BigRational]) -> Result<bool> {
    Ok(fiber_initial_ideal(scheme, values)? == scheme.spec.generators)
}

/// Whether `values` lies on the stratum.
pub fn on_stratum(result: &StratumResult, values: &[BigRational]) -> bool {
    values.len() == result.scheme.num_coefficients()
        && result
            .stratum_ideal
            .generators()
            .iter()
            .all(|f| f.evaluate(values).is_zero())
}

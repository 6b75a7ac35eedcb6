//! Ideal presentations and the operations built on Gröbner bases.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, normal_form, GroebnerBasis};
use crate::poly::{BigRational, Polynomial, Ring, TermOrder};

/// A finite generating set of an ideal, with Gröbner bases cached per order.
///
/// An empty generator list is the zero ideal. Clones share the cache.
#[derive(Clone)]
pub struct IdealPresentation {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    cache: Arc<Mutex<Vec<GroebnerBasis>>>,
}

impl IdealPresentation {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            Ring::ensure_same(g.ring(), ring)?;
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        IdealPresentation {
            ring: ring.clone(),
            generators: Vec::new(),
            cache: Arc::new(Mutex::new(Vec::new())),
        }
    }

    /// The ideal generated by all variables of the ring.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect();
        IdealPresentation::new(ring, gens).expect("same ring")
    }

    /// Attaches a precomputed basis after checking it is a Gröbner basis of
    /// the same ideal.
    pub fn with_groebner_basis(
        ring: &Arc<Ring>,
        generators: Vec<Polynomial>,
        basis: GroebnerBasis,
    ) -> Result<Self> {
        let ideal = IdealPresentation::new(ring, generators)?;
        Ring::ensure_same(basis.ring(), ring)?;
        if !basis.verify() {
            return Err(Error::InvalidInput(
                "attached basis fails Buchberger's criterion".into(),
            ));
        }
        for g in &ideal.generators {
            if !basis.contains(g)? {
                return Err(Error::InvalidInput(format!(
                    "generator {g} is not in the ideal of the attached basis"
                )));
            }
        }
        let own = ideal.groebner_basis(basis.order())?;
        for b in basis.elements() {
            if !own.contains(b)? {
                return Err(Error::InvalidInput(format!(
                    "basis element {b} is not in the generated ideal"
                )));
            }
        }
        Ok(ideal)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Gröbner basis under `order`; computed once and cached.
    pub fn groebner_basis(&self, order: &TermOrder) -> Result<GroebnerBasis> {
        if let Some(g) = self.cached_groebner_basis(order) {
            return Ok(g);
        }
        let g = groebner_basis(&self.ring, &self.generators, order)?;
        let mut cache = self.cache.lock().expect("gb cache poisoned");
        if !cache.iter().any(|c| c.order() == order) {
            cache.push(g.clone());
        }
        Ok(g)
    }

    pub fn cached_groebner_basis(&self, order: &TermOrder) -> Option<GroebnerBasis> {
        let cache = self.cache.lock().expect("gb cache poisoned");
        cache.iter().find(|g| g.order() == order).cloned()
    }

    fn default_basis(&self) -> Result<GroebnerBasis> {
        self.groebner_basis(&TermOrder::degrevlex())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ring::ensure_same(f.ring(), &self.ring)?;
        Ok(normal_form(f, &self.default_basis()?)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &IdealPresentation) -> Result<bool> {
        Ring::ensure_same(other.ring(), &self.ring)?;
        let gb = self.default_basis()?;
        for g in &other.generators {
            if !normal_form(g, &gb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal equality by two-way membership.
    pub fn equals(&self, other: &IdealPresentation) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn is_proper(&self) -> Result<bool> {
        Ok(!self.default_basis()?.is_unit())
    }

    pub fn to_string_with(&self, order: &TermOrder) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.to_string_with(order))
            .collect();
        format!("({})", gens.join(", "))
    }
}

impl fmt::Debug for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}", self.to_string_with(&TermOrder::lex()))
    }
}

/// Reduced Gröbner basis of `gens` under `order`, cached on the presentation.
pub fn buchberger(gens: &IdealPresentation, order: &TermOrder) -> Result<GroebnerBasis> {
    gens.groebner_basis(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineKind {
    Sum,
    Product,
}

/// Sum (concatenated generators) or product (pairwise products).
pub fn ideal_combine(
    a: &IdealPresentation,
    b: &IdealPresentation,
    kind: CombineKind,
) -> Result<IdealPresentation> {
    Ring::ensure_same(a.ring(), b.ring())?;
    let gens = match kind {
        CombineKind::Sum => a.generators.iter().chain(&b.generators).cloned().collect(),
        CombineKind::Product => a
            .generators
            .iter()
            .flat_map(|f| b.generators.iter().map(move |g| f * g))
            .collect(),
    };
    IdealPresentation::new(a.ring(), gens)
}

/// Generators of `gens ∩ k[other variables]` inside the ring `ring`, where
/// `elim` are the variables to drop.
fn elimination_basis(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    elim: &[usize],
) -> Result<Vec<Polynomial>> {
    let order = TermOrder::elimination(ring.nvars(), elim);
    let gb = groebner_basis(ring, gens, &order)?;
    Ok(gb
        .elements()
        .iter()
        .filter(|g| !g.involves_any(elim))
        .cloned()
        .collect())
}

/// `a ∩ b`, by eliminating `t` from `t·a + (1 − t)·b`.
pub fn ideal_intersection(a: &IdealPresentation, b: &IdealPresentation) -> Result<IdealPresentation> {
    Ring::ensure_same(a.ring(), b.ring())?;
    let ring = a.ring();
    let t_name = ring.fresh_name("t");
    let ext = ring.extended(&[t_name]);
    let t = Polynomial::variable(&ext, ring.nvars());
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::new();
    for f in &a.generators {
        gens.push(&t * &f.extend_to(&ext));
    }
    for g in &b.generators {
        gens.push(&one_minus_t * &g.extend_to(&ext));
    }
    let kept = elimination_basis(&ext, &gens, &[ring.nvars()])?;
    let back = back_map(ring.nvars(), 1);
    let gens = kept
        .iter()
        .map(|g| g.map_ring(ring, &back))
        .collect::<Result<Vec<_>>>()?;
    IdealPresentation::new(ring, gens)
}

fn back_map(nvars: usize, extra: usize) -> Vec<Option<usize>> {
    (0..nvars).map(Some).chain(std::iter::repeat_n(None, extra)).collect()
}

/// `(a : f^∞)` via the Rabinowitsch trick.
pub fn saturate(a: &IdealPresentation, f: &Polynomial) -> Result<IdealPresentation> {
    Ring::ensure_same(a.ring(), f.ring())?;
    if f.is_zero() {
        return Err(Error::InvalidInput("cannot saturate by the zero polynomial".into()));
    }
    if f.is_constant() {
        return Ok(a.clone());
    }
    let ring = a.ring();
    let z_name = ring.fresh_name("z");
    let ext = ring.extended(&[z_name]);
    let z = Polynomial::variable(&ext, ring.nvars());
    let mut gens: Vec<Polynomial> = a.generators.iter().map(|g| g.extend_to(&ext)).collect();
    gens.push(&(&z * &f.extend_to(&ext)) - &Polynomial::one(&ext));
    let kept = elimination_basis(&ext, &gens, &[ring.nvars()])?;
    let back = back_map(ring.nvars(), 1);
    let gens = kept
        .iter()
        .map(|g| g.map_ring(ring, &back))
        .collect::<Result<Vec<_>>>()?;
    IdealPresentation::new(ring, gens)
}

/// `a ∩ k[y_j : j ∉ vars]`, as an ideal of the same ring.
pub fn eliminate(a: &IdealPresentation, vars: &[usize]) -> Result<IdealPresentation> {
    for &v in vars {
        if v >= a.ring().nvars() {
            return Err(Error::InvalidInput(format!("variable index {v} out of range")));
        }
    }
    let order = TermOrder::elimination(a.ring().nvars(), vars);
    let gb = a.groebner_basis(&order)?;
    let gens = gb
        .elements()
        .iter()
        .filter(|g| !g.involves_any(vars))
        .cloned()
        .collect();
    IdealPresentation::new(a.ring(), gens)
}

/// Krull dimension of `k[y]/a` under the default degrevlex basis.
pub fn krull_dimension(a: &IdealPresentation) -> Result<usize> {
    krull_dimension_with(a, &TermOrder::degrevlex())
}

/// Krull dimension read off the initial ideal under `order`: the largest
/// set of variables containing the support of no leading monomial.
pub fn krull_dimension_with(a: &IdealPresentation, order: &TermOrder) -> Result<usize> {
    let gb = a.groebner_basis(order)?;
    if gb.is_unit() {
        return Err(Error::ImproperIdeal);
    }
    let supports: Vec<Vec<usize>> = gb.leading_monomials().iter().map(|m| m.support()).collect();
    Ok(max_independent_set(a.ring().nvars(), &supports).len())
}

/// Largest (then lexicographically first) set of variables that contains
/// none of the given supports.
pub fn max_independent_set(nvars: usize, supports: &[Vec<usize>]) -> Vec<usize> {
    fn search(
        i: usize,
        nvars: usize,
        supports: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        size: usize,
        best: &mut Vec<usize>,
        best_size: &mut Option<usize>,
    ) {
        if let Some(b) = *best_size {
            if size + (nvars - i) <= b {
                return;
            }
        }
        if i == nvars {
            *best_size = Some(size);
            *best = (0..nvars).filter(|&k| chosen[k]).collect();
            return;
        }
        chosen[i] = true;
        let ok = supports
            .iter()
            .all(|s| !(s.contains(&i) && s.iter().all(|&k| chosen[k])));
        if ok {
            search(i + 1, nvars, supports, chosen, size + 1, best, best_size);
        }
        chosen[i] = false;
        search(i + 1, nvars, supports, chosen, size, best, best_size);
    }
    let mut chosen = vec![false; nvars];
    let mut best = Vec::new();
    let mut best_size = None;
    search(0, nvars, supports, &mut chosen, 0, &mut best, &mut best_size);
    best
}

/// Evaluates all generators at a rational point.
pub fn vanishes_at(a: &IdealPresentation, point: &[BigRational]) -> bool {
    a.generators.iter().all(|g| g.evaluate(point).is_zero())
}

/// Product of the given variables, as a polynomial.
pub fn variable_product(ring: &Arc<Ring>, vars: &[usize]) -> Polynomial {
    let mut p = Polynomial::one(ring);
    for &v in vars {
        p = &p * &Polynomial::variable(ring, v);
    }
    p
}

/// True iff `1 ∈ a`; equivalent to `!a.is_proper()`.
pub fn is_unit_ideal(a: &IdealPresentation) -> Result<bool> {
    Ok(!a.is_proper()?)
}

//! Division and a deterministic Buchberger engine.
//!
//! Polynomials are converted to a term list sorted by descending order key
//! (see [`TermOrder::matrix`]); since keys are linear in the exponents,
//! multiplying a sorted list by a monomial keeps it sorted and reductions
//! become linear merges.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{BigRational, Monomial, Polynomial, Ring, TermOrder};

/// Environment variable bounding the number of S-pairs a single Buchberger
/// run may process.
pub const PAIR_LIMIT_ENV: &str = "GCONE_PAIR_LIMIT";
/// Pair limit used when [`PAIR_LIMIT_ENV`] is unset or unparsable.
pub const DEFAULT_PAIR_LIMIT: usize = 200_000;

pub fn pair_limit() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(PAIR_LIMIT_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_PAIR_LIMIT)
    })
}

#[derive(Clone, Debug)]
struct Term {
    key: Vec<i64>,
    mono: Monomial,
    coef: BigRational,
}

type Terms = Vec<Term>;

struct KeyedOrder {
    matrix: Vec<Vec<i64>>,
}

impl KeyedOrder {
    fn new(order: &TermOrder, nvars: usize) -> Self {
        KeyedOrder {
            matrix: order.matrix(nvars),
        }
    }

    fn key(&self, m: &Monomial) -> Vec<i64> {
        crate::poly::key_with(&self.matrix, m)
    }

    fn sorted(&self, p: &Polynomial) -> Terms {
        let mut v: Terms = p
            .terms()
            .map(|(m, c)| Term {
                key: self.key(m),
                mono: m.clone(),
                coef: c.clone(),
            })
            .collect();
        v.sort_by(|a, b| b.key.cmp(&a.key));
        v
    }
}

fn to_poly(ring: &Arc<Ring>, t: &[Term]) -> Polynomial {
    Polynomial::from_terms(ring, t.iter().map(|t| (t.mono.clone(), t.coef.clone())))
}

fn add_keys(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `p - c * m * g`, with `m` given together with its key.
fn sub_mul(p: &[Term], c: &BigRational, m: &Monomial, mkey: &[i64], g: &[Term]) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut shifted = g.iter().map(|t| Term {
        key: add_keys(&t.key, mkey),
        mono: t.mono.mul(m),
        coef: -(&t.coef * c),
    });
    let mut next = shifted.next();
    while let Some(s) = next.take() {
        while i < p.len() && p[i].key > s.key {
            out.push(p[i].clone());
            i += 1;
        }
        if i < p.len() && p[i].key == s.key {
            let sum = &p[i].coef + &s.coef;
            if !sum.is_zero() {
                out.push(Term {
                    key: s.key,
                    mono: s.mono,
                    coef: sum,
                });
            }
            i += 1;
        } else {
            out.push(s);
        }
        next = shifted.next();
    }
    out.extend_from_slice(&p[i..]);
    out
}

fn make_monic(p: &mut Terms) {
    if let Some(first) = p.first() {
        if !first.coef.is_one() {
            let inv = first.coef.recip();
            for t in p.iter_mut() {
                t.coef *= &inv;
            }
        }
    }
}

/// Full reduction: repeatedly reduce the greatest reducible term using the
/// first divisor in `basis` order. Quotients are accumulated when requested.
fn reduce(
    order: &KeyedOrder,
    p: Terms,
    basis: &[&Terms],
    mut quotients: Option<&mut Vec<Terms>>,
) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut cur = p;
    while !cur.is_empty() {
        let lead = &cur[0];
        let divisor = basis.iter().enumerate().find_map(|(k, g)| {
            g[0].mono
                .quotient(&lead.mono)
                .map(|q| (k, q))
        });
        match divisor {
            Some((k, q)) => {
                let g = basis[k];
                let c = &lead.coef / &g[0].coef;
                let qkey = order.key(&q);
                if let Some(qs) = quotients.as_deref_mut() {
                    let merged = sub_mul(
                        &qs[k],
                        &-BigRational::one(),
                        &Monomial::one(q.nvars()),
                        &vec![0; qkey.len()],
                        &[Term {
                            key: qkey.clone(),
                            mono: q.clone(),
                            coef: c.clone(),
                        }],
                    );
                    qs[k] = merged;
                }
                cur = sub_mul(&cur, &c, &q, &qkey, g);
            }
            None => {
                rem.push(cur.remove(0));
            }
        }
    }
    rem
}

/// A Gröbner basis: monic elements sorted by descending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: TermOrder,
    elements: Vec<Polynomial>,
    reduced: bool,
}

/// Result of dividing a polynomial by a sequence of divisors.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

impl GroebnerBasis {
    /// Wraps elements that are already known to be a Gröbner basis.
    /// Only [`GroebnerBasis::verify`] checks the claim.
    pub fn from_parts(
        ring: &Arc<Ring>,
        order: TermOrder,
        elements: Vec<Polynomial>,
        reduced: bool,
    ) -> Self {
        GroebnerBasis {
            ring: ring.clone(),
            order,
            elements,
            reduced,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial(&self.order).expect("nonzero").clone())
            .collect()
    }

    /// True iff the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| !g.is_zero() && g.is_constant())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    /// Checks Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let order = KeyedOrder::new(&self.order, self.ring.nvars());
        let polys: Vec<Terms> = self.elements.iter().map(|g| order.sorted(g)).collect();
        let refs: Vec<&Terms> = polys.iter().filter(|p| !p.is_empty()).collect();
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                let s = s_polynomial(&order, refs[i], refs[j]);
                if !reduce(&order, s, &refs, None).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Divides `f` by the elements of `basis` in stored order.
pub fn divide(f: &Polynomial, basis: &GroebnerBasis) -> Result<Division> {
    Ring::ensure_same(f.ring(), basis.ring())?;
    basis.order.ensure_well_order(f.nvars())?;
    let order = KeyedOrder::new(&basis.order, f.nvars());
    let polys: Vec<Terms> = basis.elements.iter().map(|g| order.sorted(g)).collect();
    let nonzero: Vec<usize> = (0..polys.len()).filter(|&k| !polys[k].is_empty()).collect();
    let refs: Vec<&Terms> = nonzero.iter().map(|&k| &polys[k]).collect();
    let mut qs: Vec<Terms> = vec![Vec::new(); refs.len()];
    let rem = reduce(&order, order.sorted(f), &refs, Some(&mut qs));
    let mut quotients = vec![Polynomial::zero(f.ring()); polys.len()];
    for (slot, q) in nonzero.iter().zip(qs) {
        quotients[*slot] = to_poly(f.ring(), &q);
    }
    Ok(Division {
        quotients,
        remainder: to_poly(f.ring(), &rem),
    })
}

/// Remainder of `f` on division by `basis`: no term of the result is
/// divisible by a leading monomial of the basis.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    Ring::ensure_same(f.ring(), basis.ring())?;
    basis.order.ensure_well_order(f.nvars())?;
    let order = KeyedOrder::new(&basis.order, f.nvars());
    let polys: Vec<Terms> = basis.elements.iter().map(|g| order.sorted(g)).collect();
    let refs: Vec<&Terms> = polys.iter().filter(|p| !p.is_empty()).collect();
    Ok(to_poly(f.ring(), &reduce(&order, order.sorted(f), &refs, None)))
}

fn s_polynomial(order: &KeyedOrder, f: &Terms, g: &Terms) -> Terms {
    let lcm = f[0].mono.lcm(&g[0].mono);
    let uf = f[0].mono.quotient(&lcm).unwrap();
    let ug = g[0].mono.quotient(&lcm).unwrap();
    let zero: Terms = Vec::new();
    let a = sub_mul(&zero, &-f[0].coef.recip(), &uf, &order.key(&uf), f);
    sub_mul(&a, &g[0].coef.recip(), &ug, &order.key(&ug), g)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    key: Vec<i64>,
}

impl Pair {
    fn rank(&self) -> (&[i64], usize, usize) {
        (&self.key, self.i, self.j)
    }
}

/// Statistics of a Buchberger run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BuchbergerStats {
    pub pairs_processed: usize,
    pub pairs_discarded: usize,
    pub zero_reductions: usize,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are selected by the normal strategy (smallest lcm, then generator
/// indices), pruned with the Gebauer–Möller installation of Buchberger's
/// criteria.
pub fn groebner_basis(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: &TermOrder,
) -> Result<GroebnerBasis> {
    groebner_basis_with_stats(ring, gens, order, pair_limit()).map(|(g, _)| g)
}

pub fn groebner_basis_with_stats(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: &TermOrder,
    limit: usize,
) -> Result<(GroebnerBasis, BuchbergerStats)> {
    for g in gens {
        Ring::ensure_same(g.ring(), ring)?;
    }
    order.ensure_well_order(ring.nvars())?;
    let keyed = KeyedOrder::new(order, ring.nvars());
    let mut engine = Engine {
        order: &keyed,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: BuchbergerStats::default(),
    };
    for g in gens {
        let p = keyed.sorted(g);
        let reduced = {
            let basis = engine.active_refs();
            reduce(&keyed, p, &basis, None)
        };
        if !reduced.is_empty() {
            engine.insert(reduced);
        }
    }
    while !engine.pairs.is_empty() {
        if engine.stats.pairs_processed >= limit {
            return Err(Error::ResourceExhausted {
                limit,
                processed: engine.stats.pairs_processed,
                remaining: engine.pairs.len(),
                basis_len: engine.active.iter().filter(|&&a| a).count(),
            });
        }
        let best = (0..engine.pairs.len())
            .min_by(|&a, &b| engine.pairs[a].rank().cmp(&engine.pairs[b].rank()))
            .unwrap();
        let pair = engine.pairs.remove(best);
        engine.stats.pairs_processed += 1;
        let s = s_polynomial(&keyed, &engine.polys[pair.i], &engine.polys[pair.j]);
        let h = {
            let basis = engine.active_refs();
            reduce(&keyed, s, &basis, None)
        };
        if h.is_empty() {
            engine.stats.zero_reductions += 1;
        } else {
            engine.insert(h);
        }
    }
    let stats = engine.stats.clone();
    let elements = engine.finish();
    let elements = elements.iter().map(|t| to_poly(ring, t)).collect();
    Ok((
        GroebnerBasis {
            ring: ring.clone(),
            order: order.clone(),
            elements,
            reduced: true,
        },
        stats,
    ))
}

struct Engine<'a> {
    order: &'a KeyedOrder,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: BuchbergerStats,
}

impl Engine<'_> {
    fn active_refs(&self) -> Vec<&Terms> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    fn lead(&self, k: usize) -> &Monomial {
        &self.polys[k][0].mono
    }

    /// Gebauer–Möller update for a new element `h` (top-reduced, nonzero).
    fn insert(&mut self, mut h: Terms) {
        make_monic(&mut h);
        let hi = self.polys.len();
        let lt_h = h[0].mono.clone();
        self.polys.push(h);
        self.active.push(true);

        let mut candidates: Vec<Pair> = (0..hi)
            .filter(|&k| self.active[k])
            .map(|k| {
                let lcm = self.lead(k).lcm(&lt_h);
                Pair {
                    i: k,
                    j: hi,
                    key: self.order.key(&lcm),
                    lcm,
                }
            })
            .collect();
        candidates.sort_by(|a, b| a.rank().cmp(&b.rank()));

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        let mut rest = candidates;
        while !rest.is_empty() {
            let p = rest.remove(0);
            let coprime = self.lead(p.i).is_coprime(&lt_h);
            let dominated = rest.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            } else {
                self.stats.pairs_discarded += 1;
            }
        }
        let before = kept.len();
        kept.retain(|p| !self.lead(p.i).is_coprime(&lt_h));
        self.stats.pairs_discarded += before - kept.len();

        // old pairs made redundant by h
        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = &polys[p.i][0].mono;
            let lj = &polys[p.j][0].mono;
            !(lt_h.divides(&p.lcm) && li.lcm(&lt_h) != p.lcm && lj.lcm(&lt_h) != p.lcm)
        });
        self.stats.pairs_discarded += before - self.pairs.len();

        for k in 0..hi {
            if self.active[k] && lt_h.divides(self.lead(k)) {
                self.active[k] = false;
            }
        }
        self.pairs.extend(kept);
    }

    /// Interreduces the active elements into the reduced basis.
    fn finish(self) -> Vec<Terms> {
        let order = self.order;
        let mut basis: Vec<Terms> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        basis.sort_by(|a, b| b[0].key.cmp(&a[0].key));
        let mut out = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let others: Vec<&Terms> = basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, p)| p)
                .collect();
            let tail: Terms = basis[k][1..].to_vec();
            let mut r = vec![basis[k][0].clone()];
            r.extend(reduce(order, tail, &others, None));
            make_monic(&mut r);
            out.push(r);
        }
        out
    }
}

//! Homogeneous Buchberger algorithm, processed degree by degree.

use std::collections::{BTreeMap, HashMap};

use super::order::{Key, OrderCtx};
use crate::poly::{GradedRing, Polynomial};
use crate::Rational;

pub(crate) type Terms = Vec<(Key, Rational)>;

/// A basis element: monic, terms in descending order.
#[derive(Clone, Debug)]
pub(crate) struct Elem {
    pub terms: Terms,
    pub deg: u32,
    /// Expression of this element in the input generators.
    pub cof: Option<Vec<Polynomial>>,
}

impl Elem {
    pub fn lm(&self) -> &Key {
        &self.terms[0].0
    }
}

pub(crate) fn to_terms(ctx: &OrderCtx, p: &Polynomial) -> Terms {
    let mut t: Terms = p.terms().iter().map(|(m, c)| (ctx.encode(m), c.clone())).collect();
    t.sort_by(|a, b| b.0.cmp(&a.0));
    t
}

pub(crate) fn from_terms(ctx: &OrderCtx, ring: &GradedRing, t: &[(Key, Rational)]) -> Polynomial {
    Polynomial::from_terms(ring, t.iter().map(|(k, c)| (ctx.decode(k), c.clone())))
}

/// One division step record: `coef * mono * basis[index]` was subtracted.
pub(crate) struct Quotient {
    pub index: usize,
    pub mono: Key,
    pub coef: Rational,
}

/// Fully reduces `input` by `basis` (skipping `skip`), returning the
/// remainder in descending order and the quotients used.
pub(crate) fn reduce(
    ctx: &OrderCtx,
    basis: &[Elem],
    skip: Option<usize>,
    input: Terms,
    want_quotients: bool,
) -> (Terms, Vec<Quotient>) {
    let mut work: BTreeMap<Key, Rational> = input.into_iter().collect();
    let mut rem: Terms = Vec::new();
    let mut quots = Vec::new();
    while let Some((m, c)) = work.pop_last() {
        let d = ctx.degree(&m);
        let found = basis.iter().enumerate().find(|(j, b)| Some(*j) != skip && b.deg <= d && ctx.divides(b.lm(), &m));
        match found {
            Some((j, b)) => {
                let q = ctx.quotient(b.lm(), &m);
                for (bm, bc) in b.terms.iter().skip(1) {
                    let key = ctx.mul(bm, &q);
                    let delta = &c * bc;
                    match work.get_mut(&key) {
                        Some(x) => {
                            *x -= &delta;
                            if x.is_zero() {
                                work.remove(&key);
                            }
                        }
                        None => {
                            work.insert(key, -delta);
                        }
                    }
                }
                if want_quotients {
                    quots.push(Quotient { index: j, mono: q, coef: c });
                }
            }
            None => rem.push((m, c)),
        }
    }
    (rem, quots)
}

/// Sums quotient records into one polynomial per basis element.
pub(crate) fn collect_quotients(ctx: &OrderCtx, ring: &GradedRing, quots: Vec<Quotient>) -> HashMap<usize, Polynomial> {
    let mut grouped: HashMap<usize, Vec<(crate::poly::Monomial, Rational)>> = HashMap::new();
    for q in quots {
        grouped.entry(q.index).or_default().push((ctx.decode(&q.mono), q.coef));
    }
    grouped.into_iter().map(|(j, t)| (j, Polynomial::from_terms(ring, t))).collect()
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Key,
    deg: u32,
}

pub(crate) struct Outcome {
    pub basis: Vec<Elem>,
    /// Degree through which the basis is a Groebner basis; `None` when complete.
    pub truncated_at: Option<u32>,
    pub smooth_steps: bool,
}

pub(crate) struct Buchberger<'a> {
    ctx: &'a OrderCtx,
    ring: &'a GradedRing,
    basis: Vec<Elem>,
    pairs: Vec<Pair>,
    ngens: Option<usize>,
    smooth: bool,
}

impl<'a> Buchberger<'a> {
    pub fn new(ctx: &'a OrderCtx, ring: &'a GradedRing, track: bool, ngens: usize) -> Self {
        Buchberger { ctx, ring, basis: Vec::new(), pairs: Vec::new(), ngens: track.then_some(ngens), smooth: true }
    }

    /// Runs to completion or up to `max_deg`. Generators must be homogeneous
    /// and nonzero.
    pub fn run(mut self, gens: &[Polynomial], max_deg: Option<u32>) -> Outcome {
        let mut pending: Vec<(u32, usize)> =
            gens.iter().enumerate().map(|(k, g)| (g.degree().expect("homogeneous generator"), k)).collect();
        pending.sort();
        let mut next_gen = 0;
        let mut truncated_at = None;
        loop {
            let gen_deg = pending.get(next_gen).map(|p| p.0);
            let pair_deg = self.pairs.iter().map(|p| p.deg).min();
            let d = match (gen_deg, pair_deg) {
                (None, None) => break,
                (Some(a), None) | (None, Some(a)) => a,
                (Some(a), Some(b)) => a.min(b),
            };
            if max_deg.is_some_and(|cap| d > cap) {
                truncated_at = max_deg;
                break;
            }
            let (mut batch, rest): (Vec<Pair>, Vec<Pair>) = self.pairs.drain(..).partition(|p| p.deg == d);
            self.pairs = rest;
            batch.sort_by(|a, b| a.lcm.cmp(&b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
            for p in batch {
                let (terms, cof) = self.spoly(&p);
                self.insert(terms, cof, d);
            }
            while next_gen < pending.len() && pending[next_gen].0 == d {
                let k = pending[next_gen].1;
                next_gen += 1;
                let terms = to_terms(self.ctx, &gens[k]);
                let cof = self.ngens.map(|n| {
                    let mut v = vec![Polynomial::zero(self.ring); n];
                    v[k] = Polynomial::one(self.ring);
                    v
                });
                self.insert(terms, cof, d);
            }
        }
        let basis = self.interreduce();
        Outcome { basis, truncated_at, smooth_steps: self.smooth }
    }

    fn spoly(&self, p: &Pair) -> (Terms, Option<Vec<Polynomial>>) {
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let qa = self.ctx.quotient(a.lm(), &p.lcm);
        let qb = self.ctx.quotient(b.lm(), &p.lcm);
        let mut work: BTreeMap<Key, Rational> = BTreeMap::new();
        for (m, c) in a.terms.iter().skip(1) {
            work.insert(self.ctx.mul(m, &qa), c.clone());
        }
        for (m, c) in b.terms.iter().skip(1) {
            let k = self.ctx.mul(m, &qb);
            let v = work.remove(&k).unwrap_or_else(Rational::zero) - c;
            if !v.is_zero() {
                work.insert(k, v);
            }
        }
        let terms: Terms = work.into_iter().rev().collect();
        let cof = match (&a.cof, &b.cof) {
            (Some(ca), Some(cb)) => {
                let ma = Polynomial::monomial(self.ring, self.ctx.decode(&qa), Rational::one());
                let mb = Polynomial::monomial(self.ring, self.ctx.decode(&qb), Rational::one());
                Some(ca.iter().zip(cb).map(|(x, y)| &(&ma * x) - &(&mb * y)).collect())
            }
            _ => None,
        };
        (terms, cof)
    }

    fn insert(&mut self, terms: Terms, cof: Option<Vec<Polynomial>>, deg: u32) {
        let track = cof.is_some();
        let (rem, quots) = reduce(self.ctx, &self.basis, None, terms, track);
        if rem.is_empty() {
            return;
        }
        let lc = rem[0].1.clone();
        if !lc.is_smooth_unit() {
            self.smooth = false;
        }
        let inv = lc.recip();
        let terms: Terms = rem.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let cof = cof.map(|mut v| {
            for (j, q) in collect_quotients(self.ctx, self.ring, quots) {
                let cj = self.basis[j].cof.as_ref().expect("tracked basis");
                for (x, y) in v.iter_mut().zip(cj) {
                    *x = &*x - &(&q * y);
                }
            }
            v.iter().map(|x| x.scale(&inv)).collect()
        });
        let elem = Elem { terms, deg, cof };
        self.update(elem);
    }

    /// Gebauer-Moeller installation of a new basis element.
    fn update(&mut self, h: Elem) {
        let ctx = self.ctx;
        let hn = self.basis.len();
        let hl = h.lm().clone();
        let cands: Vec<(usize, Key, bool)> = (0..hn)
            .map(|g| {
                let gl = self.basis[g].lm();
                (g, ctx.lcm(gl, &hl), ctx.coprime(gl, &hl))
            })
            .collect();
        // chain criterion among the new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cands[a].1, &cands[b].1);
                if ctx.divides(lb, la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // a kept coprime pair with the same lcm makes its lcm-class redundant
        let mut new_pairs = Vec::new();
        for (a, (g, l, cop)) in cands.iter().enumerate() {
            if !keep[a] {
                continue;
            }
            let class_coprime = cands.iter().any(|(_, l2, c2)| *c2 && l2 == l);
            if *cop || class_coprime {
                continue;
            }
            new_pairs.push(Pair { i: *g, j: hn, lcm: l.clone(), deg: ctx.degree(l) });
        }
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !ctx.divides(&hl, &p.lcm) {
                return true;
            }
            let li = ctx.lcm(basis[p.i].lm(), &hl);
            let lj = ctx.lcm(basis[p.j].lm(), &hl);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
        self.basis.push(h);
    }

    /// Minimal, fully tail-reduced, monic basis sorted by leading monomial.
    fn interreduce(&mut self) -> Vec<Elem> {
        let ctx = self.ctx;
        let n = self.basis.len();
        let mut minimal = Vec::new();
        for i in 0..n {
            let li = self.basis[i].lm();
            let redundant = (0..n).any(|j| {
                j != i && {
                    let lj = self.basis[j].lm();
                    ctx.divides(lj, li) && (lj != li || j < i)
                }
            });
            if !redundant {
                minimal.push(self.basis[i].clone());
            }
        }
        minimal.sort_by(|a, b| a.lm().cmp(b.lm()));
        let track = self.ngens.is_some();
        let mut out = minimal.clone();
        for i in 0..out.len() {
            let terms = minimal[i].terms.clone();
            let (rem, quots) = reduce(ctx, &minimal, Some(i), terms, track);
            debug_assert!(rem[0].0 == *minimal[i].lm());
            let cof = minimal[i].cof.clone().map(|mut v| {
                for (j, q) in collect_quotients(ctx, self.ring, quots) {
                    let cj = minimal[j].cof.as_ref().expect("tracked basis");
                    for (x, y) in v.iter_mut().zip(cj) {
                        *x = &*x - &(&q * y);
                    }
                }
                v
            });
            out[i] = Elem { terms: rem, deg: minimal[i].deg, cof };
        }
        out
    }
}

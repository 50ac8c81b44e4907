use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use super::engine::{self, collect_quotients, Buchberger, Elem};
use super::order::{MonomialOrder, OrderCtx};
use super::GroebnerError;
use crate::poly::{GradedRing, Monomial, PolyError, Polynomial};

/// Ideal generated by homogeneous polynomials of one ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: GradedRing,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; the rest must be homogeneous.
    pub fn new(ring: &GradedRing, generators: Vec<Polynomial>) -> Result<Ideal, GroebnerError> {
        let mut gens = Vec::with_capacity(generators.len());
        for (index, g) in generators.into_iter().enumerate() {
            if !g.ring().same_as(ring) {
                return Err(PolyError::RingMismatch.into());
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(GroebnerError::NotHomogeneous { index });
            }
            gens.push(g);
        }
        Ok(Ideal { ring: ring.clone(), generators: gens })
    }

    pub fn zero(ring: &GradedRing) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.generators.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    /// The ideal with `p` appended as its last generator.
    pub fn with_generator(&self, p: Polynomial) -> Result<Ideal, GroebnerError> {
        let mut gens = self.generators.clone();
        gens.push(p);
        Ideal::new(&self.ring, gens)
    }

    /// Image of the generators in a ring that contains these variables by name.
    pub fn embed(&self, target: &GradedRing) -> Result<Ideal, GroebnerError> {
        let gens = self.generators.iter().map(|g| g.embed(target)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(target, gens)
    }
}

/// Options for a Groebner computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbOptions {
    pub order: MonomialOrder,
    /// Fail with `DegreeCapExceeded` if the computation needs a higher degree.
    pub degree_cap: Option<u32>,
    /// Stop silently after this degree; the result is a truncated basis.
    pub truncate_at: Option<u32>,
    /// Record every basis element as a combination of the generators.
    pub track_cofactors: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { order: MonomialOrder::Grevlex, degree_cap: None, truncate_at: None, track_cofactors: false }
    }
}

/// Reduced Groebner basis of an ideal, possibly truncated at a degree.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: MonomialOrder,
    ctx: OrderCtx,
    elems: Vec<Elem>,
    valid_through: Option<u32>,
    smooth_steps: bool,
}

/// `target = Σ cofactors[i]·generators[i] + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub target: Polynomial,
    /// Absent when the basis was computed without cofactor tracking.
    pub cofactors: Option<Vec<Polynomial>>,
    pub remainder: Polynomial,
}

impl Certificate {
    /// Re-checks the defining identity exactly.
    pub fn verify(&self, ideal: &Ideal) -> bool {
        let Some(cof) = &self.cofactors else { return false };
        if cof.len() != ideal.generators().len() {
            return false;
        }
        let mut acc = self.remainder.clone();
        for (c, g) in cof.iter().zip(ideal.generators()) {
            acc = &acc + &(c * g);
        }
        acc == self.target
    }

    /// All cofactor denominators are {2,3}-smooth.
    pub fn is_smooth(&self) -> bool {
        self.cofactors.as_ref().is_some_and(|c| c.iter().all(|p| p.has_smooth_denominators()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub member_over_q: bool,
    pub certificate: Certificate,
    /// Membership holds with coefficients in Z[1/6] (certified by the cofactors).
    pub smooth_over_z16: bool,
}

/// Result of checking that every generator of one ideal lies in another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionReport {
    /// Indices of generators that are not members, with their normal forms.
    pub failures: Vec<(usize, Polynomial)>,
    /// Basis computation only divided by {2,3}-smooth units and all inputs had
    /// smooth denominators, so memberships hold over Z[1/6].
    pub smooth: bool,
}

impl InclusionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    groebner_basis_with(ideal, &GbOptions { order, ..GbOptions::default() })
}

static GLOBAL_DEGREE_CAP: AtomicU32 = AtomicU32::new(0);

/// Caps every subsequent Groebner computation in the process, on top of any
/// per-call `degree_cap`. `None` lifts the cap.
pub fn set_global_degree_cap(cap: Option<u32>) {
    GLOBAL_DEGREE_CAP.store(cap.unwrap_or(0), AtomicOrdering::Relaxed);
}

pub fn global_degree_cap() -> Option<u32> {
    match GLOBAL_DEGREE_CAP.load(AtomicOrdering::Relaxed) {
        0 => None,
        c => Some(c),
    }
}

pub fn groebner_basis_with(ideal: &Ideal, opts: &GbOptions) -> Result<GroebnerBasis, GroebnerError> {
    let cap = match (opts.degree_cap, global_degree_cap()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let opts = &GbOptions { degree_cap: cap, ..opts.clone() };
    let ctx = OrderCtx::new(ideal.ring(), &opts.order);
    let limit = match (opts.degree_cap, opts.truncate_at) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let run = Buchberger::new(&ctx, ideal.ring(), opts.track_cofactors, ideal.generators().len())
        .run(ideal.generators(), limit);
    if let (Some(cap), Some(_)) = (opts.degree_cap, run.truncated_at) {
        if opts.truncate_at.is_none_or(|t| t > cap) {
            return Err(GroebnerError::DegreeCapExceeded { cap });
        }
    }
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        order: opts.order.clone(),
        ctx,
        elems: run.basis,
        valid_through: run.truncated_at,
        smooth_steps: run.smooth_steps,
    })
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis polynomials, sorted by increasing leading monomial.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|e| engine::from_terms(&self.ctx, self.ideal.ring(), &e.terms)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| self.ctx.decode(e.lm())).collect()
    }

    /// Cofactors of basis element `i` in terms of the ideal's generators.
    pub fn basis_cofactors(&self, i: usize) -> Option<&[Polynomial]> {
        self.elems.get(i)?.cof.as_deref()
    }

    /// `None` for a complete basis, otherwise the last degree it is valid in.
    pub fn valid_through(&self) -> Option<u32> {
        self.valid_through
    }

    pub fn is_complete(&self) -> bool {
        self.valid_through.is_none()
    }

    /// True when every leading coefficient inverted during the computation
    /// was a unit of Z[1/6].
    pub fn smooth_steps(&self) -> bool {
        self.smooth_steps
    }

    pub fn tracks_cofactors(&self) -> bool {
        self.elems.iter().all(|e| e.cof.is_some())
    }

    fn check_input(&self, p: &Polynomial) -> Result<(), GroebnerError> {
        if !p.ring().same_as(self.ideal.ring()) {
            return Err(PolyError::RingMismatch.into());
        }
        if let (Some(valid), Some(needed)) = (self.valid_through, p.max_degree()) {
            if needed > valid {
                return Err(GroebnerError::TruncatedBasis { valid, needed });
            }
        }
        Ok(())
    }

    /// Remainder of `p` on division by the basis.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        self.check_input(p)?;
        let (rem, _) = engine::reduce(&self.ctx, &self.elems, None, engine::to_terms(&self.ctx, p), false);
        Ok(engine::from_terms(&self.ctx, self.ideal.ring(), &rem))
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// Normal form with a certificate expressed in the ideal's generators.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Certificate, GroebnerError> {
        self.check_input(p)?;
        let ring = self.ideal.ring();
        let track = self.tracks_cofactors();
        let (rem, quots) = engine::reduce(&self.ctx, &self.elems, None, engine::to_terms(&self.ctx, p), track);
        let remainder = engine::from_terms(&self.ctx, ring, &rem);
        let cofactors = track.then(|| {
            let mut acc = vec![Polynomial::zero(ring); self.ideal.generators().len()];
            for (j, q) in collect_quotients(&self.ctx, ring, quots) {
                let cj = self.elems[j].cof.as_ref().expect("tracked basis");
                for (x, y) in acc.iter_mut().zip(cj) {
                    *x = &*x + &(&q * y);
                }
            }
            acc
        });
        Ok(Certificate { target: p.clone(), cofactors, remainder })
    }

    /// Checks every generator of `other` for membership.
    pub fn includes(&self, other: &Ideal) -> Result<InclusionReport, GroebnerError> {
        let mut failures = Vec::new();
        let mut smooth = self.smooth_steps && self.ideal.generators().iter().all(|g| g.has_smooth_denominators());
        for (i, g) in other.generators().iter().enumerate() {
            let r = self.reduce(g)?;
            smooth &= g.has_smooth_denominators();
            if !r.is_zero() {
                failures.push((i, r));
            }
        }
        Ok(InclusionReport { failures, smooth })
    }

    /// Set of leading monomials, for Hilbert-function style comparisons.
    pub fn leading_set(&self) -> BTreeSet<Monomial> {
        self.leading_monomials().into_iter().collect()
    }
}

/// Normal form of `p` against `gb`.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Certificate, GroebnerError> {
    gb.normal_form(p)
}

/// Membership with a certificate, from a basis truncated at the degree of `p`.
pub fn is_member(p: &Polynomial, ideal: &Ideal) -> Result<MembershipReport, GroebnerError> {
    if !p.ring().same_as(ideal.ring()) {
        return Err(PolyError::RingMismatch.into());
    }
    if !p.is_homogeneous() {
        return Err(GroebnerError::InhomogeneousInput);
    }
    let d = p.degree().unwrap_or(0);
    let gb =
        groebner_basis_with(ideal, &GbOptions { truncate_at: Some(d), track_cofactors: true, ..GbOptions::default() })?;
    let certificate = gb.normal_form(p)?;
    let member_over_q = certificate.remainder.is_zero();
    let smooth_over_z16 = member_over_q && certificate.is_smooth();
    Ok(MembershipReport { member_over_q, certificate, smooth_over_z16 })
}

/// Mutual inclusion, each side checked with a basis of the other truncated
/// at the largest generator degree needed.
pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool, GroebnerError> {
    if !i.ring().same_as(j.ring()) {
        return Err(PolyError::RingMismatch.into());
    }
    let contained = |a: &Ideal, b: &Ideal| -> Result<bool, GroebnerError> {
        if a.is_zero() {
            return Ok(true);
        }
        let gb = groebner_basis_with(b, &GbOptions { truncate_at: Some(a.max_degree()), ..GbOptions::default() })?;
        Ok(gb.includes(a)?.holds())
    };
    Ok(contained(i, j)? && contained(j, i)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[(&str, u32)]) -> GradedRing {
        GradedRing::new(names.iter().map(|(n, d)| (n.to_string(), *d))).unwrap()
    }

    fn ideal(r: &GradedRing, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| r.parse(g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn variables_are_their_own_basis() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let gb = groebner_basis(&ideal(&r, &["x", "y"]), MonomialOrder::Grevlex).unwrap();
        let mut b: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
        b.sort();
        assert_eq!(b, ["x", "y"]);
    }

    #[test]
    fn small_reduced_basis() {
        let r = ring(&[("x", 1), ("y", 1)]);
        let gb = groebner_basis(&ideal(&r, &["x^2 + x*y", "y^2"]), MonomialOrder::Grevlex).unwrap();
        let b: Vec<String> = gb.basis().iter().map(|p| p.to_string()).collect();
        assert_eq!(b, ["y^2", "x^2 + x*y"]);
    }

    #[test]
    fn cofactor_of_a2() {
        let r = ring(&[("lambda1", 1), ("lambda2", 2)]);
        let i = ideal(&r, &["24*lambda1^2 - 48*lambda2"]);
        let rep = is_member(&r.parse("lambda2 - lambda1^2/2").unwrap(), &i).unwrap();
        assert!(rep.member_over_q && rep.smooth_over_z16);
        assert_eq!(rep.certificate.cofactors.as_ref().unwrap()[0], r.parse("-1/48").unwrap());
        assert!(rep.certificate.verify(&i));
        let zero = is_member(&Polynomial::zero(&r), &i).unwrap();
        assert!(zero.member_over_q && zero.smooth_over_z16);
    }

    #[test]
    fn equality_up_to_redundancy() {
        let r = ring(&[("x", 1), ("y", 1)]);
        assert!(ideal_equal(&ideal(&r, &["x"]), &ideal(&r, &["x", "x^2"])).unwrap());
        assert!(ideal_equal(&ideal(&r, &["x*y", "x^2 - y^2"]), &ideal(&r, &["3*x^2 - 3*y^2", "-x*y/2"])).unwrap());
        assert!(!ideal_equal(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let r = ring(&[("x", 1), ("y", 1), ("z", 1)]);
        let i = ideal(&r, &["x^2 - y*z", "x*y - z^2"]);
        let opts = GbOptions { degree_cap: Some(2), ..GbOptions::default() };
        assert_eq!(groebner_basis_with(&i, &opts).unwrap_err(), GroebnerError::DegreeCapExceeded { cap: 2 });
        let full = groebner_basis(&i, MonomialOrder::Grevlex).unwrap();
        assert!(full.is_complete());
    }

    #[test]
    fn truncated_basis_refuses_high_degree() {
        let r = ring(&[("x", 1), ("y", 1), ("z", 1)]);
        let i = ideal(&r, &["x^2 - y*z", "x*y - z^2"]);
        let gb = groebner_basis_with(&i, &GbOptions { truncate_at: Some(2), ..Default::default() }).unwrap();
        assert_eq!(gb.valid_through(), Some(2));
        assert!(matches!(gb.reduce(&r.parse("x^3").unwrap()), Err(GroebnerError::TruncatedBasis { .. })));
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let r = ring(&[("x", 1)]);
        let err = Ideal::new(&r, vec![r.parse("x + x^2").unwrap()]).unwrap_err();
        assert_eq!(err, GroebnerError::NotHomogeneous { index: 0 });
    }
}

//! Colon ideals, zero-divisor tests and division in quotient rings.

use super::basis::{groebner_basis_with, GbOptions};
use super::{groebner_basis, GroebnerError, Ideal, MonomialOrder};
use crate::poly::{GradedRing, PolyError, Polynomial, RingMap};

/// `(I : f) = {a : a·f ∈ I}`.
///
/// Computed as a module syzygy problem encoded in two tag variables `u`, `v`
/// with `u² = uv = v² = 0`: the ideal `⟨f·u + v, g_i·u⟩` is eliminated with
/// respect to `u`, and the basis elements `a·v` give the quotient.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring();
    if !f.ring().same_as(ring) {
        return Err(PolyError::RingMismatch.into());
    }
    let df = f.degree().ok_or(GroebnerError::InhomogeneousInput)?;
    let n = ring.nvars();
    let mut names: Vec<(String, u32)> = ring.variables().iter().map(|v| (v.name.clone(), v.degree)).collect();
    let fresh = |base: &str| {
        let mut s = base.to_string();
        while ring.index_of(&s).is_some() {
            s.push('\'');
        }
        s
    };
    names.push((fresh("u"), 1));
    names.push((fresh("v"), df + 1));
    let big = GradedRing::new(names)?;
    let up = RingMap::new(ring, &big, (0..n).map(|i| Polynomial::variable(&big, i)).collect())?;
    let u = Polynomial::variable(&big, n);
    let v = Polynomial::variable(&big, n + 1);
    let mut gens = vec![&(&up.apply(f)? * &u) + &v];
    for g in ideal.generators() {
        gens.push(&up.apply(g)? * &u);
    }
    gens.push(&u * &u);
    gens.push(&u * &v);
    gens.push(&v * &v);
    let gb = groebner_basis(&Ideal::new(&big, gens)?, MonomialOrder::Elimination(vec![n]))?;
    let mut out = Vec::new();
    for b in gb.basis() {
        let linear_in_v = b.terms().iter().all(|(m, _)| {
            let e = m.exponents();
            e[n] == 0 && e[n + 1] == 1
        });
        if linear_in_v {
            let terms = b
                .terms()
                .iter()
                .map(|(m, c)| (crate::poly::Monomial::from_exponents(m.exponents()[..n].to_vec()), c.clone()));
            out.push(Polynomial::from_terms(ring, terms));
        }
    }
    Ideal::new(ring, out)
}

/// Whether multiplication by `f` is injective on `R/I`, i.e. `(I : f) = I`.
pub fn is_nonzerodivisor(f: &Polynomial, ideal: &Ideal) -> Result<bool, GroebnerError> {
    if f.is_zero() {
        return Ok(false);
    }
    let q = ideal_quotient(ideal, f)?;
    if q.is_zero() {
        return Ok(true);
    }
    let gb = groebner_basis_with(ideal, &GbOptions { truncate_at: Some(q.max_degree()), ..GbOptions::default() })?;
    Ok(gb.includes(&q)?.holds())
}

/// Some `w` with `u ≡ f·w (mod I)`, read off as the cofactor of `f` in a
/// membership certificate of `u` in `I + ⟨f⟩`.
pub fn divide_in_quotient(u: &Polynomial, f: &Polynomial, ideal: &Ideal) -> Result<Polynomial, GroebnerError> {
    let ring = ideal.ring();
    if u.is_zero() {
        return Ok(Polynomial::zero(ring));
    }
    let du = u.degree().ok_or(GroebnerError::InhomogeneousInput)?;
    let df = f.degree().ok_or(GroebnerError::InhomogeneousInput)?;
    if df > du {
        return Err(GroebnerError::NotDivisible(format!("degree {du} is below the divisor degree {df}")));
    }
    let ext = ideal.with_generator(f.clone())?;
    let gb =
        groebner_basis_with(&ext, &GbOptions { truncate_at: Some(du), track_cofactors: true, ..Default::default() })?;
    let cert = gb.normal_form(u)?;
    if !cert.remainder.is_zero() {
        return Err(GroebnerError::NotDivisible(format!("remainder {}", cert.remainder)));
    }
    let cof = cert.cofactors.expect("tracked basis");
    Ok(cof.last().cloned().unwrap_or_else(|| Polynomial::zero(ring)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> GradedRing {
        GradedRing::new([("x", 1), ("y", 1)]).unwrap()
    }

    #[test]
    fn x_divides_zero_modulo_xy() {
        let r = xy();
        let i = Ideal::new(&r, vec![r.parse("x*y").unwrap()]).unwrap();
        let q = ideal_quotient(&i, &r.parse("x").unwrap()).unwrap();
        assert!(super::super::ideal_equal(&q, &Ideal::new(&r, vec![r.parse("y").unwrap()]).unwrap()).unwrap());
        assert!(!is_nonzerodivisor(&r.parse("x").unwrap(), &i).unwrap());
        assert!(is_nonzerodivisor(&r.parse("x + y").unwrap(), &i).unwrap());
    }

    #[test]
    fn variable_in_a_domain() {
        let r = GradedRing::new([("c1", 1), ("c2", 2), ("c3", 3)]).unwrap();
        assert!(is_nonzerodivisor(&r.parse("c3").unwrap(), &Ideal::zero(&r)).unwrap());
        assert!(!is_nonzerodivisor(&Polynomial::zero(&r), &Ideal::zero(&r)).unwrap());
    }

    #[test]
    fn trivial_divisions() {
        let r = xy();
        let f = r.parse("x + 2*y").unwrap();
        let zero = Ideal::zero(&r);
        assert_eq!(divide_in_quotient(&f, &f, &zero).unwrap(), Polynomial::one(&r));
        assert!(divide_in_quotient(&Polynomial::zero(&r), &f, &zero).unwrap().is_zero());
        let u = r.parse("x^2 + 2*x*y").unwrap();
        assert_eq!(divide_in_quotient(&u, &f, &zero).unwrap(), r.parse("x").unwrap());
        assert!(divide_in_quotient(&r.parse("y^2").unwrap(), &f, &zero).is_err());
    }
}

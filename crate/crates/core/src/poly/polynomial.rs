use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{grevlex_cmp, GradedRing, Monomial, PolyError};
use crate::Rational;

/// Sparse polynomial; terms are kept in strictly descending grevlex order
/// with nonzero coefficients, so equal polynomials have equal term lists.
#[derive(Clone)]
pub struct Polynomial {
    ring: GradedRing,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(ring: &GradedRing) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &GradedRing, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::one(ring.nvars()), c));
        }
        p
    }

    pub fn one(ring: &GradedRing) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn variable(ring: &GradedRing, i: usize) -> Self {
        let mut e = vec![0; ring.nvars()];
        e[i] = 1;
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::from_exponents(e), Rational::one())] }
    }

    pub fn monomial(ring: &GradedRing, m: Monomial, c: Rational) -> Self {
        Self::from_terms(ring, [(m, c)])
    }

    /// Collects terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: &GradedRing, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.exponents().len(), ring.nvars(), "monomial length does not match ring");
            *acc.entry(m).or_insert_with(Rational::zero) += &c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &GradedRing, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let w = ring.weights();
        terms.sort_by(|a, b| grevlex_cmp(w, b.0.exponents(), a.0.exponents()));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds from terms already sorted descending and free of zeros.
    pub(crate) fn from_sorted_unchecked(ring: &GradedRing, terms: Vec<(Monomial, Rational)>) -> Self {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(n, _)| n == m).map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    /// Weighted degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        let d = self.terms.first()?.0.degree(w);
        self.terms.iter().all(|(m, _)| m.degree(w) == d).then_some(d)
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        self.terms.iter().map(|(m, _)| m.degree(w)).max()
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let w = self.ring.weights();
        let mut out: BTreeMap<u32, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree(w)).or_default().push((m.clone(), c.clone()));
        }
        out.into_iter().map(|(d, t)| (d, Polynomial::from_sorted_unchecked(&self.ring, t))).collect()
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                used[i] |= e > 0;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails if a remainder is left.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::InexactDivision)?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term().cloned() {
            if !lm.divides(&m) {
                return Err(PolyError::InexactDivision);
            }
            let q = lm.quotient_of(&m);
            let coef = &c / lc;
            rest = &rest - &divisor.mul_term(&q, &coef);
            quotient.push((q, coef));
        }
        Ok(Polynomial::from_sorted_unchecked(&self.ring, quotient))
    }

    /// True when every coefficient has a {2,3}-smooth denominator.
    pub fn has_smooth_denominators(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.has_smooth_denominator())
    }

    /// Rewrites into `target` by matching variable names.
    pub fn embed(&self, target: &GradedRing) -> Result<Polynomial, PolyError> {
        let map: Vec<Option<usize>> = self.ring.variables().iter().map(|v| target.index_of(&v.name)).collect();
        for (i, v) in self.ring.variables().iter().enumerate() {
            if let Some(j) = map[i] {
                if target.degree_of(j) != v.degree {
                    return Err(PolyError::DegreeMismatch(format!("variable `{}` changes degree", v.name)));
                }
            }
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => return Err(PolyError::UnknownVariable { name: self.ring.name(i).to_string(), pos: 0 }),
                }
            }
            terms.push((Monomial::from_exponents(e), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    pub(crate) fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert!(self.ring.same_as(&other.ring), "polynomials live in different rings");
        let w = self.ring.weights();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match grevlex_cmp(w, a[i].0.exponents(), b[j].0.exponents()) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial::from_sorted_unchecked(&self.ring, out)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        self.merge(&rhs, false)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self.merge(&rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.ring.same_as(&rhs.ring), "polynomials live in different rings");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * rhs.len());
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                let c = a * b;
                match acc.get_mut(&m.mul(n)) {
                    Some(x) => *x += &c,
                    None => {
                        acc.insert(m.mul(n), c);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl fmt::Display for Polynomial {
    /// Canonical spelling: descending grevlex, reduced fractions, `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mono = format_monomial(&self.ring, m);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

fn format_monomial(ring: &GradedRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.name(i).to_string()),
            _ => parts.push(format!("{}^{}", ring.name(i), e)),
        }
    }
    parts.join("*")
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> GradedRing {
        GradedRing::new([("lambda1", 1), ("lambda2", 2), ("xi1", 1)]).unwrap()
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(Polynomial::zero(&ring()).to_string(), "0");
    }

    #[test]
    fn d1_expands_to_fixed_spelling() {
        let r = ring();
        let d1 = r.parse("2*xi1*(lambda1 + xi1)*(4*lambda1 + xi1)/9").unwrap();
        assert_eq!(d1.to_string(), "8/9*lambda1^2*xi1 + 10/9*lambda1*xi1^2 + 2/9*xi1^3");
        assert_eq!(d1.degree(), Some(3));
    }

    #[test]
    fn components_split_by_degree() {
        let r = GradedRing::new([("x", 1)]).unwrap();
        let p = r.parse("x + x^2").unwrap();
        let comps = p.homogeneous_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[&1], r.parse("x").unwrap());
        assert_eq!(comps[&2], r.parse("x^2").unwrap());
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let a = r.parse("lambda1 + xi1").unwrap();
        let b = r.parse("lambda1^2 - xi1^2 + lambda2").unwrap();
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
        assert_eq!(b.div_exact(&a), Err(PolyError::InexactDivision));
    }

    #[test]
    fn embedding_by_name() {
        let small = GradedRing::new([("xi1", 1)]).unwrap();
        let p = small.parse("3*xi1^2").unwrap();
        assert_eq!(p.embed(&ring()).unwrap(), ring().parse("3*xi1^2").unwrap());
        assert!(ring().parse("lambda1").unwrap().embed(&small).is_err());
    }
}

use std::collections::HashMap;

use super::{GradedRing, Monomial, PolyError, Polynomial};
use crate::Rational;

/// Degree-preserving ring homomorphism given by the images of the source
/// variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: GradedRing,
    target: GradedRing,
    images: Vec<Polynomial>,
}

impl RingMap {
    pub fn new(source: &GradedRing, target: &GradedRing, images: Vec<Polynomial>) -> Result<Self, PolyError> {
        if images.len() != source.nvars() {
            return Err(PolyError::DegreeMismatch(format!(
                "{} images given for {} variables",
                images.len(),
                source.nvars()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if !img.ring().same_as(target) {
                return Err(PolyError::RingMismatch);
            }
            if !img.is_zero() && img.degree() != Some(source.degree_of(i)) {
                return Err(PolyError::DegreeMismatch(format!(
                    "image of `{}` is not homogeneous of degree {}",
                    source.name(i),
                    source.degree_of(i)
                )));
            }
        }
        Ok(RingMap { source: source.clone(), target: target.clone(), images })
    }

    /// Builds a map from `name -> expression` pairs; unlisted variables are
    /// rejected.
    pub fn from_texts(source: &GradedRing, target: &GradedRing, sends: &[(&str, &str)]) -> Result<Self, PolyError> {
        let mut images: Vec<Option<Polynomial>> = vec![None; source.nvars()];
        for (name, expr) in sends {
            let i =
                source.index_of(name).ok_or_else(|| PolyError::UnknownVariable { name: name.to_string(), pos: 0 })?;
            images[i] = Some(target.parse(expr)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| PolyError::DegreeMismatch(format!("no image for `{}`", source.name(i)))))
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(source, target, images)
    }

    pub fn identity(ring: &GradedRing) -> Self {
        let images = (0..ring.nvars()).map(|i| Polynomial::variable(ring, i)).collect();
        RingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &GradedRing {
        &self.source
    }

    pub fn target(&self) -> &GradedRing {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Option<&Polynomial> {
        self.source.index_of(name).map(|i| &self.images[i])
    }

    /// Applies the homomorphism.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if !p.ring().same_as(&self.source) {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in p.terms() {
            let mut term = Polynomial::constant(&self.target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers.entry((i, e)).or_insert_with(|| self.images[i].pow(e));
                term = &term * pw;
                if term.is_zero() {
                    break;
                }
            }
            for (n, a) in term.into_terms() {
                *acc.entry(n).or_insert_with(Rational::zero) += &a;
            }
        }
        Ok(Polynomial::from_terms(&self.target, acc))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMap) -> Result<RingMap, PolyError> {
        if !self.target.same_as(&other.source) {
            return Err(PolyError::RingMismatch);
        }
        let images = self.images.iter().map(|p| other.apply(p)).collect::<Result<Vec<_>, _>>()?;
        RingMap::new(&self.source, &other.target, images)
    }

    /// Restricts the source to the variables of `sub`, matched by name.
    pub fn restrict_source(&self, sub: &GradedRing) -> Result<RingMap, PolyError> {
        let images = sub
            .variables()
            .iter()
            .map(|v| {
                self.image_of(&v.name)
                    .cloned()
                    .ok_or_else(|| PolyError::UnknownVariable { name: v.name.clone(), pos: 0 })
            })
            .collect::<Result<Vec<_>, _>>()?;
        RingMap::new(sub, &self.target, images)
    }
}

/// `p` with every variable sent to its image under `map`.
pub fn substitute(p: &Polynomial, map: &RingMap) -> Result<Polynomial, PolyError> {
    map.apply(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda1_on_delta1_stratum() {
        let src = GradedRing::new([("lambda1", 1)]).unwrap();
        let tgt = GradedRing::new([("t0", 1), ("t1", 1), ("t", 1)]).unwrap();
        let f = RingMap::from_texts(&src, &tgt, &[("lambda1", "-t - t0 - t1")]).unwrap();
        let img = f.apply(&src.parse("lambda1^2").unwrap()).unwrap();
        assert_eq!(img, tgt.parse("(t + t0 + t1)^2").unwrap());
    }

    #[test]
    fn identity_is_identity() {
        let r = GradedRing::new([("x", 1), ("y", 2)]).unwrap();
        let p = r.parse("x^4 - 3*x^2*y + y^2/7").unwrap();
        assert_eq!(RingMap::identity(&r).apply(&p).unwrap(), p);
    }

    #[test]
    fn rejects_wrong_degree() {
        let src = GradedRing::new([("x", 2)]).unwrap();
        let tgt = GradedRing::new([("t", 1)]).unwrap();
        assert!(matches!(RingMap::from_texts(&src, &tgt, &[("x", "t")]), Err(PolyError::DegreeMismatch(_))));
        assert!(matches!(RingMap::from_texts(&src, &tgt, &[("x", "t^2 + t")]), Err(PolyError::DegreeMismatch(_))));
    }

    #[test]
    fn d1_from_chern_classes() {
        let chern = GradedRing::new([("c1", 1), ("c2", 2), ("s", 1)]).unwrap();
        let hyp = GradedRing::new([("lambda1", 1), ("lambda2", 2), ("xi1", 1)]).unwrap();
        let f = RingMap::from_texts(
            &chern,
            &hyp,
            &[("c1", "-xi1"), ("c2", "lambda2 - (lambda1^2 - xi1^2)/3"), ("s", "-(xi1 + lambda1)/3")],
        )
        .unwrap();
        let d1 = f.apply(&chern.parse("2*s*c1*(c1 - 4*s)").unwrap()).unwrap();
        assert_eq!(d1, hyp.parse("2*xi1*(lambda1 + xi1)*(4*lambda1 + xi1)/9").unwrap());
    }
}

//! Graph-ideal elimination: kernels, images and preimages of ring maps.

use super::{groebner_basis, GroebnerBasis, GroebnerError, Ideal, MonomialOrder};
use crate::poly::{GradedRing, PolyError, Polynomial, RingMap};

/// The graph ideal `⟨x_i − f(x_i)⟩ + J` of a map `f: R → S/J` in the ring
/// `S ⊗ R`, with a Groebner basis eliminating the target variables.
#[derive(Debug, Clone)]
pub struct MapGraph {
    map: RingMap,
    combined: GradedRing,
    to_combined_source: RingMap,
    to_combined_target: RingMap,
    from_combined_source: Vec<usize>,
    gb: GroebnerBasis,
}

impl MapGraph {
    pub fn new(map: &RingMap, modulo: Option<&Ideal>) -> Result<MapGraph, GroebnerError> {
        let (src, tgt) = (map.source(), map.target());
        if let Some(j) = modulo {
            if !j.ring().same_as(tgt) {
                return Err(PolyError::RingMismatch.into());
            }
        }
        let mut names: Vec<(String, u32)> = Vec::new();
        for v in tgt.variables() {
            let mut n = format!("{}'", v.name);
            while src.index_of(&n).is_some() {
                n.push('\'');
            }
            names.push((n, v.degree));
        }
        names.extend(src.variables().iter().map(|v| (v.name.clone(), v.degree)));
        let combined = GradedRing::new(names)?;
        let nt = tgt.nvars();
        let to_combined_target =
            RingMap::new(tgt, &combined, (0..nt).map(|i| Polynomial::variable(&combined, i)).collect())?;
        let to_combined_source =
            RingMap::new(src, &combined, (0..src.nvars()).map(|i| Polynomial::variable(&combined, nt + i)).collect())?;
        let mut gens = Vec::new();
        for (i, img) in map.images().iter().enumerate() {
            let x = Polynomial::variable(&combined, nt + i);
            gens.push(&x - &to_combined_target.apply(img)?);
        }
        if let Some(j) = modulo {
            for g in j.generators() {
                gens.push(to_combined_target.apply(g)?);
            }
        }
        let ideal = Ideal::new(&combined, gens)?;
        let gb = groebner_basis(&ideal, MonomialOrder::Elimination((0..nt).collect()))?;
        Ok(MapGraph {
            map: map.clone(),
            combined,
            to_combined_source,
            to_combined_target,
            from_combined_source: (nt..nt + src.nvars()).collect(),
            gb,
        })
    }

    pub fn map(&self) -> &RingMap {
        &self.map
    }

    fn back_to_source(&self, p: &Polynomial) -> Option<Polynomial> {
        let nt = self.map.target().nvars();
        let src = self.map.source();
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let e = m.exponents();
            if e[..nt].iter().any(|&x| x > 0) {
                return None;
            }
            let exps = self.from_combined_source.iter().map(|&k| e[k]).collect();
            terms.push((crate::poly::Monomial::from_exponents(exps), c.clone()));
        }
        Some(Polynomial::from_terms(src, terms))
    }

    /// Generators of `{p : f(p) ∈ J}`: the basis elements free of target
    /// variables, which form a reduced grevlex basis of the kernel.
    pub fn kernel(&self) -> Result<Ideal, GroebnerError> {
        let gens = self.gb.basis().iter().filter_map(|g| self.back_to_source(g)).collect();
        Ideal::new(self.map.source(), gens)
    }

    /// A preimage of `y` modulo `J`, or `None` if `y` is not in the image.
    /// The preimage is the normal form of `y`, so the choice is canonical.
    pub fn lift(&self, y: &Polynomial) -> Result<Option<Polynomial>, GroebnerError> {
        let nf = self.gb.reduce(&self.to_combined_target.apply(y)?)?;
        Ok(self.back_to_source(&nf))
    }

    /// Whether every target variable lies in the image.
    pub fn is_surjective(&self) -> Result<bool, GroebnerError> {
        for i in 0..self.map.target().nvars() {
            if self.lift(&Polynomial::variable(self.map.target(), i))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn combined_ring(&self) -> &GradedRing {
        &self.combined
    }

    pub fn source_embedding(&self) -> &RingMap {
        &self.to_combined_source
    }
}

/// Generators of the kernel of `f: R → S/J` (`J` may be `None` for a map into
/// the free ring `S`).
pub fn kernel_of_map(map: &RingMap, modulo: Option<&Ideal>) -> Result<Ideal, GroebnerError> {
    MapGraph::new(map, modulo)?.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_zero_kernel() {
        let r = GradedRing::new([("x", 1), ("y", 2)]).unwrap();
        assert!(kernel_of_map(&RingMap::identity(&r), None).unwrap().is_zero());
    }

    #[test]
    fn square_map_is_injective() {
        let src = GradedRing::new([("x", 2)]).unwrap();
        let tgt = GradedRing::new([("t", 1)]).unwrap();
        let f = RingMap::from_texts(&src, &tgt, &[("x", "t^2")]).unwrap();
        let g = MapGraph::new(&f, None).unwrap();
        assert!(g.kernel().unwrap().is_zero());
        assert!(!g.is_surjective().unwrap());
        assert_eq!(g.lift(&tgt.parse("3*t^4").unwrap()).unwrap(), Some(src.parse("3*x^2").unwrap()));
        assert_eq!(g.lift(&tgt.parse("t^3").unwrap()).unwrap(), None);
    }

    #[test]
    fn twisted_cubic_kernel() {
        let src = GradedRing::new([("a", 3), ("b", 3), ("c", 3), ("d", 3)]).unwrap();
        let tgt = GradedRing::new([("s", 1), ("t", 1)]).unwrap();
        let f = RingMap::from_texts(&src, &tgt, &[("a", "s^3"), ("b", "s^2*t"), ("c", "s*t^2"), ("d", "t^3")]).unwrap();
        let k = kernel_of_map(&f, None).unwrap();
        assert_eq!(k.generators().len(), 3);
        for g in k.generators() {
            assert!(f.apply(g).unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_modulo_relations() {
        let src = GradedRing::new([("x", 1), ("y", 1)]).unwrap();
        let tgt = GradedRing::new([("t", 1)]).unwrap();
        let f = RingMap::from_texts(&src, &tgt, &[("x", "t"), ("y", "2*t")]).unwrap();
        let j = Ideal::new(&tgt, vec![tgt.parse("t^3").unwrap()]).unwrap();
        let k = kernel_of_map(&f, Some(&j)).unwrap();
        let expected = Ideal::new(&src, vec![src.parse("y - 2*x").unwrap(), src.parse("x^3").unwrap()]).unwrap();
        assert!(super::super::ideal_equal(&k, &expected).unwrap());
    }
}

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::{parse_polynomial, Monomial, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

#[derive(Debug)]
struct RingData {
    vars: Vec<Variable>,
    weights: Vec<u32>,
    index: HashMap<String, usize>,
}

/// Polynomial ring over the rationals with named, positively weighted
/// variables. Cloning is cheap; equality is structural.
#[derive(Clone)]
pub struct GradedRing(Arc<RingData>);

impl GradedRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Self, PolyError> {
        let mut out = Vec::new();
        let mut index = HashMap::new();
        for (name, degree) in vars {
            let name = name.into();
            if degree == 0 {
                return Err(PolyError::InvalidDegree(name));
            }
            if index.insert(name.clone(), out.len()).is_some() {
                return Err(PolyError::DuplicateVariable(name));
            }
            out.push(Variable { name, degree });
        }
        let weights = out.iter().map(|v| v.degree).collect();
        Ok(GradedRing(Arc::new(RingData { vars: out, weights, index })))
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.0.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.0.weights
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.vars[i].name
    }

    pub fn degree_of(&self, i: usize) -> u32 {
        self.0.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    /// The generator called `name` as a polynomial.
    pub fn var(&self, name: &str) -> Result<Polynomial, PolyError> {
        let i = self.index_of(name).ok_or_else(|| PolyError::UnknownVariable { name: name.to_string(), pos: 0 })?;
        Ok(Polynomial::variable(self, i))
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, PolyError> {
        parse_polynomial(text, self)
    }

    /// A new ring with one more variable appended at the end.
    pub fn extend(&self, name: &str, degree: u32) -> Result<GradedRing, PolyError> {
        let vars = self
            .variables()
            .iter()
            .map(|v| (v.name.clone(), v.degree))
            .chain(std::iter::once((name.to_string(), degree)));
        GradedRing::new(vars)
    }

    pub fn same_as(&self, other: &GradedRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.vars == other.0.vars
    }

    /// All monomials of weighted degree `d`, in descending monomial order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fill(self.weights(), 0, d, &mut exps, &mut out);
        out.sort_by(|a, b| super::grevlex_cmp(self.weights(), b.exponents(), a.exponents()));
        out
    }
}

fn fill(w: &[u32], i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == w.len() {
        if left == 0 {
            out.push(Monomial::from_exponents(exps.clone()));
        }
        return;
    }
    let mut e = 0;
    while e * w[i] <= left {
        exps[i] = e;
        fill(w, i + 1, left - e * w[i], exps, out);
        e += 1;
    }
    exps[i] = 0;
}

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for GradedRing {}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[")?;
        for (i, v) in self.variables().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", v.name, v.degree)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_declarations() {
        assert_eq!(GradedRing::new([("x", 1), ("x", 2)]).unwrap_err(), PolyError::DuplicateVariable("x".into()));
        assert_eq!(GradedRing::new([("x", 0)]).unwrap_err(), PolyError::InvalidDegree("x".into()));
    }

    #[test]
    fn monomial_counts_match_weighted_partitions() {
        let r = GradedRing::new([("a", 1), ("b", 2), ("c", 3)]).unwrap();
        // partitions of 6 into parts 1, 2, 3
        assert_eq!(r.monomials_of_degree(6).len(), 7);
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        for m in r.monomials_of_degree(5) {
            assert_eq!(m.degree(r.weights()), 5);
        }
    }
}

//! Splitting-principle calculus for twisted symmetric powers of bundles of
//! rank at most three, and the top Chern class that cuts out the
//! hyperelliptic locus.

use thiserror::Error;

use crate::poly::{GradedRing, Monomial, PolyError, Polynomial, RingMap};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("rank must be 1, 2 or 3, got {0}")]
    UnsupportedRank(usize),
    #[error("symmetric power must be at least 1")]
    ZeroPower,
    #[error("expected {expected} elementary symmetric values, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("twist symbol {0} is not of degree one")]
    BadTwist(String),
    #[error("root product is not symmetric: leftover term {0}")]
    SymmetryReductionFailed(String),
    #[error("top Chern class quotient is not exact")]
    InexactDivision,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A bundle described by its Chern roots. `elementary[i]` is the value of
/// the `(i+1)`-th elementary symmetric polynomial of the roots in the target
/// ring.
#[derive(Debug, Clone)]
pub struct RootBundle {
    rank: usize,
    elementary: Vec<Polynomial>,
}

impl RootBundle {
    pub fn new(elementary: Vec<Polynomial>) -> Result<RootBundle, ChernError> {
        let rank = elementary.len();
        if !(1..=3).contains(&rank) {
            return Err(ChernError::UnsupportedRank(rank));
        }
        let ring = elementary[0].ring().clone();
        for (i, e) in elementary.iter().enumerate() {
            if !e.ring().same_as(&ring) {
                return Err(PolyError::RingMismatch.into());
            }
            if !e.is_zero() && e.degree() != Some(i as u32 + 1) {
                return Err(PolyError::DegreeMismatch(format!("e{} = {e}", i + 1)).into());
            }
        }
        Ok(RootBundle { rank, elementary })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ring(&self) -> &GradedRing {
        self.elementary[0].ring()
    }
}

/// Tensoring with line bundles: every root is shifted by
/// `Σ multiplicity · symbol`.
#[derive(Debug, Clone, Default)]
pub struct TwistSpec {
    pub factors: Vec<(Polynomial, i64)>,
}

impl TwistSpec {
    pub fn none() -> TwistSpec {
        TwistSpec::default()
    }

    pub fn with(mut self, symbol: Polynomial, multiplicity: i64) -> TwistSpec {
        self.factors.push((symbol, multiplicity));
        self
    }

    fn shift(&self, ring: &GradedRing) -> Result<Polynomial, ChernError> {
        let mut total = Polynomial::zero(ring);
        for (sym, m) in &self.factors {
            if !sym.ring().same_as(ring) {
                return Err(PolyError::RingMismatch.into());
            }
            if !sym.is_zero() && sym.degree() != Some(1) {
                return Err(ChernError::BadTwist(sym.to_string()));
            }
            total = &total + &sym.scale(&Rational::from(*m));
        }
        Ok(total)
    }
}

fn multisets(rank: usize, n: u32) -> Vec<Vec<u32>> {
    // Exponent vectors of length `rank` summing to `n`.
    fn go(rank: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == rank {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=n).rev() {
            prefix.push(k);
            go(rank, n - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rank, n, &mut Vec::new(), &mut out);
    out
}

/// Rewrites a symmetric polynomial in the first `rank` variables of `roots`
/// (any further variables are coefficients) as a polynomial in
/// `e1..e_rank` followed by those coefficient variables, in `sym_ring`.
fn symmetric_reduce(p: &Polynomial, rank: usize, sym_ring: &GradedRing) -> Result<Polynomial, ChernError> {
    let roots = p.ring().clone();
    let n = roots.nvars();
    let elementary: Vec<Polynomial> = (1..=rank)
        .map(|k| {
            let terms = multisets(rank, k as u32).into_iter().filter(|e| e.iter().all(|&x| x <= 1)).map(|e| {
                let mut full = e;
                full.resize(n, 0);
                (Monomial::from_exponents(full), Rational::one())
            });
            Polynomial::from_terms(&roots, terms)
        })
        .collect();
    let mut rest = p.clone();
    let mut out = Vec::new();
    while !rest.is_zero() {
        let (m, c) = rest.terms().iter().max_by(|x, y| x.0.exponents().cmp(y.0.exponents())).cloned().expect("nonzero");
        let e = m.exponents();
        if e[..rank].windows(2).any(|w| w[0] < w[1]) {
            return Err(ChernError::SymmetryReductionFailed(Polynomial::monomial(&roots, m.clone(), c).to_string()));
        }
        // a^i b^j c^k u.. = e1^(i-j) e2^(j-k) e3^k u.. + lower terms
        let mut sym_exp = vec![0u32; sym_ring.nvars()];
        let mut product = Polynomial::monomial(
            &roots,
            Monomial::from_exponents((0..n).map(|i| if i < rank { 0 } else { e[i] }).collect()),
            c.clone(),
        );
        for k in 0..rank {
            let power = e[k] - e.get(k + 1).filter(|_| k + 1 < rank).copied().unwrap_or(0);
            sym_exp[k] = power;
            product = &product * &elementary[k].pow(power);
        }
        sym_exp[rank..].copy_from_slice(&e[rank..]);
        out.push((Monomial::from_exponents(sym_exp), c));
        rest = &rest - &product;
    }
    Ok(Polynomial::from_terms(sym_ring, out))
}

/// Top Chern class of `Symⁿ B ⊗ T`, written in the target ring of `B`: the
/// product over all multisets of `n` roots of (sum of the roots + shift).
pub fn sym_twist_top_chern(b: &RootBundle, n: u32, twist: &TwistSpec) -> Result<Polynomial, ChernError> {
    if n == 0 {
        return Err(ChernError::ZeroPower);
    }
    let rank = b.rank;
    let mut vars: Vec<(String, u32)> = (1..=rank).map(|i| (format!("r{i}"), 1)).collect();
    vars.push(("u".into(), 1));
    let roots = GradedRing::new(vars)?;
    let u = Polynomial::variable(&roots, rank);
    let mut product = Polynomial::one(&roots);
    for ms in multisets(rank, n) {
        let mut factor = u.clone();
        for (i, &k) in ms.iter().enumerate() {
            factor = &factor + &Polynomial::variable(&roots, i).scale(&Rational::from(k as i64));
        }
        product = &product * &factor;
    }
    let mut sym_vars: Vec<(String, u32)> = (1..=rank).map(|i| (format!("e{i}"), i as u32)).collect();
    sym_vars.push(("u".into(), 1));
    let sym_ring = GradedRing::new(sym_vars)?;
    let symmetric = symmetric_reduce(&product, rank, &sym_ring)?;
    let target = b.ring();
    let mut images = b.elementary.clone();
    images.push(twist.shift(target)?);
    Ok(RingMap::new(&sym_ring, target, images)?.apply(&symmetric)?)
}

/// `Q[c1, c2, s]`: Chern classes of the rank-three bundle (with `c3 = 0`)
/// and the twisting line bundle.
pub fn chern_ring() -> GradedRing {
    GradedRing::new([("c1", 1), ("c2", 2), ("s", 1)]).expect("valid ring")
}

/// `Q[lambda1, lambda2, xi1]`.
pub fn lambda_ring() -> GradedRing {
    GradedRing::new([("lambda1", 1), ("lambda2", 2), ("xi1", 1)]).expect("valid ring")
}

/// The change of generators from `c1, c2, s` to `lambda1, lambda2, xi1`.
pub fn change_vars_map() -> RingMap {
    RingMap::from_texts(
        &chern_ring(),
        &lambda_ring(),
        &[("c1", "-xi1"), ("c2", "lambda2 - (lambda1^2 - xi1^2)/3"), ("s", "-(xi1 + lambda1)/3")],
    )
    .expect("valid map")
}

/// Inverse of [`change_vars_map`].
pub fn change_vars_inverse() -> RingMap {
    RingMap::from_texts(
        &lambda_ring(),
        &chern_ring(),
        &[("lambda1", "c1 - 3*s"), ("lambda2", "c2 - 2*s*c1 + 3*s^2"), ("xi1", "-c1")],
    )
    .expect("valid map")
}

pub fn change_vars_h3(p: &Polynomial) -> Result<Polynomial, ChernError> {
    Ok(change_vars_map().apply(p)?)
}

/// The degree-nine class in `Q[lambda1, lambda2, xi1]`:
/// `c_top(S⁻² ⊗ Sym⁴W) / c_top(S⁻² ⊗ det W ⊗ Sym²W)` for `W` of rank three
/// with `c3(W) = 0`. The quotient is taken in `Q[c1, c2, s]`, where it is
/// exact, and then moved to the lambda generators.
pub fn compute_c9() -> Result<Polynomial, ChernError> {
    let ring = chern_ring();
    let w = RootBundle::new(vec![ring.var("c1")?, ring.var("c2")?, Polynomial::zero(&ring)])?;
    let s = ring.var("s")?;
    let numerator = sym_twist_top_chern(&w, 4, &TwistSpec::none().with(s.clone(), -2))?;
    let denominator = sym_twist_top_chern(&w, 2, &TwistSpec::none().with(s, -2).with(ring.var("c1")?, 1))?;
    let quotient = numerator.div_exact(&denominator).map_err(|_| ChernError::InexactDivision)?;
    change_vars_h3(&quotient)
}

/// The value of `c3` forced by `lambda3 = c3 − s·c2 + s²·c1 − s³` and the
/// lambda3 relation on the hyperelliptic locus, as a polynomial in
/// `c1, c2, s`.
pub fn derive_c3_vanishing() -> Result<Polynomial, ChernError> {
    let lambda3_on_h = lambda_ring().parse("(xi1 + lambda1)*(9*lambda2 + (xi1 + lambda1)*(xi1 - 2*lambda1))/27")?;
    c3_defect(&lambda3_on_h)
}

fn c3_defect(lambda3: &Polynomial) -> Result<Polynomial, ChernError> {
    let ring = chern_ring();
    let l3 = change_vars_inverse().apply(lambda3)?;
    Ok(&l3 + &ring.parse("s*c2 - s^2*c1 + s^3")?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank2() -> (GradedRing, RootBundle) {
        let r = GradedRing::new([("c1", 1), ("c2", 2)]).unwrap();
        let b = RootBundle::new(vec![r.var("c1").unwrap(), r.var("c2").unwrap()]).unwrap();
        (r, b)
    }

    #[test]
    fn top_chern_of_the_bundle() {
        let (r, b) = rank2();
        assert_eq!(sym_twist_top_chern(&b, 1, &TwistSpec::none()).unwrap(), r.var("c2").unwrap());
    }

    #[test]
    fn second_symmetric_power() {
        // roots 2a, a+b, 2b
        let (r, b) = rank2();
        assert_eq!(sym_twist_top_chern(&b, 2, &TwistSpec::none()).unwrap(), r.parse("4*c1*c2").unwrap());
    }

    #[test]
    fn twisted_line_bundle() {
        let r = GradedRing::new([("x", 1), ("s", 1)]).unwrap();
        let b = RootBundle::new(vec![r.var("x").unwrap()]).unwrap();
        let t = TwistSpec::none().with(r.var("s").unwrap(), -2);
        assert_eq!(sym_twist_top_chern(&b, 3, &t).unwrap(), r.parse("3*x - 2*s").unwrap());
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let r = GradedRing::new([("a", 1), ("b", 1), ("u", 1)]).unwrap();
        let s = GradedRing::new([("e1", 1), ("e2", 2), ("u", 1)]).unwrap();
        let err = symmetric_reduce(&r.parse("a^2 + u*b").unwrap(), 2, &s).unwrap_err();
        assert!(matches!(err, ChernError::SymmetryReductionFailed(_)));
    }

    #[test]
    fn change_of_variables() {
        let c = chern_ring();
        let l = lambda_ring();
        assert_eq!(change_vars_h3(&c.var("c1").unwrap()).unwrap(), l.parse("-xi1").unwrap());
        let d1 = change_vars_h3(&c.parse("2*s*c1*(c1 - 4*s)").unwrap()).unwrap();
        assert_eq!(d1, l.parse("2*xi1*(lambda1 + xi1)*(4*lambda1 + xi1)/9").unwrap());
        let d2 = change_vars_h3(&c.parse("2*s*c1*(4*s^2 - 2*s*c1 + c2)").unwrap()).unwrap();
        assert_eq!(d2, l.parse("2*xi1*(xi1 + lambda1)*(9*lambda2 + (xi1 + lambda1)^2)/27").unwrap());
        let round = change_vars_map().then(&change_vars_inverse()).unwrap();
        for i in 0..3 {
            assert_eq!(round.images()[i], Polynomial::variable(&c, i));
        }
        let back = change_vars_inverse().then(&change_vars_map()).unwrap();
        for i in 0..3 {
            assert_eq!(back.images()[i], Polynomial::variable(&l, i));
        }
    }

    #[test]
    fn c3_is_forced_to_vanish() {
        assert!(derive_c3_vanishing().unwrap().is_zero());
        let perturbed = lambda_ring()
            .parse("(xi1 + lambda1)*(9*lambda2 + (xi1 + lambda1)*(xi1 - 2*lambda1))/27 + lambda1^3")
            .unwrap();
        assert!(!c3_defect(&perturbed).unwrap().is_zero());
    }

    #[test]
    fn c9_shape() {
        let c9 = compute_c9().unwrap();
        let l = lambda_ring();
        assert_eq!(c9.degree(), Some(9));
        assert_eq!(c9.len(), 30);
        assert_eq!(c9.coefficient(&Monomial::from_exponents(vec![0, 0, 9])), "2912/19683".parse().unwrap());
        assert_eq!(c9.coefficient(&Monomial::from_exponents(vec![1, 4, 0])), Rational::from(384));
        assert!(c9.ring().same_as(&l));
    }
}

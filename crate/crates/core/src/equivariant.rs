//! Torus-equivariant classes on products of projective lines and on the
//! projective space of binary forms of degree `N`: diagonals, pushforwards
//! along `(f, g) ↦ f^k g`, the resulting discriminant ideals, and the
//! classes of forms with a root of high multiplicity.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::groebner::{groebner_basis, is_member, Certificate, GroebnerError, Ideal, MonomialOrder};
use crate::poly::{GradedRing, Monomial, PolyError, Polynomial, RingMap};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error("parameters out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

impl From<PolyError> for EquivariantError {
    fn from(e: PolyError) -> Self {
        EquivariantError::Groebner(e.into())
    }
}

fn out_of_range(msg: impl Into<String>) -> EquivariantError {
    EquivariantError::ParameterOutOfRange(msg.into())
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

fn ratio(numer: BigInt, denom: BigInt) -> Rational {
    Rational::new(numer, denom).expect("factorial denominators are nonzero")
}

fn q(n: BigInt) -> Rational {
    Rational::from(n)
}

/// `Q[h1..hn, tau]` modulo `h_i² + tau·h_i`. With `tau` ordered last the
/// relations are a Groebner basis whose normal forms are multilinear in the
/// `h_i`.
#[derive(Debug, Clone)]
pub struct ProductP1Ring {
    n: usize,
    relations: Ideal,
}

impl ProductP1Ring {
    pub fn new(n: usize) -> ProductP1Ring {
        let mut vars: Vec<(String, u32)> = (1..=n).map(|i| (format!("h{i}"), 1)).collect();
        vars.push(("tau".into(), 1));
        let ring = GradedRing::new(vars).expect("valid ring");
        let tau = Polynomial::variable(&ring, n);
        let gens = (0..n)
            .map(|i| {
                let h = Polynomial::variable(&ring, i);
                &(&h * &h) + &(&tau * &h)
            })
            .collect();
        ProductP1Ring { n, relations: Ideal::new(&ring, gens).expect("homogeneous") }
    }

    pub fn ring(&self) -> &GradedRing {
        self.relations.ring()
    }

    pub fn tau(&self) -> Polynomial {
        Polynomial::variable(self.ring(), self.n)
    }

    /// `h_i` for `1 ≤ i ≤ n`.
    pub fn h(&self, i: usize) -> Polynomial {
        Polynomial::variable(self.ring(), i - 1)
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, EquivariantError> {
        Ok(groebner_basis(&self.relations, MonomialOrder::Grevlex)?.reduce(p)?)
    }

    /// Elementary symmetric polynomial of degree `j` in `h1..hn`.
    pub fn sigma(&self, j: usize) -> Polynomial {
        let ring = self.ring();
        let mut out = Vec::new();
        let mut pick = vec![false; self.n];
        fn go(i: usize, left: usize, pick: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<u32>>) {
            if left == 0 {
                let mut e: Vec<u32> = pick.iter().map(|&b| b as u32).collect();
                e.push(0);
                out.push(e);
                return;
            }
            for k in i..n {
                pick[k] = true;
                go(k + 1, left - 1, pick, n, out);
                pick[k] = false;
            }
        }
        go(0, j, &mut pick, self.n, &mut out);
        Polynomial::from_terms(ring, out.into_iter().map(|e| (Monomial::from_exponents(e), Rational::one())))
    }
}

/// Class of the small diagonal in `(P¹)^k`:
/// `Σ_{j<k} tau^(k-1-j) σ_j(h1..hk)`.
pub fn diagonal_class(k: usize) -> Result<(ProductP1Ring, Polynomial), EquivariantError> {
    if k < 2 {
        return Err(out_of_range(format!("diagonal needs k ≥ 2, got {k}")));
    }
    let p1 = ProductP1Ring::new(k);
    let tau = p1.tau();
    let mut total = Polynomial::zero(p1.ring());
    for j in 0..k {
        total = &total + &(&tau.pow((k - 1 - j) as u32) * &p1.sigma(j));
    }
    Ok((p1, total))
}

/// The diagonal as the product of the `k-1` hypersurfaces `h_i + h_{i+1} + tau`,
/// reduced to multilinear normal form.
pub fn diagonal_product_form(k: usize) -> Result<Polynomial, EquivariantError> {
    let p1 = ProductP1Ring::new(k);
    let tau = p1.tau();
    let mut prod = Polynomial::one(p1.ring());
    for i in 1..k {
        prod = &prod * &(&(&p1.h(i) + &p1.h(i + 1)) + &tau);
    }
    p1.normal_form(&prod)
}

/// `Q[tau, h0]`; `h_i` stands for `h0 + i·tau`.
pub fn projective_ring() -> GradedRing {
    GradedRing::new([("tau", 1), ("h0", 1)]).expect("valid ring")
}

/// `h_i = h0 + i·tau`.
pub fn h(i: i64) -> Polynomial {
    let r = projective_ring();
    &r.var("h0").expect("h0") + &r.var("tau").expect("tau").scale(&Rational::from(i))
}

/// `h_0 h_1 ⋯ h_{n-1}` (one for `n ≤ 0`).
pub fn h_product(n: i64) -> Polynomial {
    (0..n).fold(Polynomial::one(&projective_ring()), |acc, i| &acc * &h(i))
}

fn tau_pow(e: i64) -> Polynomial {
    projective_ring().var("tau").expect("tau").pow(e as u32)
}

/// `α_l^(k,d)`: number-weighted compositions of `l` into `d` parts in
/// `[0, k-1]`, each part `j` weighted by `C(k, j)`.
pub fn alpha(k: i64, d: i64, l: i64) -> BigInt {
    // dp over parts
    let mut ways = vec![BigInt::zero(); (l.max(0) + 1) as usize];
    if l < 0 {
        return BigInt::zero();
    }
    ways[0] = BigInt::one();
    for _ in 0..d {
        let mut next = vec![BigInt::zero(); ways.len()];
        for (sum, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for j in 0..k {
                let t = sum + j as usize;
                if t < next.len() {
                    next[t] += w * binomial(k, j);
                }
            }
        }
        ways = next;
    }
    ways[l as usize].clone()
}

/// `π_{r,*}(h_0 ⋯ h_m)` in `Q[tau, h0]`; `m = -1` gives `π_{r,*}(1)`.
pub fn pushforward_pi_r(n: i64, k: i64, r: i64, m: i64) -> Result<Polynomial, EquivariantError> {
    if k < 1 || r < 1 || k * r > n {
        return Err(out_of_range(format!("need 1 ≤ r ≤ N/k, got N={n}, k={k}, r={r}")));
    }
    if m < -1 || m > r - 1 {
        return Err(out_of_range(format!("need -1 ≤ m ≤ r-1, got m={m}, r={r}")));
    }
    let d = r - (m + 1);
    let denom = factorial((n - k * r) as u64) * factorial(d as u64);
    let mut total = Polynomial::zero(&projective_ring());
    for l in 0..=d * (k - 1) {
        let a = alpha(k, d, l);
        if a.is_zero() {
            continue;
        }
        let beta = ratio(factorial((n - (m + 1) * k - l) as u64), denom.clone());
        let coef = &q(a) * &beta;
        let term = &tau_pow(d * (k - 1) - l) * &h_product((m + 1) * k + l);
        total = &total + &term.scale(&coef);
    }
    Ok(total)
}

/// The ideal generated by `π_{1,*}(1)` and `π_{1,*}(h0)` in `Q[tau, h0]`.
#[derive(Debug, Clone)]
pub struct DiscriminantIdeal {
    pub n: i64,
    pub k: i64,
    pub push_one: Polynomial,
    pub push_h0: Polynomial,
}

impl DiscriminantIdeal {
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&projective_ring(), vec![self.push_one.clone(), self.push_h0.clone()]).expect("homogeneous")
    }
}

pub fn discriminant_ideal(n: i64, k: i64) -> Result<DiscriminantIdeal, EquivariantError> {
    if k < 1 || k > n {
        return Err(out_of_range(format!("need 1 ≤ k ≤ N, got N={n}, k={k}")));
    }
    Ok(DiscriminantIdeal { n, k, push_one: pushforward_pi_r(n, k, 1, -1)?, push_h0: pushforward_pi_r(n, k, 1, 0)? })
}

/// `Γ_t = (N-t)!/(N-2k+1)! · tau^(2(k-1)-t) · h_0 ⋯ h_{t-1}`.
pub fn gamma(n: i64, k: i64, t: i64) -> Result<Polynomial, EquivariantError> {
    if n < 2 * k - 1 || t < 0 || t > k - 1 {
        return Err(out_of_range(format!("Γ needs N ≥ 2k-1 and 0 ≤ t ≤ k-1, got N={n}, k={k}, t={t}")));
    }
    let c = ratio(factorial((n - t) as u64), factorial((n - 2 * k + 1) as u64));
    Ok((&tau_pow(2 * (k - 1) - t) * &h_product(t)).scale(&c))
}

/// Outcome of one identity check. `witness` is zero when the identity holds
/// and otherwise the defect (or the normal form of a non-member).
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
    pub witness: Polynomial,
    pub certificate: Option<Certificate>,
    /// Integer identities carry their two sides here.
    pub numbers: Option<(BigInt, BigInt)>,
}

fn polynomial_identity(name: &str, lhs: Polynomial, rhs: Polynomial) -> IdentityCheck {
    let witness = &lhs - &rhs;
    IdentityCheck { name: name.to_string(), holds: witness.is_zero(), witness, certificate: None, numbers: None }
}

fn number_identity(name: &str, lhs: BigInt, rhs: BigInt) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        holds: lhs == rhs,
        witness: Polynomial::zero(&projective_ring()),
        certificate: None,
        numbers: Some((lhs, rhs)),
    }
}

fn membership(name: &str, p: Polynomial, ideal: &Ideal) -> Result<IdentityCheck, EquivariantError> {
    let report = is_member(&p, ideal)?;
    let holds = report.member_over_q;
    Ok(IdentityCheck {
        name: name.to_string(),
        holds,
        witness: report.certificate.remainder.clone(),
        certificate: Some(report.certificate),
        numbers: None,
    })
}

/// Named identities of the discriminant calculus. Parameters, in order:
///
/// * `C09` `[n, m]`, `n ≤ m`: expansion of `h_0²⋯h_{n-1}² h_n⋯h_{m-1}`.
/// * `C10` `[k, m, N]`: alternating binomial sum.
/// * `C11` `[N, k, t]`: `h_0⋯h_{t-1} π_{1,*}(1)` modulo the discriminant ideal.
/// * `C12` `[N, k, t]`: `Γ_t` lies in the discriminant ideal.
/// * `C14` `[k, r, l]`: composition count equals `C(rk, l)` for `l ≤ k-1`.
/// * `C08` `[N, k, r, m]`: `π_{r,*}(h_0⋯h_m)` lies in the ideal for `m ≥ 0`.
/// * `C15` `[N, k, r]`: `π_{r,*}(1)` lies in the ideal for `r ≥ 2`.
pub fn verify_appendix_identity(name: &str, params: &[i64]) -> Result<IdentityCheck, EquivariantError> {
    let want = |n: usize| {
        if params.len() == n {
            Ok(())
        } else {
            Err(out_of_range(format!("{name} takes {n} parameters, got {}", params.len())))
        }
    };
    match name {
        "C09" => {
            want(2)?;
            let (n, m) = (params[0], params[1]);
            if n < 0 || n > m {
                return Err(out_of_range(format!("C09 needs 0 ≤ n ≤ m, got n={n}, m={m}")));
            }
            let lhs = &h_product(n) * &h_product(m);
            let mut rhs = Polynomial::zero(&projective_ring());
            for s in 0..=n {
                let sign = if s % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let c = sign * factorial(s as u64) * binomial(n, s) * binomial(m, s);
                rhs = &rhs + &(&tau_pow(s) * &h_product(m + n - s)).scale(&q(c));
            }
            Ok(polynomial_identity(name, lhs, rhs))
        }
        "C10" => {
            want(3)?;
            let (k, m, n) = (params[0], params[1], params[2]);
            if k < 0 || m < 0 || k > n || m > n {
                return Err(out_of_range(format!("C10 needs 0 ≤ k, m ≤ N, got k={k}, m={m}, N={n}")));
            }
            let mut lhs = BigInt::zero();
            for l in 0..k {
                let term = binomial(m, l) * binomial(n - l, k - 1 - l);
                if l % 2 == 0 {
                    lhs += term;
                } else {
                    lhs -= term;
                }
            }
            Ok(number_identity(name, lhs, binomial(n - m, k - 1)))
        }
        "C11" => {
            want(3)?;
            let (n, k, t) = (params[0], params[1], params[2]);
            if t < 0 || t > k - 1 || n < k + t {
                return Err(out_of_range(format!("C11 needs 0 ≤ t ≤ k-1 and N ≥ k+t, got N={n}, k={k}, t={t}")));
            }
            let di = discriminant_ideal(n, k)?;
            let lhs = &h_product(t) * &di.push_one;
            let mut rhs = Polynomial::zero(&projective_ring());
            for f in 0..k {
                let c = ratio(factorial((n - f - t) as u64) * binomial(k, f), factorial((n - k - t) as u64));
                rhs = &rhs + &(&tau_pow(k - 1 - f) * &h_product(t + f)).scale(&c);
            }
            membership(name, &lhs - &rhs, &di.ideal())
        }
        "C12" => {
            want(3)?;
            let (n, k, t) = (params[0], params[1], params[2]);
            let g = gamma(n, k, t)?;
            membership(name, g, &discriminant_ideal(n, k)?.ideal())
        }
        "C14" => {
            want(3)?;
            let (k, r, l) = (params[0], params[1], params[2]);
            if k < 1 || r < 0 || l < 0 || l > k - 1 {
                return Err(out_of_range(format!("C14 needs k ≥ 1 and 0 ≤ l ≤ k-1, got k={k}, r={r}, l={l}")));
            }
            Ok(number_identity(name, alpha(k, r, l), binomial(r * k, l)))
        }
        "C08" => {
            want(4)?;
            let (n, k, r, m) = (params[0], params[1], params[2], params[3]);
            if m < 0 {
                return Err(out_of_range("C08 needs m ≥ 0"));
            }
            let p = pushforward_pi_r(n, k, r, m)?;
            membership(name, p, &discriminant_ideal(n, k)?.ideal())
        }
        "C15" => {
            want(3)?;
            let (n, k, r) = (params[0], params[1], params[2]);
            if r < 2 {
                return Err(out_of_range("C15 needs r ≥ 2"));
            }
            let p = pushforward_pi_r(n, k, r, -1)?;
            membership(name, p, &discriminant_ideal(n, k)?.ideal())
        }
        other => Err(EquivariantError::UnknownIdentity(other.to_string())),
    }
}

/// Membership of `Γ_0 / 2` in the discriminant ideal with a certificate
/// whose denominators are {2,3}-smooth.
pub fn gamma0_half(n: i64, k: i64) -> Result<IdentityCheck, EquivariantError> {
    let g = gamma(n, k, 0)?.scale(&ratio(BigInt::one(), BigInt::from(2)));
    let mut check = membership("C13", g, &discriminant_ideal(n, k)?.ideal())?;
    check.holds = check.holds && check.certificate.as_ref().is_some_and(Certificate::is_smooth);
    Ok(check)
}

/// Torus weights for `tau` and `h0` as linear forms in `t0, t1`.
#[derive(Debug, Clone)]
pub struct WeightConvention {
    pub tau: Polynomial,
    pub h0: Polynomial,
}

/// `Q[t0, t1]`.
pub fn torus_ring() -> GradedRing {
    GradedRing::new([("t0", 1), ("t1", 1)]).expect("valid ring")
}

impl WeightConvention {
    /// The convention for forms of degree `N` on the separating-node
    /// stratum: `tau ↦ t1 − t0`, `h0 ↦ 2t0 + (2 − N)t1`. It was fixed once
    /// against three known restrictions and is not tuned per call.
    pub fn frozen(n: i64) -> WeightConvention {
        let r = torus_ring();
        WeightConvention {
            tau: r.parse("t1 - t0").expect("valid"),
            h0: r.parse(&format!("2*t0 + ({})*t1", 2 - n)).expect("valid"),
        }
    }

    fn map(&self) -> Result<RingMap, EquivariantError> {
        for p in [&self.tau, &self.h0] {
            if p.degree() != Some(1) {
                return Err(EquivariantError::DegreeMismatch(format!("weight {p} is not linear")));
            }
        }
        Ok(RingMap::new(&projective_ring(), self.tau.ring(), vec![self.tau.clone(), self.h0.clone()])?)
    }
}

/// Class of forms of degree `N` with a root of multiplicity at least `k`,
/// evaluated under a weight convention.
pub fn multiple_root_class(n: i64, k: i64, weights: &WeightConvention) -> Result<Polynomial, EquivariantError> {
    let p = pushforward_pi_r(n, k, 1, -1)?;
    Ok(weights.map()?.apply(&p)?)
}

/// `Q[h14, k, c1, c2, c3]`.
pub fn quartic_ring() -> GradedRing {
    GradedRing::new([("h14", 1), ("k", 1), ("c1", 1), ("c2", 2), ("c3", 3)]).expect("valid ring")
}

/// Class of an `A_n` singularity at the marked point of a plane quartic:
/// `C_n · 2(h+k−c1)(h+4k)((h+3k)² − (c1+k)(h+2k) + c2)` with
/// `C_n = Π_{3≤m≤n} (−m·c1 + (2m−1)/2·h + (4−m)k)`.
pub fn an_class_quartic(n: i64) -> Result<Polynomial, EquivariantError> {
    if !(2..=7).contains(&n) {
        return Err(out_of_range(format!("n must be in 2..=7, got {n}")));
    }
    let r = quartic_ring();
    let mut class = r.parse("2*(h14 + k - c1)*(h14 + 4*k)*((h14 + 3*k)^2 - (c1 + k)*(h14 + 2*k) + c2)")?;
    for m in 3..=n {
        let factor = r.parse(&format!("-{m}*c1 + {}/2*h14 + ({})*k", 2 * m - 1, 4 - m))?;
        class = &class * &factor;
    }
    Ok(class)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diagonals() {
        let (p1, d2) = diagonal_class(2).unwrap();
        assert_eq!(d2, p1.ring().parse("h1 + h2 + tau").unwrap());
        let (p1, d3) = diagonal_class(3).unwrap();
        assert_eq!(d3, p1.ring().parse("tau^2 + tau*(h1 + h2 + h3) + h1*h2 + h1*h3 + h2*h3").unwrap());
        assert_eq!(diagonal_product_form(3).unwrap(), d3);
        assert!(diagonal_class(1).is_err());
    }

    #[test]
    fn pushforward_special_cases() {
        assert_eq!(pushforward_pi_r(7, 3, 1, 0).unwrap(), h_product(3));
        for n in 1..8 {
            assert_eq!(
                pushforward_pi_r(n, 1, 1, -1).unwrap(),
                Polynomial::constant(&projective_ring(), Rational::from(n))
            );
        }
        assert!(pushforward_pi_r(5, 3, 2, -1).is_err());
        assert!(pushforward_pi_r(6, 3, 2, 2).is_err());
    }

    #[test]
    fn discriminant_degree_at_tau_zero() {
        let r = projective_ring();
        let kill_tau = RingMap::from_texts(&r, &r, &[("tau", "0"), ("h0", "h0")]).unwrap();
        for n in 2..10 {
            for k in 1..=n {
                let p = kill_tau.apply(&pushforward_pi_r(n, k, 1, -1).unwrap()).unwrap();
                let expected = r.parse(&format!("{}*h0^{}", k * (n - k + 1), k - 1)).unwrap();
                assert_eq!(p, expected, "N={n} k={k}");
            }
        }
        let di = discriminant_ideal(4, 2).unwrap();
        assert_eq!(di.push_h0, r.parse("h0^2 + tau*h0").unwrap());
        let di = discriminant_ideal(8, 3).unwrap();
        assert_eq!((di.push_one.degree(), di.push_h0.degree()), (Some(2), Some(3)));
    }

    #[test]
    fn named_examples() {
        let c10 = verify_appendix_identity("C10", &[3, 2, 5]).unwrap();
        assert!(c10.holds);
        assert_eq!(c10.numbers.unwrap().1, BigInt::from(3));
        assert!(verify_appendix_identity("C09", &[1, 1]).unwrap().holds);
        assert!(verify_appendix_identity("C09", &[0, 4]).unwrap().holds);
        assert!(matches!(verify_appendix_identity("C99", &[]), Err(EquivariantError::UnknownIdentity(_))));
        assert!(matches!(verify_appendix_identity("C09", &[3, 1]), Err(EquivariantError::ParameterOutOfRange(_))));
    }

    #[test]
    fn memberships_on_a_small_case() {
        assert!(verify_appendix_identity("C15", &[6, 2, 3]).unwrap().holds);
        assert!(verify_appendix_identity("C08", &[6, 2, 3, 1]).unwrap().holds);
        assert!(verify_appendix_identity("C11", &[7, 3, 2]).unwrap().holds);
        assert!(verify_appendix_identity("C12", &[7, 3, 0]).unwrap().holds);
        assert!(gamma0_half(7, 3).unwrap().holds);
    }

    #[test]
    fn frozen_weights_hit_known_restrictions() {
        let w = WeightConvention::frozen(6);
        let r = torus_ring();
        let a4 = multiple_root_class(6, 5, &w).unwrap();
        assert_eq!(a4, r.parse("40*(t0 + t1)^2*t0*t1").unwrap());
        let a3 = multiple_root_class(6, 4, &w).unwrap();
        assert_eq!(a3, r.parse("-24*(t0 + t1)^3 + 48*(t0 + t1)*t0*t1").unwrap());
        let a5 = multiple_root_class(6, 6, &w).unwrap();
        assert_eq!(a5, r.parse("72*(t0 + t1)^3*t0*t1 - 384*(t0 + t1)*(t0*t1)^2").unwrap());
    }

    #[test]
    fn quartic_singularity_classes() {
        let c2 = an_class_quartic(2).unwrap();
        assert_eq!(c2.degree(), Some(4));
        let c3 = an_class_quartic(3).unwrap();
        let r = quartic_ring();
        assert_eq!(c3, &c2 * &r.parse("-3*c1 + 5/2*h14 + k").unwrap());
        assert_eq!(an_class_quartic(7).unwrap().degree(), Some(9));
        assert!(an_class_quartic(8).is_err());
    }
}

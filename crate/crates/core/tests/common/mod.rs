#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use stratachow::groebner::Ideal;
use stratachow::{GradedRing, Polynomial, Rational};

pub fn small_rational(rng: &mut StdRng) -> Rational {
    let n: i64 = rng.gen_range(-4..=4);
    let d: i64 = rng.gen_range(1..=3);
    Rational::new(n, d).expect("nonzero denominator")
}

pub fn random_ring(rng: &mut StdRng) -> GradedRing {
    let n = rng.gen_range(2..=4);
    let vars: Vec<(String, u32)> = (0..n).map(|i| (format!("x{i}"), if rng.gen_bool(0.25) { 2 } else { 1 })).collect();
    GradedRing::new(vars).expect("distinct names")
}

/// Homogeneous polynomial of degree `d`, each monomial present with
/// probability `density`. May be zero.
pub fn random_homogeneous(rng: &mut StdRng, ring: &GradedRing, d: u32, density: f64) -> Polynomial {
    let terms = ring
        .monomials_of_degree(d)
        .into_iter()
        .filter_map(|m| rng.gen_bool(density).then(|| (m, small_rational(rng))))
        .collect::<Vec<_>>();
    Polynomial::from_terms(ring, terms)
}

/// A homogeneous ideal and a target of degree at most six. Half the targets
/// are built as combinations of the generators, the rest are perturbed.
pub fn random_instance(rng: &mut StdRng) -> (Ideal, Polynomial) {
    let ring = random_ring(rng);
    let ngens = rng.gen_range(1..=3);
    let gens: Vec<Polynomial> = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            random_homogeneous(rng, &ring, d, 0.6)
        })
        .filter(|g| !g.is_zero())
        .collect();
    let ideal = Ideal::new(&ring, gens).expect("homogeneous generators");
    let d = rng.gen_range(ideal.max_degree().max(1)..=6);
    let mut target = Polynomial::zero(&ring);
    for g in ideal.generators() {
        let e = g.degree().expect("nonzero");
        if e <= d {
            target = &target + &(&random_homogeneous(rng, &ring, d - e, 0.5) * g);
        }
    }
    if rng.gen_bool(0.5) {
        target = &target + &random_homogeneous(rng, &ring, d, 0.3);
    }
    (ideal, target)
}

pub fn shuffled(rng: &mut StdRng, ideal: &Ideal) -> Ideal {
    let mut gens = ideal.generators().to_vec();
    gens.shuffle(rng);
    Ideal::new(ideal.ring(), gens).expect("same generators")
}

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stratachow::catalog::catalog;
use stratachow::groebner::{
    groebner_basis, groebner_basis_with, ideal_quotient, is_member, is_nonzerodivisor, kernel_of_map,
    member_linear_oracle, GbOptions, Ideal, MonomialOrder,
};
use stratachow::{GradedRing, Monomial, Polynomial, Rational, RingMap};

fn ring3() -> GradedRing {
    GradedRing::new([("x", 1), ("y", 1), ("z", 2)]).unwrap()
}

fn term() -> impl Strategy<Value = (Vec<u32>, i64, i64)> {
    (prop::collection::vec(0u32..4, 3), -9i64..=9, 1i64..=6)
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(term(), 0..6).prop_map(|ts| {
        Polynomial::from_terms(
            &ring3(),
            ts.into_iter().map(|(e, n, d)| (Monomial::from_exponents(e), Rational::new(n, d).unwrap())),
        )
    })
}

fn homogeneous(d: u32) -> impl Strategy<Value = Polynomial> {
    any::<u64>().prop_map(move |seed| common::random_homogeneous(&mut StdRng::seed_from_u64(seed), &ring3(), d, 0.6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn degrees_add(p in homogeneous(2), q in homogeneous(3)) {
        let prod = &p * &q;
        prop_assert!(prod.is_homogeneous());
        if !prod.is_zero() {
            prop_assert_eq!(prod.degree(), Some(5));
        }
    }

    #[test]
    fn canonical_form_ignores_construction_order(ts in prop::collection::vec(term(), 0..8), seed in any::<u64>()) {
        let terms: Vec<(Monomial, Rational)> =
            ts.into_iter().map(|(e, n, d)| (Monomial::from_exponents(e), Rational::new(n, d).unwrap())).collect();
        let forward = Polynomial::from_terms(&ring3(), terms.clone());
        let mut shuffled = terms;
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut StdRng::seed_from_u64(seed));
        let summed = shuffled
            .into_iter()
            .fold(Polynomial::zero(&ring3()), |acc, (m, c)| &acc + &Polynomial::monomial(&ring3(), m, c));
        prop_assert_eq!(forward.terms(), summed.terms());
    }

    #[test]
    fn print_then_parse_is_identity(p in poly()) {
        prop_assert_eq!(ring3().parse(&p.to_string()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_is_a_reduced_groebner_basis(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (ideal, _) = common::random_instance(&mut rng);
        let gb = groebner_basis(&ideal, MonomialOrder::Grevlex).unwrap();
        for g in ideal.generators() {
            prop_assert!(gb.reduce(g).unwrap().is_zero());
        }
        let basis = gb.basis();
        let leads = gb.leading_monomials();
        for (i, b) in basis.iter().enumerate() {
            prop_assert!(b.leading_coefficient().unwrap().is_one());
            for (m, _) in b.terms() {
                for (j, l) in leads.iter().enumerate() {
                    prop_assert!(i == j || !l.divides(m), "term {:?} of element {} divisible by lead {}", m, i, j);
                }
            }
            let cert = is_member(b, &ideal).unwrap();
            prop_assert!(cert.member_over_q && cert.certificate.verify(&ideal));
        }
        // Buchberger: every S-polynomial reduces to zero.
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (mi, mj) = (&leads[i], &leads[j]);
                let l = mi.lcm(mj);
                let s = &basis[i].mul_term(&mi.quotient_of(&l), &Rational::one())
                    - &basis[j].mul_term(&mj.quotient_of(&l), &Rational::one());
                prop_assert!(gb.reduce(&s).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn basis_ignores_generator_order(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (ideal, _) = common::random_instance(&mut rng);
        let other = common::shuffled(&mut rng, &ideal);
        let a = groebner_basis(&ideal, MonomialOrder::Grevlex).unwrap();
        let b = groebner_basis(&other, MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn membership_agrees_with_linear_algebra(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (ideal, target) = common::random_instance(&mut rng);
        let report = is_member(&target, &ideal).unwrap();
        prop_assert_eq!(report.member_over_q, member_linear_oracle(&target, &ideal));
        prop_assert_eq!(report.member_over_q, report.certificate.remainder.is_zero());
        if report.member_over_q {
            prop_assert!(report.certificate.verify(&ideal));
        }
    }

    #[test]
    fn kernel_generators_map_into_the_target_ideal(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let target = common::random_ring(&mut rng);
        let n = rng.gen_range(1..=3);
        let degrees: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
        let source = GradedRing::new(degrees.iter().enumerate().map(|(i, &d)| (format!("a{i}"), d))).unwrap();
        let images = degrees.iter().map(|&d| common::random_homogeneous(&mut rng, &target, d, 0.7)).collect();
        let map = RingMap::new(&source, &target, images).unwrap();
        let modulo = if rng.gen_bool(0.5) {
            let d = rng.gen_range(1..=2);
            Some(Ideal::new(&target, vec![common::random_homogeneous(&mut rng, &target, d, 0.7)]).unwrap())
        } else {
            None
        };
        let kernel = kernel_of_map(&map, modulo.as_ref()).unwrap();
        let j = modulo.unwrap_or_else(|| Ideal::zero(&target));
        for k in kernel.generators() {
            let image = map.apply(k).unwrap();
            prop_assert!(is_member(&image, &j).unwrap().member_over_q, "{} maps to {}", k, image);
        }
    }

    #[test]
    fn colon_ideal_contains_the_ideal(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (ideal, _) = common::random_instance(&mut rng);
        let d = rng.gen_range(1..=2);
        let f = common::random_homogeneous(&mut rng, ideal.ring(), d, 0.7);
        prop_assume!(!f.is_zero());
        let colon = ideal_quotient(&ideal, &f).unwrap();
        let gb_colon = groebner_basis(&colon, MonomialOrder::Grevlex).unwrap();
        prop_assert!(gb_colon.includes(&ideal).unwrap().holds());
        let gb = groebner_basis(&ideal, MonomialOrder::Grevlex).unwrap();
        let equal = gb.includes(&colon).unwrap().holds();
        prop_assert_eq!(equal, is_nonzerodivisor(&f, &ideal).unwrap());
    }

    #[test]
    fn smooth_steps_give_smooth_certificates(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let ring = common::random_ring(&mut rng);
        let units = [1i64, -1, 2, -2, 3, -3, 4, 6];
        let smooth_poly = |rng: &mut StdRng, d: u32| {
            let terms: Vec<(Monomial, Rational)> = ring
                .monomials_of_degree(d)
                .into_iter()
                .filter_map(|m| rng.gen_bool(0.5).then(|| (m, Rational::from(units[rng.gen_range(0..units.len())]))))
                .collect();
            Polynomial::from_terms(&ring, terms)
        };
        let gens: Vec<Polynomial> =
            (0..2).map(|_| { let d = rng.gen_range(1..=2); smooth_poly(&mut rng, d) }).filter(|g| !g.is_zero()).collect();
        let ideal = Ideal::new(&ring, gens).unwrap();
        let mut target = Polynomial::zero(&ring);
        for g in ideal.generators() {
            target = &target + &(&smooth_poly(&mut rng, 4 - g.degree().unwrap()) * g);
        }
        let gb = groebner_basis_with(&ideal, &GbOptions { track_cofactors: true, truncate_at: Some(4), ..GbOptions::default() }).unwrap();
        let cert = gb.normal_form(&target).unwrap();
        if gb.smooth_steps() && cert.remainder.is_zero() {
            prop_assert!(cert.is_smooth());
        }
    }
}

#[test]
fn catalog_polynomials_survive_printing() {
    let doc = catalog();
    for list in doc.ideals.values() {
        for (name, p) in &list.relations {
            assert_eq!(&list.ring.parse(&p.to_string()).unwrap(), p, "{name}");
        }
    }
    for (name, p) in &doc.classes {
        assert_eq!(&p.ring().parse(&p.to_string()).unwrap(), p, "{name}");
    }
}

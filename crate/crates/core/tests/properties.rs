use std::sync::Arc;

use chowver::abelian::GradedPiece;
use chowver::catalog::{self, classifying_ring, RingPresentation};
use chowver::polyring::{Poly, RingMap, Vars};
use chowver::transfer::{self, InvolutionSpec, TransferData};
use chowver::verifier::random_homogeneous;
use chowver::zgroebner::{ideals_equal, replay, strong_groebner, MonomialOrder};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn free_vars() -> Arc<Vars> {
    Vars::from_pairs(&[("x", 1), ("y", 1), ("z", 2)]).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Inhomogeneous polynomial as a sum of homogeneous pieces.
fn random_poly(v: &Arc<Vars>, r: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero(v);
    for d in 0..=3 {
        if r.gen_bool(0.6) {
            p = &p + &random_homogeneous(v, d, r, 3, 20);
        }
    }
    p
}

/// Catalog rings with at least one relation, plus a chart ring.
fn catalog_rings() -> Vec<RingPresentation> {
    let mut out: Vec<RingPresentation> = catalog::RING_NAMES
        .iter()
        .map(|n| if *n == "BGmN(n)" { "BGmN(2)" } else { n })
        .map(|n| classifying_ring(n).unwrap())
        .collect();
    out.push(catalog::presentation_d(3).unwrap());
    out.push(catalog::presentation_rh(3).unwrap());
    out.push(catalog::chart_ring(2, [1, 1, 0], None).unwrap());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let v = free_vars();
        let mut r = rng(seed);
        let (a, b, c) = (random_poly(&v, &mut r), random_poly(&v, &mut r), random_poly(&v, &mut r));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(&v), a.clone());
    }

    #[test]
    fn parse_display_round_trip(seed in any::<u64>()) {
        let v = free_vars();
        let a = random_poly(&v, &mut rng(seed));
        prop_assert_eq!(Poly::parse(&a.to_string(), &v).unwrap(), a);
    }

    #[test]
    fn degree_is_additive(seed in any::<u64>(), d in 0u32..4, e in 0u32..4) {
        let v = free_vars();
        let mut r = rng(seed);
        let a = random_homogeneous(&v, d, &mut r, 4, 9);
        let b = random_homogeneous(&v, e, &mut r, 4, 9);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = &a * &b;
        prop_assert!(ab.is_homogeneous());
        prop_assert_eq!(ab.degree().unwrap(), d + e);
    }

    #[test]
    fn ring_map_is_a_homomorphism(seed in any::<u64>()) {
        let v = free_vars();
        let ring = RingPresentation::new("free", &v, Vec::new(), "test").unwrap();
        let mut r = rng(seed);
        let images = vec![
            ("x".to_string(), random_homogeneous(&v, 1, &mut r, 3, 5)),
            ("y".to_string(), random_homogeneous(&v, 1, &mut r, 3, 5)),
            ("z".to_string(), random_homogeneous(&v, 2, &mut r, 3, 5)),
        ];
        let f = RingMap::from_polys(&ring, &ring, images).unwrap();
        let (a, b) = (random_poly(&v, &mut r), random_poly(&v, &mut r));
        prop_assert_eq!(f.apply(&(&a * &b)).unwrap(), &f.apply(&a).unwrap() * &f.apply(&b).unwrap());
        prop_assert_eq!(f.apply(&(&a + &b)).unwrap(), &f.apply(&a).unwrap() + &f.apply(&b).unwrap());
    }

    #[test]
    fn mu_star_is_an_involution(seed in any::<u64>()) {
        let inv = InvolutionSpec::swap();
        let up = inv.ring().vars().clone();
        let p = random_homogeneous(&up, 3, &mut rng(seed), 6, 9);
        let once = transfer::mu_star(&p, &inv).unwrap();
        prop_assert_eq!(transfer::mu_star(&once, &inv).unwrap(), p);
    }

    #[test]
    fn symmetric_decomposition_reconstructs(seed in any::<u64>(), d in 0u32..5) {
        let up = classifying_ring("BGm2xPGL2").unwrap().vars().clone();
        let p = random_homogeneous(&up, d, &mut rng(seed), 5, 9);
        let (s0, s1) = transfer::symmetric_decompose(&p).unwrap();
        prop_assert_eq!(transfer::symmetric_reconstruct(&s0, &s1, &up).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn groebner_and_smith_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in catalog_rings() {
            let v = ring.vars().clone();
            let gb = strong_groebner(ring.relations(), &MonomialOrder::grevlex(&v)).unwrap();
            for d in 1..=4u32 {
                // a guaranteed member, and a random element
                let mut member = Poly::zero(&v);
                for rel in ring.relations() {
                    let e = rel.degree().unwrap();
                    if e <= d {
                        member = &member + &(rel * &random_homogeneous(&v, d - e, &mut r, 2, 5));
                    }
                }
                let any = random_homogeneous(&v, d, &mut r, 3, 5);
                let piece = GradedPiece::new(&v, ring.relations(), d).unwrap();
                for p in [member, any] {
                    if p.is_zero() {
                        continue;
                    }
                    prop_assert_eq!(gb.is_member(&p).unwrap(), piece.contains(&p).unwrap(), "{} in {}", p, ring.id());
                }
            }
        }
    }

    #[test]
    fn cofactors_replay_to_the_input(seed in any::<u64>(), d in 1u32..6) {
        let ring = catalog::presentation_d(3).unwrap();
        let v = ring.vars().clone();
        let gb = strong_groebner(ring.relations(), &MonomialOrder::grevlex(&v)).unwrap();
        let p = random_homogeneous(&v, d, &mut rng(seed), 6, 50);
        let (rem, cof) = gb.normal_form_with_cofactors(&p).unwrap();
        prop_assert_eq!(replay(&gb, &cof, &rem), p.clone());
        prop_assert_eq!(rem, gb.normal_form(&p).unwrap());
    }

    #[test]
    fn normal_form_ignores_generator_order(seed in any::<u64>(), d in 1u32..6) {
        let ring = catalog::presentation_rh(5).unwrap();
        let v = ring.vars().clone();
        let mut r = rng(seed);
        let order = MonomialOrder::grevlex(&v);
        let a = strong_groebner(ring.relations(), &order).unwrap();
        let mut shuffled = ring.relations().to_vec();
        shuffled.shuffle(&mut r);
        let b = strong_groebner(&shuffled, &order).unwrap();
        prop_assert_eq!(a.generators(), b.generators());
        let p = random_homogeneous(&v, d, &mut r, 6, 50);
        prop_assert_eq!(a.normal_form(&p).unwrap(), b.normal_form(&p).unwrap());
    }

    #[test]
    fn ideal_equality_properties(seed in any::<u64>()) {
        let ring = classifying_ring("BGxPGL2").unwrap();
        let v = ring.vars().clone();
        let order = MonomialOrder::grevlex(&v);
        let mut r = rng(seed);
        let i = ring.relations().to_vec();
        // adding a combination of generators does not change the ideal
        let mut j = i.clone();
        j.push(&(&i[0] * &random_homogeneous(&v, 2, &mut r, 2, 5)) + &(&i[2] * &Poly::constant(&v, 3)));
        prop_assert!(ideals_equal(&i, &i, &order).unwrap());
        prop_assert!(ideals_equal(&i, &j, &order).unwrap());
        prop_assert!(ideals_equal(&j, &i, &order).unwrap());
        let mut k = i.clone();
        k.push(Poly::var(&v, "b1").unwrap());
        prop_assert!(!ideals_equal(&k, &i, &order).unwrap());
    }

    #[test]
    fn transfer_push_pull(seed in any::<u64>(), d in 0u32..5) {
        let td = TransferData::standard().unwrap();
        let inv = InvolutionSpec::swap();
        let p = random_homogeneous(td.upstairs.vars(), d, &mut rng(seed), 5, 20);
        prop_assert!(transfer::push_pull_check(&p, &td, &inv).unwrap());
    }
}

/// Random homogeneous element of the chart ring not involving xi.
fn base_element(d: u32, r: &mut ChaCha8Rng) -> Poly {
    let v = catalog::chart_vars();
    let xi = v.index_of("xi").unwrap();
    let p = random_homogeneous(&v, d, r, 3, 9);
    Poly::from_terms(
        &v,
        p.terms()
            .filter(|(m, _)| m.exps()[xi] == 0)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn projective_integration_is_base_linear(seed in any::<u64>(), n in 1u32..5) {
        let v = catalog::chart_vars();
        let mut r = rng(seed);
        let xi = Poly::var(&v, "xi").unwrap();
        let mut rel = xi.pow(n);
        for k in 1..=n {
            rel = &rel + &(&xi.pow(n - k) * &base_element(k, &mut r));
        }
        let d = n + 1;
        let (p, q) = (random_homogeneous(&v, d, &mut r, 5, 9), random_homogeneous(&v, d, &mut r, 5, 9));
        let b = base_element(2, &mut r);
        let push = |x: &Poly| transfer::proj_pushforward(x, &rel).unwrap();
        prop_assert_eq!(push(&(&p + &q)), &push(&p) + &push(&q));
        prop_assert_eq!(push(&(&b * &p)), &b * &push(&p));
        for k in 0..n - 1 {
            prop_assert!(push(&(&xi.pow(k) * &b)).is_zero());
        }
        prop_assert_eq!(push(&(&xi.pow(n - 1) * &b)), b);
    }
}

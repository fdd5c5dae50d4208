mod common;

use common::*;
use gbsn::finquo::{
    build_level_quotient, build_semidirect_quotient, certificate_search, height_quotient, psi_lattice, subgroup_image,
    verify_certificate, FiniteSemidirect, SearchBudget, DEFAULT_ENUMERATION_BUDGET,
};
use gbsn::hnn::{analyze_subgroup, AscHnn, Word};
use gbsn::lattice::IntMatrix;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> (AscHnn, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=2);
    let phi = random_phi(&mut rng, n, 1, 6);
    (AscHnn::new(phi).unwrap(), rng)
}

fn level(g: &AscHnn, rng: &mut ChaCha8Rng) -> FiniteSemidirect {
    let good: Vec<u64> = [2u64, 3, 5, 7]
        .into_iter()
        .filter(|p| !(g.det() % BigInt::from(*p)).is_zero())
        .collect();
    let p = good[rng.random_range(0..good.len())];
    let l = if p <= 3 { rng.random_range(1..=2) } else { 1 };
    build_level_quotient(g, p, l).unwrap().group().clone()
}

fn words(g: &AscHnn, rng: &mut ChaCha8Rng, k: usize) -> Vec<Word> {
    (0..k).map(|_| random_word(rng, g.rank(), 6)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn projection_is_a_homomorphism(seed in any::<u64>()) {
        let (g, mut rng) = setup(seed);
        let q = level(&g, &mut rng);
        let (u, v) = (random_word(&mut rng, g.rank(), 8), random_word(&mut rng, g.rank(), 8));
        let (x, y) = (q.project(&u), q.project(&v));
        prop_assert_eq!(q.project(&u.concat(&v)), q.mul(&x, &y).unwrap());
        prop_assert_eq!(q.project(&u.inverse()), q.inverse(&x).unwrap());
        prop_assert_eq!(q.decode(q.encode(&x)), x.clone());
        // the projection factors through the normal form
        prop_assert_eq!(q.project(&g.normalize(&u).to_word()), x);
        let r = random_relator(&mut rng, g.phi());
        prop_assert_eq!(q.project(&r), q.identity());
    }

    #[test]
    fn stable_letter_acts_by_the_action_matrix(seed in any::<u64>()) {
        let (g, mut rng) = setup(seed);
        let q = level(&g, &mut rng);
        let a = random_vector(&mut rng, g.rank(), 20);
        let lhs = q.mul(&q.mul(&q.t(), &q.project_vector(&a)).unwrap(), &q.t_inverse()).unwrap();
        prop_assert_eq!(lhs, q.project_vector(&g.phi().mul_vec(&a)));
        prop_assert_eq!(q.mul(&q.t(), &q.t_inverse()).unwrap(), q.identity());
    }

    #[test]
    fn image_is_a_subgroup(seed in any::<u64>()) {
        let (g, mut rng) = setup(seed);
        let q = level(&g, &mut rng);
        let k = rng.random_range(1..=3);
        let gens: Vec<_> = words(&g, &mut rng, k).iter().map(|w| q.project(w)).collect();
        let img = subgroup_image(&q, &gens, DEFAULT_ENUMERATION_BUDGET).unwrap();
        prop_assert_eq!(Some(img.group_order), q.order().to_u64());
        prop_assert_eq!(img.group_order % img.order, 0);
        prop_assert_eq!(img.codes.len() as u64, img.order);
        for x in &gens {
            prop_assert!(img.contains(&q, x));
        }
        for &c in img.codes.iter().take(50) {
            let x = q.decode(c);
            prop_assert!(img.contains(&q, &q.inverse(&x).unwrap()));
            for s in &gens {
                prop_assert!(img.contains(&q, &q.mul(s, &x).unwrap()));
            }
        }
    }

    #[test]
    fn height_quotient_reads_the_height(seed in any::<u64>(), k in 1u64..=7) {
        let (g, mut rng) = setup(seed);
        let q = height_quotient(&g, k).unwrap();
        let w = random_word(&mut rng, g.rank(), 10);
        prop_assert_eq!(q.project(&w).s as i64, g.height(&w).rem_euclid(k as i64));
    }

    #[test]
    fn psi_kills_the_base_lower_bound(seed in any::<u64>()) {
        let (g, mut rng) = setup(seed);
        let mut gens = words(&g, &mut rng, 2);
        gens.push(Word::t());
        gens.push(Word::base(random_vector(&mut rng, g.rank(), 3)));
        let spec = analyze_subgroup(&g, &gens, 3);
        let Some(l) = psi_lattice(&g, &spec) else { return Ok(()) };
        prop_assert!(l.contains_lattice(&spec.base_lower_bound));
        prop_assert!(l.is_invariant_under(g.phi()));
        let Ok(q) = build_semidirect_quotient(&g, &l) else { return Ok(()) };
        for e in spec.kernel_elements.iter().filter(|e| e.level == 0) {
            prop_assert_eq!(q.group().project(&g.n_to_word(e)), q.group().identity());
        }
        for v in l.generators() {
            prop_assert_eq!(q.group().project_vector(&v), q.group().identity());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certificates_replay(seed in any::<u64>()) {
        let (g, mut rng) = setup(seed);
        let k = rng.random_range(1..=3);
        let gens = words(&g, &mut rng, k);
        let budget = SearchBudget {
            max_level: 1,
            word_budget: 3,
            ..SearchBudget::default_for(&g)
        };
        if let Some(c) = certificate_search(&g, &gens, &budget).certificate() {
            prop_assert!(c.index() > 1);
            prop_assert!(verify_certificate(&g, &gens, c, DEFAULT_ENUMERATION_BUDGET).unwrap());
            // raising the level budget never loses a certificate
            let wider = SearchBudget { max_level: 2, ..budget.clone() };
            let found = certificate_search(&g, &gens, &wider);
            let c2 = found.certificate();
            prop_assert!(c2.is_some());
            prop_assert!(verify_certificate(&g, &gens, c2.unwrap(), DEFAULT_ENUMERATION_BUDGET).unwrap());
        }
    }
}

#[test]
fn level_quotient_sizes() {
    let g = AscHnn::new(IntMatrix::from_rows(&[[2]])).unwrap();
    for (p, l, order) in [(3u64, 1u32, 6u64), (3, 2, 54), (5, 1, 20), (7, 1, 21)] {
        let q = build_level_quotient(&g, p, l).unwrap();
        let r = brute_order_mod(&[vec![2]], p.pow(l) as i64);
        assert_eq!(q.r_l, r);
        assert_eq!(q.order().to_u64(), Some(order));
    }
    assert!(build_level_quotient(&g, 2, 1).is_err());
    assert!(build_level_quotient(&g, 9, 1).is_err());
}

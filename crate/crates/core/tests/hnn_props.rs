mod common;

use common::*;
use gbsn::hnn::{analyze_subgroup, lemma22_check, AscHnn, NElement, Word};
use gbsn::lattice::IntMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Case {
    g: AscHnn,
    model: RationalModel,
    rng: ChaCha8Rng,
}

fn case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=3);
    let phi = random_phi(&mut rng, n, 1, 8);
    Case {
        model: RationalModel::new(&phi),
        g: AscHnn::new(phi).unwrap(),
        rng,
    }
}

fn kernel_word(c: &mut Case) -> Word {
    // conjugates of base elements by random powers of t have height zero
    let n = c.g.rank();
    let mut w = Word::identity();
    for _ in 0..c.rng.random_range(1..=3) {
        let k = c.rng.random_range(-3..=3);
        let a = Word::base(random_vector(&mut c.rng, n, 4));
        w = w.concat(&Word::t_pow(k).concat(&a).concat(&Word::t_pow(-k)));
    }
    w
}

fn eval_n(c: &Case, x: &NElement) -> (Vec<Q>, i64) {
    c.model.eval(&c.g.n_to_word(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_represents_the_word(seed in any::<u64>()) {
        let mut c = case(seed);
        let w = random_word(&mut c.rng, c.g.rank(), 12);
        let nf = c.g.normalize(&w);
        prop_assert!(c.model.check(&w, &nf), "{} -> {}", w, nf);
        prop_assert_eq!(c.g.normalize(&nf.to_word()), nf.clone());
        prop_assert_eq!(nf.height(), c.g.height(&w));
    }

    #[test]
    fn relators_do_not_change_the_normal_form(seed in any::<u64>()) {
        let mut c = case(seed);
        let w = random_word(&mut c.rng, c.g.rank(), 10);
        let r = random_relator(&mut c.rng, c.g.phi());
        let at = c.rng.random_range(0..=w.len());
        prop_assert_eq!(c.g.normalize(&w.insert(at, &r)), c.g.normalize(&w));
        prop_assert!(c.g.normalize(&w.concat(&w.inverse())).is_identity());
    }

    #[test]
    fn multiply_is_concatenation(seed in any::<u64>()) {
        let mut c = case(seed);
        let u = random_word(&mut c.rng, c.g.rank(), 8);
        let v = random_word(&mut c.rng, c.g.rank(), 8);
        let (x, y) = (c.g.normalize(&u), c.g.normalize(&v));
        prop_assert_eq!(c.g.multiply(&x, &y), c.g.normalize(&u.concat(&v)));
        prop_assert_eq!(c.g.invert(&x), c.g.normalize(&u.inverse()));
        prop_assert!(c.g.multiply(&x, &c.g.invert(&x)).is_identity());
    }

    #[test]
    fn kernel_arithmetic(seed in any::<u64>()) {
        let mut c = case(seed);
        let (u, v) = (kernel_word(&mut c), kernel_word(&mut c));
        let x = c.g.to_n_element(&u).unwrap();
        let y = c.g.to_n_element(&v).unwrap();
        for e in [&x, &y] {
            prop_assert!(e.level == 0 || !c.g.in_image(&e.value), "{} is not reduced", e);
        }
        prop_assert_eq!(eval_n(&c, &x), c.model.eval(&u));
        let sum = c.g.n_add(&x, &y);
        prop_assert_eq!(&sum, &c.g.n_add(&y, &x));
        prop_assert_eq!(&sum, &c.g.to_n_element(&u.concat(&v)).unwrap());
        prop_assert_eq!(c.g.n_add(&x, &c.g.n_neg(&x)), c.g.n_zero());
        prop_assert_eq!(c.g.nf_to_n_element(&c.g.n_to_normal_form(&x)).unwrap(), x);
    }

    #[test]
    fn conjugation_tower(seed in any::<u64>(), k in -4i64..=4) {
        let mut c = case(seed);
        let u = kernel_word(&mut c);
        let x = c.g.to_n_element(&u).unwrap();
        let conj = Word::t_pow(k).concat(&u).concat(&Word::t_pow(-k));
        prop_assert_eq!(c.g.n_conjugate_by_t(&x, k), c.g.to_n_element(&conj).unwrap());
        // conjugating back undoes it
        prop_assert_eq!(c.g.n_conjugate_by_t(&c.g.n_conjugate_by_t(&x, k), -k), x);
    }

    #[test]
    fn words_off_the_kernel_are_rejected(seed in any::<u64>()) {
        let mut c = case(seed);
        let w = random_word(&mut c.rng, c.g.rank(), 8).concat(&Word::t());
        let h = c.g.height(&w);
        prop_assert_eq!(c.g.to_n_element(&w).is_ok(), h == 0);
    }

    #[test]
    fn subgroup_analysis_is_monotone(seed in any::<u64>()) {
        let mut c = case(seed);
        let gens: Vec<Word> = (0..c.rng.random_range(1..=3)).map(|_| random_word(&mut c.rng, c.g.rank(), 4)).collect();
        let mut last = analyze_subgroup(&c.g, &gens, 0);
        let m = gens.iter().fold(0i64, |acc, w| num_integer::gcd(acc, c.g.height(w))).unsigned_abs();
        prop_assert_eq!(last.m, m);
        for budget in 1..=3 {
            let spec = analyze_subgroup(&c.g, &gens, budget);
            prop_assert!(spec.enumerated >= last.enumerated);
            prop_assert!(spec.base_lower_bound.contains_lattice(&last.base_lower_bound));
            for e in &last.kernel_elements {
                prop_assert!(spec.kernel_elements.contains(e));
            }
            last = spec;
        }
        if let Some(t) = &last.t_h {
            prop_assert_eq!(c.g.height(t), 1);
        }
    }
}

#[test]
fn lemma_on_a_proper_subgroup() {
    // H = <a1^2, a2, t> with phi = 3I has t_H = t and A ∩ H ⊇ 2Z + Z
    let g = AscHnn::new(IntMatrix::scalar(2, 3)).unwrap();
    let gens: Vec<Word> = ["a1^2", "a2", "t"].iter().map(|w| Word::parse(w, 2).unwrap()).collect();
    let spec = analyze_subgroup(&g, &gens, 4);
    assert_eq!(spec.m, 1);
    assert_eq!(g.height(spec.t_h.as_ref().unwrap()), 1);
    assert!(spec.base_lower_bound.contains(&[BigInt::from(2), BigInt::from(0)]));
    assert!(spec.base_lower_bound.contains(&[BigInt::from(0), BigInt::from(1)]));
    assert!(!spec.base_lower_bound.contains(&[BigInt::from(1), BigInt::from(0)]));
    let report = lemma22_check(&g, &spec, 50, &mut ChaCha8Rng::seed_from_u64(22)).unwrap();
    assert!(report.passed && report.counterexample.is_none());
    assert_eq!(report.samples, 50);
}

#[test]
fn lemma_check_needs_a_stable_letter() {
    let g = AscHnn::new(IntMatrix::scalar(2, 3)).unwrap();
    let gens = vec![Word::parse("a1 t^2", 2).unwrap()];
    let spec = analyze_subgroup(&g, &gens, 3);
    assert_eq!(spec.m, 2);
    assert!(lemma22_check(&g, &spec, 5, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
}

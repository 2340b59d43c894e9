mod common;

use std::sync::Arc;

use common::{parse_ideal, random_ideal_src, strings};
use netalg::groebner::{groebner_basis, ideal_dimension, Ideal};
use netalg::informativity::{generic_rank, InformativityOptions, Method};
use netalg::netmodel::assemble_informativity_m;
use netalg::oracle::*;
use netalg::polyalg::{parse_rational, MonomialOrder, OrderKind, VariableRing};
use netalg::ratmat::RationalMatrix;
use netalg::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mat(names: &[&str], rows: &[&[&str]]) -> RationalMatrix {
    let r: Arc<VariableRing> = VariableRing::unknowns(names).unwrap();
    let o = MonomialOrder::grevlex(r.arity());
    RationalMatrix::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|s| parse_rational(s, &r, &o).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

fn ideal(names: &[&str], src: &[&str]) -> Ideal {
    parse_ideal(&strings(names), &strings(src))
}

#[test]
fn probe_examples() {
    let cfg = ProbeConfig::default();
    let zero = mat(&["a"], &[&["0", "0"], &["0", "0"]]);
    assert_eq!(random_rank_probe(&zero, &cfg).unwrap().rank, 0);
    let dup = mat(&["a", "b"], &[&["a", "b"], &["a", "b"]]);
    assert_eq!(random_rank_probe(&dup, &cfg).unwrap().rank, 1);
    let pole = mat(&["a"], &[&["1/(a - 1)", "a"], &["0", "1"]]);
    let r = random_rank_probe(&pole, &cfg).unwrap();
    assert_eq!(r.rank, 2);
    assert_eq!(r.trial_ranks.len(), cfg.trials);

    let s = common::fixture("example1.net");
    let m = assemble_informativity_m(&s, &[], &[]).unwrap();
    assert_eq!(random_rank_probe_m(&m, &cfg).unwrap().rank, 7);
}

#[test]
fn probe_is_seeded() {
    let a = mat(&["a", "b"], &[&["a", "b"], &["b", "a"]]);
    let cfg = ProbeConfig {
        trials: 4,
        ..Default::default()
    };
    assert_eq!(random_rank_probe(&a, &cfg).unwrap(), random_rank_probe(&a, &cfg).unwrap());
}

#[test]
fn prime_pool() {
    assert!(is_prime(DEFAULT_PRIME));
    assert!(!is_prime(DEFAULT_PRIME - 2));
    assert!(is_prime(1_000_003));
    let a = mat(&["a", "b"], &[&["a", "b", "1"], &["a*b", "b^2", "b"]]);
    let cfg = ProbeConfig {
        pool: Pool::Prime { modulus: DEFAULT_PRIME },
        ..Default::default()
    };
    assert_eq!(random_rank_probe(&a, &cfg).unwrap().rank, 1);
    for bad in [Pool::Prime { modulus: 1_000_000 }, Pool::Prime { modulus: 999_983 }, Pool::Rational { max: 0 }] {
        let cfg = ProbeConfig {
            pool: bad,
            ..Default::default()
        };
        assert!(matches!(random_rank_probe(&a, &cfg), Err(Error::MalformedInput(_))));
    }
    let cfg = ProbeConfig {
        trials: 0,
        ..Default::default()
    };
    assert!(random_rank_probe(&a, &cfg).is_err());
}

#[test]
fn rank_helpers() {
    let p = 1_000_003;
    assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], p), 1);
    assert_eq!(rank_mod(vec![vec![1, 2], vec![3, 4]], p), 2);
    assert_eq!(rank_mod(vec![vec![0, p - 1], vec![0, 1]], p), 1);
    assert_eq!(rank_rational(vec![]), 0);
}

#[test]
fn brute_force_examples() {
    assert_eq!(brute_force_dimension(&ideal(&["x", "y"], &["x"]), 12).unwrap(), 1);
    assert_eq!(brute_force_dimension(&ideal(&["x", "y"], &["x*y - 1"]), 12).unwrap(), 1);
    assert_eq!(brute_force_dimension(&ideal(&["x", "y"], &["x^2 - y"]), 12).unwrap(), 1);
    assert_eq!(brute_force_dimension(&ideal(&["x", "y"], &["x", "x - 1"]), 12).unwrap(), -1);
    assert_eq!(brute_force_dimension(&ideal(&["x", "y", "z"], &[]), 12).unwrap(), 3);
    assert_eq!(brute_force_dimension(&ideal(&["x", "y", "z"], &["x*y", "x*z"]), 12).unwrap(), 2);
    let big: Vec<String> = (0..13).map(|i| format!("v{i}")).collect();
    let i = parse_ideal(&big, &[]);
    assert!(matches!(brute_force_dimension(&i, BRUTE_FORCE_MAX_VARS), Err(Error::Precondition(_))));
}

/// The probe never exceeds the symbolic rank, and agrees with it on the
/// fixtures at default settings.
#[test]
fn probe_below_symbolic() {
    for f in ["example1.net", "example3.net", "example5.net"] {
        let s = common::fixture(f);
        let m = assemble_informativity_m(&s, &[], &[]).unwrap();
        let sym = generic_rank(&m, Method::Groebner, &InformativityOptions::default()).unwrap();
        let num = generic_rank(&m, Method::Numeric, &InformativityOptions::default()).unwrap();
        assert_eq!(sym, num, "{f}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The hitting-set dimension matches subset enumeration.
    #[test]
    fn dimension_matches_brute_force(vars in 1usize..=6, gens in 0usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (names, src) = random_ideal_src(&mut rng, vars, gens, 3);
        let i = parse_ideal(&names, &src);
        prop_assert_eq!(ideal_dimension(&i).unwrap(), brute_force_dimension(&i, 6).unwrap(), "{:?}", src);
    }

    /// Grevlex and lex bases of the same ideal agree on membership.
    #[test]
    fn orders_agree_on_membership(vars in 1usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (names, src) = random_ideal_src(&mut rng, vars, 2, 2);
        let i = parse_ideal(&names, &src);
        let lex = groebner_basis(&i, &MonomialOrder::new(OrderKind::Lex, (0..vars).collect()).unwrap()).unwrap();
        let grl = groebner_basis(&i, &MonomialOrder::grevlex(vars)).unwrap();
        prop_assert_eq!(lex.is_one(), grl.is_one());
        for g in grl.elements() {
            prop_assert!(lex.contains(g).unwrap());
        }
    }
}

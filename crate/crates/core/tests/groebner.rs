use std::sync::Arc;

use netalg::groebner::{
    elimination_ideal, groebner_basis, groebner_basis_with, ideal_dimension, s_polynomial,
    GbConfig, Ideal,
};
use netalg::polyalg::{parse_polynomial, MonomialOrder, OrderKind, Polynomial, VariableRing};
use netalg::Error;

fn ring(names: &[&str]) -> Arc<VariableRing> {
    VariableRing::unknowns(names).unwrap()
}

fn polys(r: &Arc<VariableRing>, src: &[&str]) -> Vec<Polynomial> {
    let o = MonomialOrder::lex(r.arity());
    src.iter().map(|s| parse_polynomial(s, r, &o).unwrap()).collect()
}

#[test]
fn s_polynomial_examples() {
    let r = ring(&["x", "y", "z"]);
    let lex = MonomialOrder::lex(3);
    let p = polys(&r, &["x^2 - y", "x*y - z", "x^2", "y^2"]);
    let s = s_polynomial(&p[0], &p[1], &lex).unwrap();
    assert_eq!(s, polys(&r, &["-y^2 + x*z"])[0]);
    assert!(s_polynomial(&p[0], &p[0], &lex).unwrap().is_zero());
    let sc = s_polynomial(&p[2], &p[3], &lex).unwrap();
    let gb = groebner_basis(&Ideal::new(&r, p[2..].to_vec()).unwrap(), &lex).unwrap();
    assert!(gb.normal_form(&sc).unwrap().is_zero());
    let zero = Polynomial::zero(&r, &lex);
    assert!(matches!(s_polynomial(&zero, &p[0], &lex), Err(Error::MalformedInput(_))));
}

#[test]
fn twisted_cubic_basis() {
    let r = ring(&["x", "y", "z"]);
    let lex = MonomialOrder::lex(3);
    let gens = polys(&r, &["x^2 - y", "x^3 - z"]);
    let gb = groebner_basis(&Ideal::new(&r, gens.clone()).unwrap(), &lex).unwrap();
    // Reduced lex basis: {y^3 - z^2, x*z - y^2, x*y - z, x^2 - y}.
    let expect = polys(&r, &["y^3 - z^2", "x*z - y^2", "x*y - z", "x^2 - y"]);
    assert_eq!(gb.elements(), &expect[..]);
    for g in &gens {
        assert!(gb.contains(g).unwrap());
    }
    assert!(gb.s_pairs_reduce_to_zero().unwrap());
    assert!(gb.is_reduced());
}

#[test]
fn inconsistent_system_gives_one() {
    let r = ring(&["x"]);
    let gb = groebner_basis(
        &Ideal::new(&r, polys(&r, &["x", "x + 1"])).unwrap(),
        &MonomialOrder::lex(1),
    )
    .unwrap();
    assert!(gb.is_one());
}

#[test]
fn single_generator_is_made_monic() {
    let r = ring(&["t", "d"]);
    let gb = groebner_basis(
        &Ideal::new(&r, polys(&r, &["1 - t*d"])).unwrap(),
        &MonomialOrder::lex(2),
    )
    .unwrap();
    assert_eq!(gb.elements(), &polys(&r, &["t*d - 1"])[..]);
}

#[test]
fn empty_ideal_has_empty_basis() {
    let r = ring(&["x"]);
    let gb = groebner_basis(&Ideal::zero(&r), &MonomialOrder::lex(1)).unwrap();
    assert!(gb.is_empty());
    assert_eq!(ideal_dimension(&Ideal::zero(&r)).unwrap(), 1);
}

#[test]
fn elimination_examples() {
    let r = ring(&["x", "y"]);
    let lex = MonomialOrder::lex(2);
    let gb = groebner_basis(&Ideal::new(&r, polys(&r, &["y - x^2"])).unwrap(), &lex).unwrap();
    assert!(elimination_ideal(&gb, &[1]).unwrap().is_zero());
    let gb = groebner_basis(&Ideal::new(&r, polys(&r, &["x - 1", "y - x"])).unwrap(), &lex).unwrap();
    let e = elimination_ideal(&gb, &[1]).unwrap();
    assert_eq!(e.generators(), &polys(&r, &["y - 1"])[..]);
    // x is smallest under this lex order, so keeping it is not an elimination.
    assert!(matches!(elimination_ideal(&gb, &[0]), Err(Error::Precondition(_))));
}

#[test]
fn block_order_eliminates_like_lex() {
    let r = ring(&["t", "a", "b", "g1", "g2"]);
    let gens = polys(&r, &["g1 - a*b", "g2 - a - b", "1 - t*a"]);
    let lex = MonomialOrder::lex(5);
    let blk = MonomialOrder::new(OrderKind::Elimination { block: 3 }, (0..5).collect()).unwrap();
    let ideal = Ideal::new(&r, gens).unwrap();
    let e1 = elimination_ideal(&groebner_basis(&ideal, &lex).unwrap(), &[3, 4]).unwrap();
    let e2 = elimination_ideal(&groebner_basis(&ideal, &blk).unwrap(), &[3, 4]).unwrap();
    assert!(e1.is_zero() && e2.is_zero());
    assert_eq!(ideal_dimension(&e1.restrict_to(&[3, 4]).unwrap()).unwrap(), 2);
}

#[test]
fn dimension_examples() {
    let r = ring(&["x", "y"]);
    let d = |s: &[&str]| ideal_dimension(&Ideal::new(&r, polys(&r, s)).unwrap()).unwrap();
    assert_eq!(d(&["x"]), 1);
    assert_eq!(d(&["x", "y"]), 0);
    assert_eq!(d(&["1"]), -1);
    assert_eq!(d(&["x*y - 1"]), 1);
    assert_eq!(d(&["x^2 - y"]), 1);
}

#[test]
fn budget_exhaustion_is_reported() {
    let r = ring(&["x", "y", "z"]);
    let ideal = Ideal::new(&r, polys(&r, &["x^2 - y", "x^3 - z", "y*z - x - 1"])).unwrap();
    let err = groebner_basis_with(&ideal, &MonomialOrder::lex(3), &GbConfig { step_budget: 3 });
    assert!(matches!(err, Err(Error::ResourceExhausted { .. })));
}

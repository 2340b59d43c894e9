use std::collections::HashMap;
use std::sync::Arc;

use netalg::polyalg::{parse_polynomial, parse_rational, MonomialOrder, Polynomial, VariableRing};
use netalg::ratmat::{
    build_pi, clear_denominators, fraction_free_solve, k_minors, RationalMatrix,
};
use netalg::Error;
use proptest::prelude::*;

fn mat(r: &Arc<VariableRing>, rows: &[&[&str]]) -> RationalMatrix {
    let o = MonomialOrder::grevlex(r.arity());
    RationalMatrix::from_rows(
        rows.iter()
            .map(|row| row.iter().map(|s| parse_rational(s, r, &o).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

fn poly(r: &Arc<VariableRing>, s: &str) -> Polynomial {
    parse_polynomial(s, r, &MonomialOrder::grevlex(r.arity())).unwrap()
}

#[test]
fn solve_identity_and_upper_triangular() {
    let r = VariableRing::unknowns(&["G12", "Q1", "Q2"]).unwrap();
    let q = mat(&r, &[&["0", "Q1", "1", "0"], &["1", "0", "Q2", "1"]]);
    let i2 = mat(&r, &[&["1", "0"], &["0", "1"]]);
    assert!(fraction_free_solve(&i2, &q).unwrap().equals(&q).unwrap());
    let p = mat(&r, &[&["1", "-G12"], &["0", "1"]]);
    let x = fraction_free_solve(&p, &q).unwrap();
    let expect = mat(
        &r,
        &[&["G12", "Q1", "1 + G12*Q2", "G12"], &["1", "0", "Q2", "1"]],
    );
    assert!(x.equals(&expect).unwrap(), "got\n{x}");
}

#[test]
fn singular_p_is_not_well_posed() {
    let r = VariableRing::unknowns(&["a"]).unwrap();
    let p = mat(&r, &[&["0", "0"], &["a", "1"]]);
    let q = mat(&r, &[&["1"], &["1"]]);
    assert!(matches!(fraction_free_solve(&p, &q), Err(Error::WellPosedness(_))));
}

#[test]
fn pi_degenerate_cases() {
    let r = VariableRing::unknowns(&["a", "b"]).unwrap();
    let i = mat(&r, &[&["1", "0"], &["0", "1"]]);
    let z = mat(&r, &[&["0", "0"], &["0", "0"]]);
    let q = mat(&r, &[&["a", "0"], &["b", "a*b"]]);
    assert!(build_pi(&i, &q, &i, &z).unwrap().equals(&q).unwrap());
    assert!(build_pi(&i, &q, &z, &q).unwrap().equals(&q).unwrap());
}

#[test]
fn clearing_examples() {
    let r = VariableRing::unknowns(&["G1", "G2", "x", "y"]).unwrap();
    let a = mat(&r, &[&["G1/(1 - G1*G2)", "1/(1 - G1*G2)", "1"], &["1/x", "1/y", "0"]]);
    let c = clear_denominators(&a).unwrap();
    assert_eq!(c.row_denoms[0], poly(&r, "G1*G2 - 1"));
    assert_eq!(c.row_denoms[1], poly(&r, "x*y"));
    assert_eq!(c.polys[0][2], poly(&r, "G1*G2 - 1"));
    assert_eq!(c.polys[1][0], poly(&r, "y"));
    for i in 0..2 {
        for j in 0..3 {
            let lhs = a.get(i, j).numer() * &c.row_denoms[i];
            let rhs = &c.polys[i][j] * a.get(i, j).denom();
            assert_eq!(lhs, rhs);
        }
    }
    let b = mat(&r, &[&["x", "1"], &["0", "y"]]);
    let c = clear_denominators(&b).unwrap();
    assert!(c.row_denoms.iter().all(|d| d.is_one()) && c.denom_product.is_one());
}

#[test]
fn minor_examples() {
    let r = VariableRing::unknowns(&["a", "b", "c", "d"]).unwrap();
    let g = vec![
        vec![poly(&r, "a"), poly(&r, "b")],
        vec![poly(&r, "c"), poly(&r, "d")],
    ];
    assert_eq!(k_minors(&g, 2).unwrap(), vec![poly(&r, "a*d - b*c")]);
    let id: Vec<Vec<Polynomial>> = (0..3)
        .map(|i| (0..3).map(|j| poly(&r, if i == j { "1" } else { "0" })).collect())
        .collect();
    let m = k_minors(&id, 2).unwrap();
    assert_eq!(m.len(), 9);
    assert!(m.iter().all(|p| p.is_zero() || p.is_one()));
    assert!(matches!(k_minors(&id, 4), Err(Error::Precondition(_))));
    assert!(matches!(k_minors(&id, 0), Err(Error::Precondition(_))));
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Structured matrices: each entry is zero, a small constant or a fresh
/// indeterminate, selected by the code 0, 1..=3 or 4.
fn structured(ring: &Arc<VariableRing>, codes: &[u8], n: usize, m: usize, next: &mut usize, diag_one: bool) -> RationalMatrix {
    let o = MonomialOrder::grevlex(ring.arity());
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = Vec::new();
        for j in 0..m {
            let c = codes[(i * m + j) % codes.len()];
            let s = if diag_one && i == j {
                "1".to_string()
            } else {
                match c {
                    0 => "0".into(),
                    1..=3 => format!("{}", c as i32 - 2),
                    _ => {
                        *next += 1;
                        format!("v{}", *next - 1)
                    }
                }
            };
            row.push(parse_rational(&s, ring, &o).unwrap());
        }
        rows.push(row);
    }
    RationalMatrix::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn solve_identity(n in 1usize..=4, m in 1usize..=3, codes in prop::collection::vec(0u8..=4, 1..32)) {
        let names: Vec<String> = (0..40).map(|i| format!("v{i}")).collect();
        let r = VariableRing::unknowns(&names).unwrap();
        let mut next = 0;
        let p = structured(&r, &codes, n, n, &mut next, true);
        let q = structured(&r, &codes[codes.len() / 2..], n, m, &mut next, false);
        match fraction_free_solve(&p, &q) {
            Ok(x) => prop_assert!(p.mul(&x).unwrap().equals(&q).unwrap()),
            Err(Error::WellPosedness(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn minor_count_and_transpose(rows in 1usize..=3, cols in 1usize..=3, k in 1usize..=3, codes in prop::collection::vec(0u8..=4, 1..16)) {
        prop_assume!(k <= rows.min(cols));
        let names: Vec<String> = (0..20).map(|i| format!("v{i}")).collect();
        let r = VariableRing::unknowns(&names).unwrap();
        let mut next = 0;
        let a = structured(&r, &codes, rows, cols, &mut next, false);
        let grid = clear_denominators(&a).unwrap().polys;
        let tgrid: Vec<Vec<Polynomial>> = (0..cols).map(|j| (0..rows).map(|i| grid[i][j].clone()).collect()).collect();
        let m1 = k_minors(&grid, k).unwrap();
        let m2 = k_minors(&tgrid, k).unwrap();
        prop_assert_eq!(m1.len(), binom(rows, k) * binom(cols, k));
        // Multisets of +-minors agree; compare by canonical sign.
        let canon = |ps: &[Polynomial]| {
            let mut h: HashMap<String, usize> = HashMap::new();
            for p in ps {
                let s = if p.leading_coeff().is_some_and(|c| c < &num_rational::BigRational::from_integer(0.into())) { (-p).to_string() } else { p.to_string() };
                *h.entry(s).or_default() += 1;
            }
            h
        };
        prop_assert_eq!(canon(&m1), canon(&m2));
    }
}

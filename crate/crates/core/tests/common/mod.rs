#![allow(dead_code)]

use std::path::PathBuf;

use netalg::netmodel::NetworkSpec;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../networks").join(name)
}

pub fn fixture(name: &str) -> NetworkSpec {
    let src = std::fs::read_to_string(fixture_path(name)).unwrap();
    NetworkSpec::from_json(&src).unwrap()
}

pub fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// JSON entry for a structure code: 0 zero, 1 one, 2 a fresh free name,
/// 3 the constant -1, 4 a fresh negated free name.
pub fn entry_json(code: u8, next: &mut usize) -> serde_json::Value {
    use serde_json::json;
    match code {
        0 => json!(0),
        1 => json!(1),
        3 => json!(-1),
        c => {
            *next += 1;
            json!({"free": format!("x{}", *next), "negated": c == 4})
        }
    }
}

/// A network whose nonzero entries are all distinct free names. The
/// diagonal of `P` is always free, so `P` is generically invertible.
pub fn all_free_network(n: usize, m_r: usize, m_e: usize, p_y: usize, codes: &[u8]) -> NetworkSpec {
    use serde_json::json;
    let mut k = 0usize;
    let mut next = 0usize;
    let mut code = || {
        let c = codes[k % codes.len()];
        k += 1;
        c
    };
    let mut grid = |rows: usize, cols: usize, diag_free: bool, code: &mut dyn FnMut() -> u8| {
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| {
                        if (diag_free && i == j) || code() % 2 == 1 {
                            entry_json(2, &mut next)
                        } else {
                            json!(0)
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
    };
    let p = grid(n, n, true, &mut code);
    let qr = grid(n, m_r, false, &mut code);
    let qe = grid(n, m_e, false, &mut code);
    let ry = grid(p_y, n, false, &mut code);
    let v = json!({
        "dims": {"n": n, "m_r": m_r, "m_e": m_e, "p_y": p_y},
        "labels": {"y": (1..=p_y).map(|i| format!("y{i}")).collect::<Vec<_>>()},
        "P": p, "Qr": qr, "Qe": qe, "Ry": ry,
        "assumptions": {"input_spectrum_positive_definite": true}
    });
    netalg::netmodel::validate_spec(&v).unwrap()
}

/// Source strings of a random ideal: `gens` polynomials over `vars`
/// variables with at most four terms of total degree at most `deg`.
pub fn random_ideal_src(rng: &mut impl rand::Rng, vars: usize, gens: usize, deg: u32) -> (Vec<String>, Vec<String>) {
    let names: Vec<String> = (0..vars).map(|i| format!("v{i}")).collect();
    let polys = (0..gens)
        .map(|_| {
            let terms = rng.gen_range(1..=4);
            let mut s = String::new();
            for t in 0..terms {
                let c: i32 = rng.gen_range(-5..=5);
                let c = if c == 0 { 1 } else { c };
                if t > 0 {
                    s.push_str(" + ");
                }
                s.push_str(&format!("({c})"));
                let mut left = rng.gen_range(0..=deg);
                for n in &names {
                    if left == 0 {
                        break;
                    }
                    let e = rng.gen_range(0..=left);
                    if e > 0 {
                        s.push_str(&format!("*{n}^{e}"));
                        left -= e;
                    }
                }
            }
            s
        })
        .collect();
    (names, polys)
}

pub fn parse_ideal(names: &[String], src: &[String]) -> netalg::groebner::Ideal {
    use netalg::polyalg::{parse_polynomial, MonomialOrder, VariableRing};
    let r = VariableRing::unknowns(names).unwrap();
    let o = MonomialOrder::grevlex(r.arity());
    let gens = src.iter().map(|s| parse_polynomial(s, &r, &o).unwrap()).collect();
    netalg::groebner::Ideal::new(&r, gens).unwrap()
}

/// Determinant over Q by plain Gaussian elimination.
pub fn det_q(mut a: Vec<Vec<netalg::polyalg::Rational>>) -> netalg::polyalg::Rational {
    use netalg::polyalg::Rational;
    use num_traits::{One, Zero};
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let v = &a[c][j] * &f;
                a[i][j] -= v;
            }
        }
    }
    det
}

use netalg::Error;
use netalg_py::{basis, dimension, run_cli};

fn s(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

#[test]
fn basis_and_dimension() {
    let b = basis(&s(&["x", "y", "z"]), &s(&["x^2 - y", "x^3 - z"]), "lex", None).unwrap();
    assert_eq!(b, s(&["y^3 - z^2", "x*z - y^2", "x*y - z", "x^2 - y"]));
    assert_eq!(dimension(&s(&["x", "y"]), &s(&["x*y - 1"]), None).unwrap(), 1);
    assert_eq!(dimension(&s(&["x"]), &s(&["x", "x + 1"]), None).unwrap(), -1);
    assert!(matches!(basis(&s(&["x"]), &s(&["x"]), "deglex", None), Err(Error::MalformedInput(_))));
}

#[test]
fn budget_is_passed_through() {
    let r = basis(&s(&["x", "y", "z"]), &s(&["x^3 - y*z + 1", "y^3 - x*z", "z^3 - x*y - 2"]), "lex", Some(5));
    assert!(matches!(r, Err(Error::ResourceExhausted { .. })));
}

#[test]
fn cli_round_trip() {
    let net = concat!(env!("CARGO_MANIFEST_DIR"), "/../../networks/example1.net");
    let (code, out, _) = run_cli(&s(&["check", net, "--json"]));
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["identifiability"]["dim_vc"], 2);
    let (code, _, err) = run_cli(&s(&["check", "/nonexistent.net"]));
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

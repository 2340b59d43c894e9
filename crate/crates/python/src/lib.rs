//! Python bindings. The analyses go through the command line driver so the
//! Python side sees exactly the report the binary writes.

use netalg::groebner::{groebner_basis_with, ideal_dimension_with, GbConfig, Ideal};
use netalg::polyalg::{parse_polynomial, MonomialOrder, OrderKind, VariableRing};
use netalg::Error;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

create_exception!(netalg, NetalgError, PyValueError);
create_exception!(netalg, BudgetExhausted, PyRuntimeError);

/// Runs the `netalg` command line in-process: `(exit code, stdout, stderr)`.
pub fn run_cli(args: &[String]) -> (i32, String, String) {
    let argv = std::iter::once("netalg".to_string()).chain(args.iter().cloned()).map(std::ffi::OsString::from);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = netalg::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

fn ideal(variables: &[String], generators: &[String], order: &str) -> netalg::Result<(Ideal, MonomialOrder)> {
    let ring = VariableRing::unknowns(variables)?;
    let n = ring.arity();
    let order = match order {
        "grevlex" => MonomialOrder::grevlex(n),
        "lex" => MonomialOrder::new(OrderKind::Lex, (0..n).collect())?,
        o => return Err(Error::MalformedInput(format!("unknown order {o:?}; use grevlex or lex"))),
    };
    let gens = generators
        .iter()
        .map(|g| parse_polynomial(g, &ring, &order))
        .collect::<netalg::Result<Vec<_>>>()?;
    Ok((Ideal::new(&ring, gens)?, order))
}

/// Reduced Gröbner basis as strings.
pub fn basis(variables: &[String], generators: &[String], order: &str, budget: Option<u64>) -> netalg::Result<Vec<String>> {
    let (i, o) = ideal(variables, generators, order)?;
    let gb = groebner_basis_with(&i, &o, &config(budget))?;
    Ok(gb.elements().iter().map(|p| p.to_string()).collect())
}

/// Krull dimension, -1 for the unit ideal.
pub fn dimension(variables: &[String], generators: &[String], budget: Option<u64>) -> netalg::Result<i64> {
    let (i, _) = ideal(variables, generators, "grevlex")?;
    Ok(ideal_dimension_with(&i, &config(budget))?.dim)
}

fn config(budget: Option<u64>) -> GbConfig {
    let mut c = GbConfig::default();
    if let Some(b) = budget {
        c.step_budget = b;
    }
    c
}

fn to_py(e: Error) -> PyErr {
    match e {
        Error::ResourceExhausted { .. } => BudgetExhausted::new_err(e.to_string()),
        e => NetalgError::new_err(e.to_string()),
    }
}

/// Runs the command line with `args`; returns `(code, stdout, stderr)`.
#[pyfunction]
fn run(py: Python<'_>, args: Vec<String>) -> (i32, String, String) {
    py.detach(|| run_cli(&args))
}

/// Analyses a network file and returns the JSON report as a dict.
/// Extra command line flags go in `flags`.
#[pyfunction]
#[pyo3(signature = (path, informativity = true, identifiability = true, flags = None))]
fn check<'py>(
    py: Python<'py>,
    path: String,
    informativity: bool,
    identifiability: bool,
    flags: Option<Vec<String>>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut args = vec!["check".to_string(), path, "--json".to_string()];
    if informativity && !identifiability {
        args.push("--informativity".into());
    } else if identifiability && !informativity {
        args.push("--identifiability".into());
    } else if !informativity {
        return Err(NetalgError::new_err("nothing to check"));
    }
    args.extend(flags.unwrap_or_default());
    let (code, out, err) = py.detach(|| run_cli(&args));
    match code {
        0 | 1 => PyModule::import(py, "json")?.call_method1("loads", (out,)),
        3 => Err(BudgetExhausted::new_err(err.trim().to_string())),
        _ => Err(NetalgError::new_err(err.trim().to_string())),
    }
}

/// Reduced Gröbner basis of the ideal spanned by `generators`.
#[pyfunction]
#[pyo3(signature = (variables, generators, order = "grevlex", budget = None))]
fn groebner_basis(
    py: Python<'_>,
    variables: Vec<String>,
    generators: Vec<String>,
    order: &str,
    budget: Option<u64>,
) -> PyResult<Vec<String>> {
    let order = order.to_string();
    py.detach(|| basis(&variables, &generators, &order, budget)).map_err(to_py)
}

/// Dimension of the variety of `generators`; -1 when it is empty.
#[pyfunction]
#[pyo3(signature = (variables, generators, budget = None))]
fn ideal_dimension(py: Python<'_>, variables: Vec<String>, generators: Vec<String>, budget: Option<u64>) -> PyResult<i64> {
    py.detach(|| dimension(&variables, &generators, budget)).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "netalg")]
fn netalg_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NetalgError", m.py().get_type::<NetalgError>())?;
    m.add("BudgetExhausted", m.py().get_type::<BudgetExhausted>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_dimension, m)?)?;
    Ok(())
}

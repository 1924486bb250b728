//! Python bindings: relation lattices, regulator constants on permutation
//! modules, table verification and the full command-line interface.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use regcon::burnside::{parse_relation, relations_lattice};
use regcon::group::parse::parse_group;
use regcon::group::FiniteGroup;
use regcon::regulator::SquareClass;

const BOUND: usize = 5000;

fn err(e: regcon::Error) -> PyErr {
    PyValueError::new_err(format!("{}: {e}", e.code()))
}

fn group(spec: &str) -> PyResult<FiniteGroup> {
    parse_group(spec, BOUND).map_err(err)
}

/// Subgroup class labels and a basis of the relation lattice as coefficient lists.
#[pyfunction]
fn relation_basis(spec: &str) -> PyResult<(Vec<String>, Vec<Vec<i64>>)> {
    let g = group(spec)?;
    let labels = g.subgroup_lattice().classes.iter().map(|c| c.label.clone()).collect();
    Ok((labels, relations_lattice(&g).into_iter().map(|r| r.coeffs).collect()))
}

/// `C_Θ(Q[G/H])` as `(exact value, square class)`; `relation` is a literal
/// such as `"2*[G] + [1] - 2*[C2] - [C3]"`.
#[pyfunction]
fn regconst_perm(spec: &str, relation: &str, subgroup: &str) -> PyResult<(String, String)> {
    let g = group(spec)?;
    let rel = parse_relation(&g, relation).map_err(err)?;
    let lat = g.subgroup_lattice();
    let k = lat.by_label(subgroup).ok_or_else(|| PyValueError::new_err(format!("no subgroup class labelled {subgroup}")))?;
    let v = regcon::regulator::regconst_perm(&g, &rel, &lat.classes[k].representative);
    let class = SquareClass::from_rational(&v).map_err(err)?;
    Ok((v.to_string(), class.to_string()))
}

/// Whether a dihedral table is consistent in the given Kodaira variant.
#[pyfunction]
fn verify_table(table_id: &str, star: bool) -> PyResult<bool> {
    Ok(regcon::local::verify_dihedral_tables(table_id, star).map_err(err)?.holds)
}

/// Run the command-line interface; returns `(exit code, stdout, stderr)`.
#[pyfunction]
#[pyo3(signature = (args, stdin = ""))]
fn cli(args: Vec<String>, stdin: &str) -> (i32, String, String) {
    let out = regcon_cli::run(std::iter::once("regcon".to_string()).chain(args), stdin);
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn regcon_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(relation_basis, m)?)?;
    m.add_function(wrap_pyfunction!(regconst_perm, m)?)?;
    m.add_function(wrap_pyfunction!(verify_table, m)?)?;
    m.add_function(wrap_pyfunction!(cli, m)?)?;
    Ok(())
}

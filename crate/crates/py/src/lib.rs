//! Python module `latkit`. Structures go in as JSON-shaped Python values
//! (or JSON text) and results come back as plain dicts and lists.

use std::sync::Arc;

use latkit::embedding::{self, EmbeddingError, RangeFilters, DEFAULT_NODE_BUDGET};
use latkit::io::{MapSpec, PosetSpec, TopologySpec};
use latkit::lattice::{self, SubposetAnalysis};
use latkit::product::ChainProduct;
use latkit::{enumerate, verify, QuasiOrder};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde_json::Value;

create_exception!(latkit, BudgetExceeded, PyRuntimeError);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn embedding_err(e: EmbeddingError) -> PyErr {
    match e {
        EmbeddingError::BudgetExceeded { .. } => BudgetExceeded::new_err(e.to_string()),
        other => value_err(other),
    }
}

fn json_text(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.cast::<PyString>() {
        return Ok(s.to_str()?.to_owned());
    }
    let json = obj.py().import("json")?;
    json.call_method1("dumps", (obj,))?.extract()
}

fn from_json<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    serde_json::from_str(&json_text(obj)?).map_err(value_err)
}

fn to_py<'py>(py: Python<'py>, v: impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(&v).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn poset(obj: &Bound<'_, PyAny>) -> PyResult<QuasiOrder> {
    from_json::<PosetSpec>(obj)?.build().map_err(value_err)
}

/// Lattice-theoretic flags of a poset.
#[pyfunction]
fn classify<'py>(py: Python<'py>, order: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, lattice::classify(&poset(order)?).map_err(value_err)?)
}

/// Convexity, (pre)regularity and order-closure verdicts for a subset.
#[pyfunction]
fn subset_properties<'py>(
    py: Python<'py>,
    order: &Bound<'py, PyAny>,
    subset: Vec<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let o = poset(order)?;
    let a = latkit::io::subset_from_indices(o.size(), &subset).map_err(value_err)?;
    let analysis = SubposetAnalysis::new(Arc::new(o), a).map_err(value_err)?;
    to_py(py, analysis.verdicts())
}

/// Images of all order embeddings `dom -> cod`, optionally restricted to
/// convex or preregular range.
#[pyfunction]
#[pyo3(signature = (dom, cod, filter = "none", budget = DEFAULT_NODE_BUDGET))]
fn embeddings(
    py: Python<'_>,
    dom: &Bound<'_, PyAny>,
    cod: &Bound<'_, PyAny>,
    filter: &str,
    budget: u64,
) -> PyResult<Vec<Vec<usize>>> {
    let filters = match filter {
        "none" => RangeFilters::NONE,
        "convex" => RangeFilters::CONVEX,
        "preregular" => RangeFilters::PREREGULAR,
        other => return Err(PyValueError::new_err(format!("unknown filter {other:?}"))),
    };
    let (p, q) = (Arc::new(poset(dom)?), Arc::new(poset(cod)?));
    let census = py
        .detach(|| embedding::enumerate_embeddings(p, q, filters, budget))
        .map_err(embedding_err)?;
    Ok(census.images().map(<[usize]>::to_vec).collect())
}

/// Continuity and range checks for a monotone map `{"dom", "cod", "image"}`.
#[pyfunction]
fn map_properties<'py>(py: Python<'py>, map: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let sigma = from_json::<MapSpec>(map)?.build().map_err(value_err)?;
    if sigma.dom().size() > embedding::CONTINUITY_LIMIT {
        return Err(PyValueError::new_err("domain too large for the continuity checks"));
    }
    let out = serde_json::json!({
        "embedding": sigma.is_embedding(),
        "range": sigma.range().to_vec(),
        "convex_range": lattice::is_convex(sigma.cod(), &sigma.range()),
        "continuity": embedding::continuity_checks(&sigma),
        "ranges": embedding::range_property_checks(&sigma),
    });
    to_py(py, out)
}

/// Posets (or lattices) with exactly `n` elements, one per isomorphism class.
#[pyfunction]
#[pyo3(signature = (n, lattices_only = false))]
fn posets<'py>(py: Python<'py>, n: usize, lattices_only: bool) -> PyResult<Bound<'py, PyAny>> {
    if n > enumerate::POSET_LIMIT {
        return Err(PyValueError::new_err(format!("n is limited to {}", enumerate::POSET_LIMIT)));
    }
    let list = if lattices_only { enumerate::lattices_up_to_iso(n) } else { enumerate::posets_up_to_iso(n) };
    to_py(py, list.iter().map(PosetSpec::from_order).collect::<Vec<_>>())
}

/// All topologies on `n` labelled points.
#[pyfunction]
fn topologies<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    let all = latkit::topology::enumerate_topologies(n).map_err(value_err)?;
    to_py(py, all.iter().map(TopologySpec::from_topology).collect::<Vec<_>>())
}

/// Regular-open and category-algebra data for a topology `{"points", "opens"}`.
#[pyfunction]
fn topology_properties<'py>(py: Python<'py>, space: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let t = from_json::<TopologySpec>(space)?.build().map_err(value_err)?;
    let iso = t.ro_isomorphism().map_err(value_err)?;
    let out = serde_json::json!({
        "baire": t.is_baire(),
        "largest_open_meager": t.largest_open_meager().to_vec(),
        "regular_opens": t.regular_opens().iter().map(|s| s.to_vec()).collect::<Vec<_>>(),
        "zero_dimensional": t.is_zero_dimensional(),
        "ro_isomorphism": iso,
    });
    to_py(py, out)
}

/// Runs a theorem verifier and returns its report.
///
/// Names: `powerset-form` (x, y), `chainprod-form` (k, m, i, j),
/// `preregular-continuity` (max_size), `convex-preregular` (max_size),
/// `extension` (x, y), `cat-ro-iso` (points), `monoid-laws` (dims,
/// samples, seed), `group-completion`, `atom-laws`.
#[pyfunction]
#[pyo3(signature = (name, x = 2, y = 3, k = 2, m = 2, i = 1, j = 2, points = 3, max_size = 4,
                    dims = 2, samples = 1000, seed = 0x5eed, budget = DEFAULT_NODE_BUDGET))]
#[allow(clippy::too_many_arguments)]
fn run_verifier<'py>(
    py: Python<'py>,
    name: &str,
    x: usize,
    y: usize,
    k: usize,
    m: usize,
    i: usize,
    j: usize,
    points: usize,
    max_size: usize,
    dims: usize,
    samples: usize,
    seed: u64,
    budget: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let limits = [("x", x, 4), ("y", y, 5), ("k", k, 8), ("m", m, 8), ("i", i, 4), ("j", j, 4)];
    let limits = limits.into_iter().chain([("points", points, 5), ("max_size", max_size, 6), ("dims", dims, 8)]);
    for (arg, value, max) in limits {
        if value > max {
            return Err(PyValueError::new_err(format!("{arg}={value} is above the supported maximum {max}")));
        }
    }
    let report = py.detach(|| -> Result<verify::SweepReport, PyErr> {
        Ok(match name {
            "powerset-form" => verify::powerset_form(x, y, budget).map_err(embedding_err)?,
            "chainprod-form" => {
                verify::chainprod_form(ChainProduct::new(k, i), ChainProduct::new(m, j), budget)
                    .map_err(embedding_err)?
            }
            "preregular-continuity" => {
                verify::preregular_continuity_sweep(max_size, budget).map_err(embedding_err)?
            }
            "convex-preregular" => verify::convex_preregular_sweep(max_size),
            "extension" => verify::extension_powerset(x, y, budget).map_err(embedding_err)?,
            "cat-ro-iso" => verify::cat_ro_iso(points).map_err(value_err)?,
            "monoid-laws" => verify::monoid_laws(dims, samples, seed),
            "group-completion" => verify::group_completion(),
            "atom-laws" => verify::atom_laws(budget).map_err(embedding_err)?,
            other => return Err(PyValueError::new_err(format!("unknown verifier {other:?}"))),
        })
    })?;
    let mut out: Value = serde_json::to_value(&report).map_err(value_err)?;
    out["passed"] = Value::Bool(report.passed());
    to_py(py, out)
}

#[pymodule]
#[pyo3(name = "latkit")]
fn latkit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(subset_properties, m)?)?;
    m.add_function(wrap_pyfunction!(embeddings, m)?)?;
    m.add_function(wrap_pyfunction!(map_properties, m)?)?;
    m.add_function(wrap_pyfunction!(posets, m)?)?;
    m.add_function(wrap_pyfunction!(topologies, m)?)?;
    m.add_function(wrap_pyfunction!(topology_properties, m)?)?;
    m.add_function(wrap_pyfunction!(run_verifier, m)?)?;
    Ok(())
}

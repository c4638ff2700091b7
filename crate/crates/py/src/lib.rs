//! Python bindings: permutations, permutation groups, Sylow graphs, and
//! the arithmetic layer (Zsigmondy primes, order formulas, the arrow
//! predictor), mirroring the Rust API behind a small class surface.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use sylowgraph::arith::{self, LieFamily, LieTypeSpec, Sign};
use sylowgraph::report::GraphReport;
use sylowgraph::{catalog, graph, subgrp, Ctx};

fn err<T>(e: sylowgraph::Error) -> PyResult<T> {
    Err(PyValueError::new_err(e.to_string()))
}

fn parse_sign(eps: &str) -> PyResult<Sign> {
    match eps {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(PyValueError::new_err(format!(
            "eps must be '+' or '-', got '{}'",
            other
        ))),
    }
}

/// A permutation on points 0..degree-1 in 1-indexed cycle notation.
#[pyclass(name = "Permutation", from_py_object)]
#[derive(Clone)]
struct PyPermutation {
    inner: sylowgraph::Permutation,
}

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        match sylowgraph::Permutation::parse_cycles(cycles, degree) {
            Ok(inner) => Ok(PyPermutation { inner }),
            Err(e) => err(e),
        }
    }

    #[staticmethod]
    fn identity(degree: usize) -> PyPermutation {
        PyPermutation {
            inner: sylowgraph::Permutation::identity(degree),
        }
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn order(&self) -> u128 {
        self.inner.order()
    }

    fn inverse(&self) -> PyPermutation {
        PyPermutation {
            inner: self.inner.inverse(),
        }
    }

    /// Composition applying self first, then other.
    fn __mul__(&self, other: &PyPermutation) -> PyResult<PyPermutation> {
        match self.inner.compose(&other.inner) {
            Ok(inner) => Ok(PyPermutation { inner }),
            Err(e) => err(e),
        }
    }

    fn conjugate_by(&self, g: &PyPermutation) -> PyResult<PyPermutation> {
        match self.inner.conjugate_by(&g.inner) {
            Ok(inner) => Ok(PyPermutation { inner }),
            Err(e) => err(e),
        }
    }

    fn apply(&self, point: u16) -> u16 {
        self.inner.apply(point)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation(\"{}\", {})", self.inner, self.inner.degree())
    }

    fn __eq__(&self, other: &PyPermutation) -> bool {
        self.inner == other.inner
    }
}

/// A finite permutation group with exact (arbitrary-precision) order.
#[pyclass(name = "PermGroup")]
struct PyPermGroup {
    label: String,
    inner: sylowgraph::PermGroup,
    ctx: Ctx,
}

#[pymethods]
impl PyPermGroup {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn order(&self) -> BigUint {
        self.inner.order().clone()
    }

    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(|g| g.to_string()).collect()
    }

    fn contains(&self, g: &PyPermutation) -> PyResult<bool> {
        self.inner.contains(&g.inner).or_else(err)
    }

    fn is_transitive(&self) -> bool {
        self.inner.is_transitive()
    }

    fn is_soluble(&self) -> PyResult<bool> {
        subgrp::is_soluble(&self.inner, &self.ctx).or_else(err)
    }

    fn is_real(&self, z: &PyPermutation) -> PyResult<bool> {
        subgrp::is_real(&self.inner, &z.inner, &self.ctx).or_else(err)
    }

    fn sylow_order(&self, p: u64) -> PyResult<BigUint> {
        match subgrp::sylow(&self.inner, p, &self.ctx) {
            Ok(s) => Ok(s.group().order().clone()),
            Err(e) => err(e),
        }
    }

    fn sylow_normalizer_order(&self, p: u64) -> PyResult<BigUint> {
        let syl = subgrp::sylow(&self.inner, p, &self.ctx).or_else(err)?;
        match subgrp::normalizer(&self.inner, &syl, &self.ctx) {
            Ok(n) => Ok(n.group().order().clone()),
            Err(e) => err(e),
        }
    }

    fn automiser_order(&self, p: u64) -> PyResult<BigUint> {
        graph::automiser_order(&self.inner, p, &self.ctx).or_else(err)
    }

    fn sylow_graph(&self) -> PyResult<PySylowGraph> {
        match graph::sylow_graph(&self.inner, &self.label, &self.ctx) {
            Ok(inner) => Ok(PySylowGraph { inner }),
            Err(e) => err(e),
        }
    }
}

/// A computed Sylow graph.
#[pyclass(name = "SylowGraph")]
struct PySylowGraph {
    inner: graph::SylowGraph,
}

#[pymethods]
impl PySylowGraph {
    fn vertices(&self) -> Vec<u64> {
        self.inner.vertices.clone()
    }

    /// Arrows as (from, to, automiser_order) triples.
    fn arrows(&self) -> Vec<(u64, u64, BigUint)> {
        self.inner
            .arrows
            .iter()
            .map(|a| (a.from, a.to, a.automiser_order.clone()))
            .collect()
    }

    fn connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn diameter(&self) -> Option<u32> {
        self.inner.diameter()
    }

    fn distance(&self, p: u64, q: u64) -> PyResult<Option<u32>> {
        self.inner.distance(p, q).or_else(err)
    }

    fn to_json(&self) -> String {
        GraphReport::from_graph(&self.inner).to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "SylowGraph({}, vertices {:?}, {} arrows)",
            self.inner.group_label,
            self.inner.vertices,
            self.inner.arrows.len()
        )
    }
}

/// Builds a group from the mini-language ("A8", "M11", "PSL2(27):3",
/// "S3 x C5", ...).
#[pyfunction]
#[pyo3(signature = (spec, max_order=30_000_000, max_class_size=2_000_000, seed=0x51_1097))]
fn group(spec: &str, max_order: u64, max_class_size: u64, seed: u64) -> PyResult<PyPermGroup> {
    let ctx = Ctx {
        max_order_enum: max_order,
        max_class_size,
        seed,
        ..Ctx::default()
    };
    match catalog::parse_group(spec, &ctx) {
        Ok((label, inner)) => Ok(PyPermGroup { label, inner, ctx }),
        Err(e) => err(e),
    }
}

/// Smallest primitive prime for (p, n), or None in the exceptional cases.
#[pyfunction]
fn zsigmondy(p: u64, n: u32) -> PyResult<Option<BigUint>> {
    arith::zsigmondy(p, n, &Ctx::default()).or_else(err)
}

#[pyfunction]
fn zsigmondy_exists(p: u64, n: u32) -> PyResult<bool> {
    arith::zsigmondy_exists(p, n).or_else(err)
}

/// Order of E6(q) (eps = "+") or 2E6(q) (eps = "-").
#[pyfunction]
fn order_e6(q: u64, eps: &str) -> PyResult<BigUint> {
    Ok(arith::order_e6(q, parse_sign(eps)?))
}

/// Weyl group order for families A, D, 2D, E6, 2E6.
#[pyfunction]
fn weyl_order(family: &str, rank: u32) -> PyResult<BigUint> {
    let fam = LieFamily::parse(family).or_else(err)?;
    arith::weyl_order(fam, rank).or_else(err)
}

/// Arrows the arithmetic guarantees in the Sylow graph of the given
/// Lie-type socle, as (from, to, justification) triples.
#[pyfunction]
#[pyo3(signature = (family, l, q, eps="+"))]
fn predicted_edges(family: &str, l: u32, q: u64, eps: &str) -> PyResult<Vec<(u64, u64, String)>> {
    let ctx = Ctx::default();
    let fam = LieFamily::parse(family).or_else(err)?;
    let sign = if fam.is_twisted() { Sign::Minus } else { parse_sign(eps)? };
    let spec = match fam {
        LieFamily::A | LieFamily::TwoA => {
            let fam = if sign == Sign::Minus { LieFamily::TwoA } else { fam };
            LieTypeSpec::new(fam, l, q, &ctx)
        }
        LieFamily::D | LieFamily::TwoD => {
            let fam = if sign == Sign::Minus { LieFamily::TwoD } else { fam };
            LieTypeSpec::new(fam, 2 * l + 1, q, &ctx)
        }
        LieFamily::E6 | LieFamily::TwoE6 => {
            let fam = if sign == Sign::Minus { LieFamily::TwoE6 } else { fam };
            LieTypeSpec::new(fam, 6, q, &ctx)
        }
        other => return err(sylowgraph::Error::UnsupportedFamily(other.to_string())),
    }
    .or_else(err)?;
    match arith::predicted_edges(&spec, &ctx) {
        Ok(arrows) => Ok(arrows
            .into_iter()
            .map(|a| (a.from, a.to, a.justification.to_string()))
            .collect()),
        Err(e) => err(e),
    }
}

/// Fineness of a Lie-type root system (not A_l with l > 1, D_{2l+1}, E6).
#[pyfunction]
fn is_fine(family: &str, rank: u32, q: u64) -> PyResult<bool> {
    let fam = LieFamily::parse(family).or_else(err)?;
    let spec = LieTypeSpec::new(fam, rank, q, &Ctx::default()).or_else(err)?;
    Ok(arith::is_fine(&spec))
}

#[pymodule]
fn sylowgraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PySylowGraph>()?;
    m.add_function(wrap_pyfunction!(group, m)?)?;
    m.add_function(wrap_pyfunction!(zsigmondy, m)?)?;
    m.add_function(wrap_pyfunction!(zsigmondy_exists, m)?)?;
    m.add_function(wrap_pyfunction!(order_e6, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_order, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_edges, m)?)?;
    m.add_function(wrap_pyfunction!(is_fine, m)?)?;
    Ok(())
}

//! Python bindings: trees, both codecs, enumeration, sampling and the
//! identity verifiers.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rptree::experiments::{self, VerifyOptions};
use rptree::{Label, LabeledTree, LeafOrder, PruferCode, RootPolicy, RpCode, StepCase};

fn py_err(e: rptree::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn leaf_order(name: &str) -> PyResult<LeafOrder> {
    match name {
        "smallest" => Ok(LeafOrder::Smallest),
        "largest" => Ok(LeafOrder::Largest),
        other => Err(PyValueError::new_err(format!(
            "leaf order must be \"smallest\" or \"largest\", got {other:?}"
        ))),
    }
}

fn policy(all_roots: bool) -> RootPolicy {
    if all_roots {
        RootPolicy::AllRoots
    } else {
        RootPolicy::RootOne
    }
}

/// A labeled rooted tree on 1..=n.
#[pyclass(
    name = "Tree",
    eq,
    hash,
    frozen,
    skip_from_py_object,
    module = "pyrptree"
)]
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct PyTree {
    inner: LabeledTree,
}

impl From<LabeledTree> for PyTree {
    fn from(inner: LabeledTree) -> Self {
        PyTree { inner }
    }
}

#[pymethods]
impl PyTree {
    /// Builds a tree from its parent array, root written as 0.
    #[new]
    fn new(parents: Vec<Label>) -> PyResult<Self> {
        LabeledTree::from_parent_array(&parents)
            .map(Self::from)
            .map_err(py_err)
    }

    #[staticmethod]
    fn from_edges(root: Label, edges: Vec<(Label, Label)>) -> PyResult<Self> {
        LabeledTree::from_edges(root, &edges)
            .map(Self::from)
            .map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn root(&self) -> Label {
        self.inner.root()
    }

    #[getter]
    fn parents(&self) -> Vec<Label> {
        self.inner.parent_array().to_vec()
    }

    /// `(parent, child)` pairs ordered by child.
    fn edges(&self) -> Vec<(Label, Label)> {
        self.inner.edges()
    }

    fn reroot(&self, root: Label) -> PyResult<Self> {
        self.inner.reroot(root).map(Self::from).map_err(py_err)
    }

    fn descendants(&self, v: Label) -> PyResult<Vec<Label>> {
        self.inner.descendants(v).map_err(py_err)
    }

    fn degree(&self, v: Label) -> PyResult<usize> {
        self.inner.degree(v).map_err(py_err)
    }

    fn leaders(&self) -> Vec<Label> {
        self.inner.leaders()
    }

    #[getter]
    fn lead(&self) -> usize {
        self.inner.leaders().len()
    }

    fn indegree(&self) -> Vec<usize> {
        self.inner.indegree_vector()
    }

    fn __repr__(&self) -> String {
        format!("Tree({:?})", self.inner.parent_array())
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }
}

#[pyfunction]
fn rp_encode(tree: &PyTree) -> Vec<Label> {
    rptree::rp_encode(&tree.inner).into_entries()
}

/// Decodes an RP-code; pass `n` when the code is empty.
#[pyfunction]
#[pyo3(signature = (code, n = None))]
fn rp_decode(code: Vec<Label>, n: Option<usize>) -> PyResult<PyTree> {
    let n = n.unwrap_or(code.len() + 1);
    let code = RpCode::new(n, code).map_err(py_err)?;
    Ok(rptree::rp_decode(&code).into())
}

fn case_name(case: StepCase) -> &'static str {
    match case {
        StepCase::AlreadyPresent => "already_present",
        StepCase::NewEqualsMin => "new_equals_min",
        StepCase::NewNotMin => "new_not_min",
        StepCase::FinalLabel => "final_label",
    }
}

/// Decodes and returns `(tree, steps)`, one dict per labeling step.
#[pyfunction]
#[pyo3(signature = (code, n = None))]
fn rp_decode_annotated<'py>(
    py: Python<'py>,
    code: Vec<Label>,
    n: Option<usize>,
) -> PyResult<(PyTree, Vec<Bound<'py, PyDict>>)> {
    let n = n.unwrap_or(code.len() + 1);
    let code = RpCode::new(n, code).map_err(py_err)?;
    let (tree, notes) = rptree::rp_decode_annotated(&code);
    let steps = notes
        .iter()
        .map(|a| {
            let d = PyDict::new(py);
            d.set_item("step", a.step)?;
            d.set_item("case", case_name(a.case))?;
            d.set_item("predicted_leader", a.predicted_leader)?;
            d.set_item("assigned_label", a.assigned_label)?;
            Ok(d)
        })
        .collect::<PyResult<Vec<_>>>()?;
    Ok((tree.into(), steps))
}

#[pyfunction]
#[pyo3(signature = (tree, order = "smallest", extended = false))]
fn prufer_encode(tree: &PyTree, order: &str, extended: bool) -> PyResult<Vec<Label>> {
    let code = rptree::prufer_encode_with(&tree.inner, leaf_order(order)?).map_err(py_err)?;
    Ok(if extended {
        code.extended()
    } else {
        code.entries().to_vec()
    })
}

/// Decodes a Prüfer code into a tree rooted at 1; pass `n` when the
/// plain code is empty.
#[pyfunction]
#[pyo3(signature = (code, n = None, order = "smallest", extended = false))]
fn prufer_decode(
    code: Vec<Label>,
    n: Option<usize>,
    order: &str,
    extended: bool,
) -> PyResult<PyTree> {
    let order = leaf_order(order)?;
    let code = if extended {
        PruferCode::from_extended(code, order)
    } else {
        let n = n.unwrap_or(code.len() + 2);
        PruferCode::with_order(n, code, order)
    }
    .map_err(py_err)?;
    Ok(rptree::prufer_decode(&code).into())
}

#[pyfunction]
fn reversal_check(tree: &PyTree) -> PyResult<bool> {
    rptree::reversal_check(&tree.inner).map_err(py_err)
}

#[pyfunction]
fn sample_tree(n: usize, seed: u64) -> PyResult<PyTree> {
    rptree::sample_tree(n, seed)
        .map(PyTree::from)
        .map_err(py_err)
}

#[pyfunction]
fn sample_trees(n: usize, count: usize, seed: u64) -> PyResult<Vec<PyTree>> {
    let sampler = rptree::TreeSampler::new(n, seed).map_err(py_err)?;
    Ok(sampler.take(count).map(PyTree::from).collect())
}

#[pyfunction]
#[pyo3(signature = (n, all_roots = false))]
fn enumerate_trees(n: usize, all_roots: bool) -> PyResult<Vec<PyTree>> {
    let trees = rptree::enumerate_trees(n, policy(all_roots), rptree::enumerate::DEFAULT_CAP)
        .map_err(py_err)?;
    Ok(trees.map(PyTree::from).collect())
}

/// Runs one exhaustive check and returns its report as a dict.
#[pyfunction]
#[pyo3(signature = (identity, n, k = None, all_roots = false, cap = None))]
fn verify<'py>(
    py: Python<'py>,
    identity: &str,
    n: usize,
    k: Option<usize>,
    all_roots: bool,
    cap: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = VerifyOptions { cap, timing: false };
    let report = match (identity, k) {
        ("main", None) => experiments::verify_main(n, &opts),
        ("indegree", None) => experiments::verify_indegree(n, &opts),
        ("reversal", None) => experiments::verify_reversal(n, &opts),
        ("roundtrip", None) => experiments::verify_roundtrip(n, policy(all_roots), &opts),
        ("choices", None) => experiments::verify_choice_counts(n, &opts),
        ("ordered", None) => experiments::verify_ordered(n, &opts),
        ("kary", Some(k)) => experiments::verify_kary(n, k, &opts),
        ("kary", None) => return Err(PyValueError::new_err("identity \"kary\" needs k")),
        (_, Some(_)) => return Err(PyValueError::new_err("k only applies to identity \"kary\"")),
        (other, None) => return Err(PyValueError::new_err(format!("unknown identity {other:?}"))),
    }
    .map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("identity", &report.identity)?;
    d.set_item("n", report.n)?;
    d.set_item("k", report.k)?;
    d.set_item("lhs", &report.lhs)?;
    d.set_item("rhs", &report.rhs)?;
    d.set_item("equal", report.is_equal())?;
    d.set_item("count", report.count)?;
    d.set_item("note", &report.note)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (n, samples = 160_000, seed = 1))]
fn uniformity_test<'py>(
    py: Python<'py>,
    n: usize,
    samples: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let report = experiments::uniformity_test(n, samples, seed).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("n", report.n)?;
    d.set_item("samples", report.samples)?;
    d.set_item("trees", report.trees)?;
    d.set_item("statistic", report.statistic)?;
    d.set_item("df", report.df)?;
    d.set_item("threshold", report.threshold)?;
    d.set_item("passed", report.pass)?;
    d.set_item("counts", report.counts)?;
    Ok(d)
}

/// `u P_{n-1}(1, u, cu)` as text.
#[pyfunction]
fn rhs_main(n: usize) -> PyResult<String> {
    rptree::rhs_main(n).map(|p| p.to_string()).map_err(py_err)
}

#[pyfunction]
fn product_formula(n: usize) -> PyResult<String> {
    rptree::product_formula(n)
        .map(|p| p.to_string())
        .map_err(py_err)
}

/// Leader/degree sum over all trees rooted at 1, as text.
#[pyfunction]
fn lead_degree_polynomial(n: usize) -> PyResult<String> {
    experiments::lhs_main(n)
        .map(|p| p.to_string())
        .map_err(py_err)
}

#[pymodule]
fn pyrptree(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(rp_encode, m)?)?;
    m.add_function(wrap_pyfunction!(rp_decode, m)?)?;
    m.add_function(wrap_pyfunction!(rp_decode_annotated, m)?)?;
    m.add_function(wrap_pyfunction!(prufer_encode, m)?)?;
    m.add_function(wrap_pyfunction!(prufer_decode, m)?)?;
    m.add_function(wrap_pyfunction!(reversal_check, m)?)?;
    m.add_function(wrap_pyfunction!(sample_tree, m)?)?;
    m.add_function(wrap_pyfunction!(sample_trees, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_trees, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(uniformity_test, m)?)?;
    m.add_function(wrap_pyfunction!(rhs_main, m)?)?;
    m.add_function(wrap_pyfunction!(product_formula, m)?)?;
    m.add_function(wrap_pyfunction!(lead_degree_polynomial, m)?)?;
    Ok(())
}

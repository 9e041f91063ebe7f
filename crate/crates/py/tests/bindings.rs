//! Drives the module through an embedded interpreter.

use pyo3::prelude::*;
use pyo3::types::PyDict;
use pyo3::wrap_pymodule;

fn run(code: &str) {
    Python::initialize();
    Python::attach(|py| {
        let module = wrap_pymodule!(annigraph_py::annigraph_module)(py);
        let globals = PyDict::new(py);
        globals.set_item("annigraph", module).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        if let Err(e) = py.run(&code, Some(&globals), None) {
            e.print(py);
            panic!("python code failed");
        }
    });
}

#[test]
fn ring_basics() {
    run(r#"
Ring = annigraph.Ring
r = Ring.from_modulus(72)
assert r.orders == [3, 2] and r.factor_count == 2 and r.field_count == 0
assert r.vertex_count == 10
assert Ring.parse("1,3").canonicalize() == Ring([3, 1])
assert str(Ring([2, 1])) == "2,1" and repr(Ring([2, 1])) == "Ring([2, 1])"
assert len({Ring([2]), Ring([2]), Ring([3])}) == 2
assert Ring([2, 1]).vertices() == [(0, 1), (1, 0), (1, 1), (2, 0)]
assert Ring([2, 1]).is_vertex((1, 1)) and not Ring([2, 1]).is_vertex([2, 1])
assert Ring([3, 2]).product((1, 1), (1, 0)) == (2, 1)
"#);
}

#[test]
fn distances_and_constructions() {
    run(r#"
r = annigraph.Ring([2, 1])
assert r.distance_branch((0, 1), (1, 0)) == (3, "Lemma-3")
assert r.distance_branch((1, 0), (1, 0)) == (0, "equal")
assert r.distance_branch((1, 1), (1, 0)) == (1, "product-zero")
g = r.graph()
for m in g.vertices():
    for l in g.vertices():
        assert r.distance(m, l) == g.distance_bfs(m, l)
assert g.diameter() == 3
r = annigraph.Ring([3, 2, 1])
assert r.ideal_i(1, 0) == (0, 2, 1)
x = r.constructed_resolving_set()
assert len(x) == r.bounds()["upper"] == 6
assert r.graph().is_resolving(x)["resolves"]
"#);
}

#[test]
fn solver_and_reports() {
    run(r#"
for n in range(1, 10):
    g = annigraph.Ring([n]).graph()
    assert g.metric_dimension()[0] == (n - 1) // 2
r = annigraph.Ring([1, 1, 1])
dim, basis = r.graph().metric_dimension(oracle="bfs")
assert dim == 2 and r.graph().is_resolving(basis)["resolves"]
rep = r.report(exact_cap=10)
assert rep["exact_solver"] == 2 and rep["verdict"] == "WithinBounds"
rep = annigraph.Ring([2, 2]).report(exact=False)
assert rep["exact_solver"] is None and rep["verdict"] == "UNVERIFIED"
assert len(annigraph.grid(2, 5, ordered=True)) == 30
assert annigraph.epsilon_general(1) == 0 and annigraph.epsilon_general(4) == 2
"#);
}

#[test]
fn errors_become_value_errors() {
    run(r#"
def raises(f, text):
    try:
        f()
    except ValueError as e:
        assert text in str(e), str(e)
    else:
        raise AssertionError("no error")
raises(lambda: annigraph.Ring([]), "")
raises(lambda: annigraph.Ring.from_modulus(1), "")
raises(lambda: annigraph.Ring([2, 1]).distance((2, 1), (1, 0)), "zero ideal")
raises(lambda: annigraph.Ring([3, 3]).graph(vertex_cap=5), "14 vertices")
raises(lambda: annigraph.Ring([3, 3]).report(exact_cap=10), "cap of 10")
raises(lambda: annigraph.Ring([2]).graph().export("svg"), "svg")
raises(lambda: annigraph.Ring([2]).graph().metric_dimension(oracle="x"), "closed")
raises(lambda: annigraph.epsilon_general(-1), "")
"#);
}

use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) -> PyResult<()> {
    Python::with_gil(|py| {
        let globals = PyDict::new_bound(py);
        py.run_bound(code, Some(&globals), None)
    })
}

fn init() {
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| {
        use bispectral::bispectral as module;
        pyo3::append_to_inittab!(module);
        pyo3::prepare_freethreaded_python();
    });
}

#[test]
fn operators_from_python() {
    init();
    run(r#"
import bispectral as b
p = b.Params("2", "0", "1/3")
lt = b.jacobi_l_tilde(p)
assert lt.involution(p) == lt
q = b.Params("1", "0", "1/3")
assert b.contiguous_d("alpha_up", q) @ b.contiguous_d("alpha_down", p) == b.jacobi_l(p) - b.DiffOp.identity()
assert b.DiffOp.from_json(lt.to_json()) == lt
d = b.decompose_right(lt, p)
assert d.evaluate(p) == lt and d.denom == "1"
"#)
    .unwrap();
}

#[test]
fn bundle_and_errors() {
    init();
    run(r#"
import json
import bispectral as b
p = b.Params("2", "0", "1/3")
bd = b.DarbouxBundle(b.DarbouxSpec(p, 2, 0, a=["1", "0"], b=["2", "5/7"]))
assert bd.check_identities()
assert json.loads(bd.to_json())["P"]["support"] == [-2, 0]
bad = b.DarbouxSpec(p, 1, 0, a=["1"], b=["-1"])
assert not bad.is_admissible()
for args, exc in [(("1", "0", "1"), b.ConditionError)]:
    try:
        b.Params(*args)
        raise AssertionError("accepted")
    except exc:
        pass
assert issubclass(b.ScopeError, b.BispectralError)
"#)
    .unwrap();
}

#[test]
fn dual_from_python() {
    init();
    run(r#"
import bispectral as b
spec = b.DarbouxSpec(b.Params("1", "1", "2/7"), 1, 1, a=["1"], b=["3/2"], c=["1"], d=["-2/5"])
c = b.build_dual(b.DarbouxBundle(spec), order=20, window=(-2, 2))
assert c.verified_order == 20 and c.ino and c.shift == 1
"#)
    .unwrap();
}

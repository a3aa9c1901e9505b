//! Drives the module from an embedded interpreter.

use std::ffi::CString;

use bicomplex_py::bicomplex_py;
use pyo3::prelude::*;

fn run(code: &str) {
    // One interpreter per test binary; registration must precede it.
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        pyo3::append_to_inittab!(bicomplex_py);
        Python::initialize();
    });
    Python::attach(|py| {
        let code = CString::new(code).unwrap();
        if let Err(e) = py.run(&code, None, None) {
            e.print(py);
            panic!("python failed");
        }
    });
}

#[test]
fn tables_and_maps() {
    run(r#"
import bicomplex as bc
iw = bc.generate("iwasawa")
assert [iw.betti(k) for k in range(7)] == [1, 4, 8, 10, 8, 4, 1]
assert iw.dim("bc", 1, 1) == 4 and iw.dim("a", 1, 1) == 8
t = iw.table()
assert len(t["rows"]) == 16
assert t["degrees"][3]["margin"] == 4
maps = iw.natural_maps(1, 1)
assert len(maps) == 7
m = iw.natural_maps(1, 1, "bc", "dr")[0]
assert m["source_dim"] == 4 and (m["matrix"]["rows"], m["matrix"]["cols"]) == (8, 4)
assert iw.ddbar_lemma()["holds"] is False
"#);
}

#[test]
fn checks_and_generators() {
    run(r#"
import bicomplex as bc
ce = bc.generate("counterexample")
[v] = ce.check("thm1.2", p=1, q=1)
assert v["verdict"] == "VIOLATION"
dot = bc.generate("dot", p=1, q=1)
assert dot.check("thm1.1a", 1, 1)[0]["verdict"] == "VERIFIED"
assert dot.dims() == {(1, 1): 1}
z = bc.generate("zigzag", p=1, q=1, shape=["d-out", "dbar-out"])
assert z.is_valid() and sum(z.dims().values()) == 3
r = bc.generate("random_sum", seed=5, blocks=6)
again = bc.parse_complex(r.to_text())
assert again.digest() == r.digest()
q = bc.generate("stein_like", n=2).q_complete(1)
assert q["holds"] is True and q["witnesses"] == []
bad = bc.DoubleComplex.parse("bicomplex bad\nspace 0 0 1\nspace 1 0 1\nspace 2 0 1\ndel 0 0 0 0 1/1\ndel 1 0 0 0 1/1\n")
report = bad.validate()
assert report["valid"] is False and report["violations"][0]["at"] == {"p": 0, "q": 0}
for call in (lambda: bc.generate("nope"), lambda: dot.check("thm9", 1, 1), lambda: dot.dim("dr", 0, 0)):
    try:
        call()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
"#);
}

use std::ffi::CString;
use std::sync::Once;

use pyo3::prelude::*;

static INIT: Once = Once::new();

fn run(code: &str) -> PyResult<()> {
    INIT.call_once(|| pyo3::append_to_inittab!(limwit_module));
    Python::attach(|py| {
        let code = CString::new(format!("import limwit\n{code}")).unwrap();
        py.run(&code, None, None)
    })
}

use limwit_py::limwit_module;

#[test]
fn detects_werner() {
    run("r = limwit.detect(limwit.exact_record(limwit.werner(0.8)))\nassert r.entangled and abs(r.min_value + 0.25) < 1e-12").unwrap();
}

#[test]
fn witness_certification() {
    run("v = limwit.example1(3, 1).certify(restarts=8)\nassert v.is_witness and v.restarts_used == 8").unwrap();
}

#[test]
fn errors_become_exceptions() {
    run("try:\n    limwit.isotropic(1.5)\nexcept limwit.LimwitError as e:\n    assert 'isotropic' in str(e) or '1.5' in str(e)\nelse:\n    raise AssertionError").unwrap();
    assert!(run("limwit.bell_state('chi')").is_err());
}

#[test]
fn record_round_trip() {
    run(concat!(
        "r = limwit.sampled_record(limwit.bell_state('psi-'), 1000, seed=4)\n",
        "b = limwit.MeasurementRecord.from_json(r.to_json())\n",
        "assert b.entries() == r.entries() and b.std_err == r.std_err and b.shots == 1000\n",
        "m = limwit.MeasurementRecord(0.5, 0.5, 0.5)\n",
        "assert m.entries()[3:] == [0.0] * 6\n",
    ))
    .unwrap();
}

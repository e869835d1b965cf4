"""Smoke test for the limwit extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist && pip install dist/limwit-*.whl
"""

import json
import math

import limwit


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def main():
    rho = limwit.werner(0.8)
    assert rho.dims == (2, 2)
    m = rho.matrix()
    assert close(m[1][2].real, -0.8 / 2.4)

    rec = limwit.exact_record(rho)
    assert all(close(e, -2.0 / 3.0, 1e-14) for e in rec.entries()[:3])
    res = limwit.detect(rec)
    assert res.entangled and close(res.min_value, -0.25)
    assert res.significance is None

    back = limwit.MeasurementRecord.from_json(rec.to_json())
    assert back.entries() == rec.entries()

    sampled = limwit.sampled_record(limwit.werner(0.9), 100_000, seed=1)
    assert sampled.shots == 100_000 and len(sampled.std_err) == 9
    res = limwit.detect(sampled)
    assert res.entangled and res.significance > 3

    for gamma in (0.0, 0.5, 0.9):
        res = limwit.detect(limwit.exact_record(limwit.damped_bell(gamma)))
        assert close(res.min_value, (gamma - 1) / 2, 1e-9)

    (row,) = limwit.gamma_scan([0.9])
    assert abs(row[1] - 0.17) < 0.005 and close(row[2], 1 / math.sqrt(2), 1e-9)

    w = limwit.extremal_witness(2, 0.0)
    assert close(w.min_eigenvalue(), -0.5)
    assert close(w.expectation(limwit.bell_state("phi+")), -0.5)
    verdict = w.certify(restarts=8)
    assert verdict.is_block_positive and verdict.is_witness

    choi = limwit.example1(3, 1)
    assert choi.certify(restarts=16).is_witness
    assert json.loads(choi.to_json())["provenance"]["kind"] == "example1"

    assert limwit.example3(2.5, 1.0, 1.0).is_valid is False
    assert limwit.example3(1.0, 1.0, 0.0).is_valid is True

    try:
        limwit.werner(2.0)
    except limwit.LimwitError:
        pass
    else:
        raise AssertionError("out-of-range Werner parameter accepted")

    print("python smoke test passed")


if __name__ == "__main__":
    main()

"""Smoke test for the mudomains extension.

Build first with `cargo build -p mudomains-py --release`, then run
`python3 python/smoke_test.py`.
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        lib = ROOT / "target" / profile / "libmudomains.so"
        if lib.exists():
            break
    else:
        sys.exit("libmudomains.so not found; run cargo build -p mudomains-py --release")
    tmp = pathlib.Path(tempfile.mkdtemp())
    shutil.copy(lib, tmp / "mudomains.so")
    sys.path.insert(0, str(tmp))
    import mudomains

    return mudomains


def main():
    md = load()

    v = md.classify("f", [0, 0, 0.25, 0])
    assert v.region == "Interior" and v.code == 0, v
    v = md.classify("f", [0, 0.5, 0, 1])
    assert v.region == "Outside" and v.code == 2, v
    v = md.classify("f", [0, 0, -1, 0])
    assert v.code == 1 and v.shilov is True, v
    assert md.classify("g2", [0, 0]).code == 0
    assert md.classify("l4", [0.1, 0.2j, 0, 0]).code == 0

    a = [[0.3, 0.1j], [0.2, -0.4]]
    x, a12, p, s = md.pi_f(a)
    assert abs(p - (0.3 * -0.4 - 0.1j * 0.2)) < 1e-15
    assert abs(s - (0.1j + 0.2)) < 1e-15
    assert md.operator_norm([[2, 0], [0, 1]]) == 2.0

    pt = md.shilov_f_param(0.7, 0.3, -0.2, 0.5)
    assert md.shilov_f_test(pt)
    assert abs(md.minkowski_gauge(pt) - 1.0) < 1e-6
    assert abs(md.minkowski_gauge([0, 0, 0.25, 0]) - 0.5) < 1e-6

    r = md.mu_value("full", [[2, 0], [0, 0]])
    assert abs(r.value - 2.0) < 1e-12 and r.minimizer is not None
    r = md.mu_value("diag", [[0, 1], [0, 0]])
    assert r.value == 0.0 and r.status == "Infeasible"

    e = [[0, 1], [math.cos(0.4) + 1j * math.sin(0.4), 0]]
    theta = md.classify_subspace([[[1, 0], [0, 0]], [[0, 0], [0, 1]], e])
    assert theta is not None and abs(theta - 0.4) < 1e-9, theta
    assert md.classify_subspace([[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [0, 0]]]) is None

    rep = md.run_suite("swap_involution", n=200, seed=3)
    assert rep.passed and rep.seed == 3 and rep.n_samples == 200, rep
    assert rep.text.startswith("suite=swap_involution status=pass")
    assert md.run_counterexamples([0.5]).passed

    for bad, exc in [
        (lambda: md.classify("f", [0, 0, 0.25]), ValueError),
        (lambda: md.classify("nowhere", [0]), ValueError),
        (lambda: md.mu_value("banded", [[0, 1], [0, 0]]), KeyError),
        (lambda: md.run_suite("thm99"), KeyError),
    ]:
        try:
            bad()
        except exc:
            pass
        else:
            raise AssertionError(f"expected {exc.__name__}")

    print("smoke test ok")


if __name__ == "__main__":
    main()

"""Smoke test for the extension module.

Build and install first, e.g. from crates/python:

    maturin build --release -o dist && pip install --force-reinstall dist/*.whl
    python python/smoke_test.py
"""

import pathlib
import sys

import netalg

NETWORKS = pathlib.Path(__file__).resolve().parents[3] / "networks"


def main() -> int:
    report = netalg.check(str(NETWORKS / "example1.net"))
    info = report["informativity"]
    ident = report["identifiability"]
    assert (info["generic_rank"], info["required_rank"]) == (3, 3), info
    assert (ident["dim_vo"], ident["dim_vc"]) == (2, 2), ident
    assert report["outcome"]["exit_code"] == 0

    report = netalg.check(str(NETWORKS / "example5.net"), informativity=False)
    assert report["identifiability"]["verdict"] == "generically-locally-identifiable"

    basis = netalg.groebner_basis(["x", "y", "z"], ["x^2 - y", "x^3 - z"], order="lex")
    assert basis == ["y^3 - z^2", "x*z - y^2", "x*y - z", "x^2 - y"], basis
    assert netalg.ideal_dimension(["x", "y"], ["x*y - 1"]) == 1
    assert netalg.ideal_dimension(["x"], ["x", "x + 1"]) == -1

    try:
        netalg.check(str(NETWORKS / "missing.net"))
    except netalg.NetalgError as e:
        assert "missing.net" in str(e), e
    else:
        raise AssertionError("missing file accepted")

    try:
        netalg.groebner_basis(["x", "y", "z"], ["x^3 - y*z + 1", "y^3 - x*z", "z^3 - x*y - 2"], order="lex", budget=5)
    except netalg.BudgetExhausted:
        pass
    else:
        raise AssertionError("budget ignored")

    code, out, _ = netalg.run(["rank", str(NETWORKS / "example4.net")])
    assert code == 0 and "generic rank 8" in out, out

    print(f"netalg {netalg.__version__}: smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())

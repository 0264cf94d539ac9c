#!/usr/bin/env python3
"""Smoke test for the hypersum_py extension module.

Builds the cdylib if needed, stages it under an importable name, and checks
a handful of exact values end to end. Run from the repository root:

    python3 python/smoke_test.py
"""

import pathlib
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib() -> pathlib.Path:
    candidates = [
        ROOT / "target" / "release" / "libhypersum_py.so",
        ROOT / "target" / "debug" / "libhypersum_py.so",
        ROOT / "target" / "release" / "libhypersum_py.dylib",
        ROOT / "target" / "debug" / "libhypersum_py.dylib",
    ]
    for c in candidates:
        if c.exists():
            return c
    print("cdylib not found; building with cargo ...")
    subprocess.run(
        ["cargo", "build", "-p", "hypersum-py"], cwd=ROOT, check=True
    )
    for c in candidates:
        if c.exists():
            return c
    raise FileNotFoundError("libhypersum_py not found after build")


def stage(cdylib: pathlib.Path, stage_dir: pathlib.Path) -> None:
    suffix = ".so" if cdylib.suffix == ".so" else ".so"  # CPython loads .so on mac too
    shutil.copy2(cdylib, stage_dir / f"hypersum_py{suffix}")
    sys.path.insert(0, str(stage_dir))


def main() -> int:
    with tempfile.TemporaryDirectory() as tmp:
        stage(locate_cdylib(), pathlib.Path(tmp))
        import hypersum_py as hp

        # Exact evaluation, all routes agreeing.
        assert hp.eval(0, 2, 3) == 14
        assert hp.eval(10, 6, 5, method="all") == 128100
        assert hp.eval(2, 3, 2, method="theorem2") == 11
        assert hp.eval(0, 11, 4, method="faulhaber") == hp.hypersum_brute(0, 11, 4)
        v = hp.eval(5, 7, 4, method="theorem3")
        assert v == hp.hypersum_brute(5, 7, 4)
        assert isinstance(v, Fraction)

        # Factored closed form and its pieces.
        f = hp.factored(3, 6)
        assert f.linear_offsets == [0, 3]
        assert f.core_coeffs == [-1, -2, 1]
        assert f.sqrt_exponent == 2
        assert f.prefactor == Fraction(720, 3628800 * 64)
        assert f.eval_at(2) == hp.hypersum_brute(3, 6, 2)
        assert "y*(y+3)*(y+4)" in str(f)
        assert "\\frac{6!}{10!}" in f.latex()

        # Expansion in N: degree L+k+1 with no constant term.
        poly = hp.factored(10, 6).expand_in_n()
        assert len(poly) == 18 and poly[0] == 0
        assert poly[17] == Fraction(6 * 120, 355687428096000)

        # JSON round trip.
        g = hp.FactoredForm.from_json(f.to_json())
        assert all(g.eval_at(n) == f.eval_at(n) for n in range(1, 11))

        # Coefficient table and number-theory helpers.
        assert hp.coefficients(2) == [1, Fraction(-1, 6), Fraction(7, 360)]
        assert hp.coefficients(1, level=1) == [1, Fraction(-1, 3)]
        assert hp.bernoulli(12) == Fraction(-691, 2730)
        assert hp.stirling2(6, 3) == 90

        # Errors surface as ValueError.
        try:
            hp.eval(3, 2, 1, method="faulhaber")
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError for faulhaber at L != 0")

        # Invariant suites at small bounds.
        report = hp.selfcheck_report(p_max=3, l_max=2, k_max=4, n_max=5)
        bad = [name for name, _, failures in report if failures]
        assert not bad, f"failing suites: {bad}"

        print(f"smoke test passed ({len(report)} suites, all exact checks OK)")
        return 0


if __name__ == "__main__":
    sys.exit(main())

"""Smoke test for the stieltjes_py extension.

Build and run from the repository root:

    cargo build --release -p stieltjes-py --features extension-module
    python3 python/smoke.py

The script loads target/release/libstieltjes_py.so directly when the module
is not installed, and compares against mpmath.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys

import mpmath


def load():
    try:
        import stieltjes_py

        return stieltjes_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    lib = root / "target" / "release" / "libstieltjes_py.so"
    loader = importlib.machinery.ExtensionFileLoader("stieltjes_py", str(lib))
    spec = importlib.util.spec_from_loader("stieltjes_py", loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    sp = load()
    mpmath.mp.dps = 40
    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        failures += not ok

    for n in (0, 1, 5, 20):
        value, digits, certified = sp.gamma_exact(n, 30)
        ref = mpmath.stieltjes(n)
        err = abs(mpmath.mpf(value) - ref) / abs(ref)
        check(f"gamma_exact({n}) vs mpmath, rel err {mpmath.nstr(err, 3)}", certified and err < mpmath.mpf("1e-28"))

    for n in (100, 150):
        ref = float(mpmath.stieltjes(n))
        ratio = sp.gamma_asymptotic(n) / ref
        check(f"gamma_asymptotic({n}) / exact = {ratio:.6f}", abs(ratio - 1) < 1e-2)

    s, certified = sp.sign("10^10000")
    check("sign(10^10000) = -1", s == -1 and certified)

    re, im = sp.saddle_point(10)
    check("saddle_point(10) in the upper half-plane", im > 0 and re > 0)

    z = complex(1.0, 2.0)
    wr, wi = sp.lambert_w((z.real, z.imag), 0)
    ref = complex(mpmath.lambertw(z, 0))
    check("lambert_w(1+2i) vs mpmath", abs(complex(wr, wi) - ref) < 1e-14)

    try:
        sp.sign("19")
        check("sign(19) rejected", False)
    except ValueError:
        check("sign(19) rejected", True)

    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()

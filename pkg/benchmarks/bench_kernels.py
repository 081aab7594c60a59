"""Compare the compiled kernels with the pure-Python fallback.

Run from the repository root:  python3 benchmarks/bench_kernels.py
"""
import argparse
import timeit

import numpy as np

from diracband import _pybessel, _pyshoot

try:
    from diracband import _cbessel, _cshoot
except ImportError:
    _cbessel = _cshoot = None


def _bessel(mod, n, xs):
    out = np.empty(n + 1)
    for x in xs:
        mod.j_half_array(n, x, out)
        mod.i_half_scaled_array(n, x, out)


def _pair(mod, ws):
    for w in ws:
        mod.regular_pair(3, w)


def _shoot(mod):
    mod.integrate_radial(3, False, 2.5, 0.7, 1e-5, 1.0, 1.0, 1e-6, 1e-12, 200000)


def bench(label, fn, number, repeat):
    best = min(timeit.repeat(fn, number=number, repeat=repeat)) / number
    return label, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    xs = np.geomspace(1e-3, 100.0, 500)
    ws = np.linspace(-50.0, 50.0, 500)
    cases = [
        ("bessel arrays (500 x, n=10)", lambda m: _bessel(m, 10, xs), 5),
        ("regular_pair (500 w, l=3)", lambda m: _pair(m, ws), 5),
        ("integrate_radial (rtol 1e-12)", _shoot, 3),
    ]
    print(f"{'kernel':32s} {'pure [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>9s}")
    for name, fn, number in cases:
        pure_mod = _pyshoot if fn is _shoot else _pybessel
        comp_mod = _cshoot if fn is _shoot else _cbessel
        _, tp = bench(name, lambda: fn(pure_mod), number, args.repeat)
        if comp_mod is None:
            print(f"{name:32s} {tp * 1e3:12.3f} {'n/a':>14s} {'':>9s}")
            continue
        _, tc = bench(name, lambda: fn(comp_mod), number, args.repeat)
        print(f"{name:32s} {tp * 1e3:12.3f} {tc * 1e3:14.3f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()

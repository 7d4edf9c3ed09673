"""Time the numba and numpy backends of the two hot kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends run in the same process (the backend is passed explicitly),
and their results are compared before any timing is reported.
"""
from __future__ import annotations

import argparse
import time

from knotcert import kernels
from knotcert.families import alternating_knot_160, pretzel, torus_2p
from knotcert.gauss import a2n_gauss, gauss_of, v3_gauss
from knotcert.invariants import kauffman_bracket


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases():
    yield "bracket T(2,13)", lambda b: kauffman_bracket(torus_2p(13), backend=b)
    P = pretzel(5, 5, 5)
    yield "bracket P(5,5,5)", lambda b: kauffman_bracket(P, backend=b)
    G40 = gauss_of(torus_2p(41))
    yield "v3 pairing T(2,41)", lambda b: v3_gauss(G40, b)
    yield "a4 pairing T(2,41)", lambda b: a2n_gauss(G40, 2, backend=b)
    G160 = gauss_of(alternating_knot_160())
    yield "v3 pairing c=160", lambda b: v3_gauss(G160, b)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernels.HAVE_NUMBA:
        print("numba unavailable (or disabled); only the numpy backend runs")
    print(f"{'case':24s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for label, fn in cases():
        t_np, r_np = _best(lambda: fn("numpy"), args.repeat)
        if kernels.HAVE_NUMBA:
            fn("numba")  # compile outside the timed runs
            t_nb, r_nb = _best(lambda: fn("numba"), args.repeat)
            assert r_np == r_nb, f"{label}: backends disagree"
            print(f"{label:24s} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")
        else:
            print(f"{label:24s} {t_np:10.4f} {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()

"""Timing comparison of the numba kernels against the pure-numpy fallback.

Runs each hot kernel on synthetic workloads of increasing size, reports
per-call wall time for both backends plus their agreement, and exits
nonzero if the backends disagree beyond rounding noise.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --points 200000 --repeat 5 --json
"""

import argparse
import json
import sys
import time

import numpy as np

from polytorus._kernels import numpy_impl

try:
    from polytorus._kernels import numba_impl
except ImportError:
    numba_impl = None


def make_csr(rng, n_terms, n_vars, max_exp):
    coeffs = (rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)).astype(
        np.complex128
    )
    positions, exponents, offsets = [], [], [0]
    for _ in range(n_terms):
        k = int(rng.integers(1, n_vars + 1))
        positions.extend(sorted(rng.choice(n_vars, size=k, replace=False).tolist()))
        exponents.extend(int(e) for e in rng.integers(1, max_exp + 1, size=k))
        offsets.append(len(positions))
    return (
        coeffs,
        np.asarray(positions, dtype=np.int64),
        np.asarray(exponents, dtype=np.int64),
        np.asarray(offsets, dtype=np.int64),
    )


def timeit(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def max_dev(a, b):
    """Largest deviation between backends, relative to the result scale."""
    a = np.atleast_1d(a)
    b = np.atleast_1d(b)
    scale = max(1.0, float(np.max(np.abs(a))))
    return float(np.max(np.abs(a - b))) / scale


def build_workloads(args):
    rng = np.random.default_rng(args.seed)
    n = args.points
    csr = make_csr(rng, args.terms, args.vars, args.max_exp)
    pts = 0.8 * (rng.normal(size=(n, args.vars)) + 1j * rng.normal(size=(n, args.vars)))
    pts = np.ascontiguousarray(pts / np.maximum(1.0, np.abs(pts)), dtype=np.complex128)

    line_coeffs = (rng.normal(size=args.terms) + 1j * rng.normal(size=args.terms)).astype(np.complex128)
    log_ns = np.log(np.arange(2, args.terms + 2, dtype=np.float64))
    ts = rng.uniform(-1e4, 1e4, size=n)

    m, n_grid, deg = 2, 64, 12
    dft_values = (rng.normal(size=n_grid**m) + 1j * rng.normal(size=n_grid**m)).astype(np.complex128)
    w_pow = np.exp(-2j * np.pi * np.outer(np.arange(deg + 1), np.arange(n_grid)) / n_grid)

    block = (rng.normal(size=(24, n // 16)) + 1j * rng.normal(size=(24, n // 16))).astype(np.complex128)
    values = (rng.normal(size=n) + 1j * rng.normal(size=n)).astype(np.complex128)

    return [
        ("eval_terms", lambda impl: impl.eval_terms(*csr, pts)),
        ("line_values", lambda impl: impl.line_values(line_coeffs, log_ns, ts)),
        ("dft_extract", lambda impl: impl.dft_extract(dft_values, m, n_grid, deg, w_pow)),
        ("pairwise_max_absdiff", lambda impl: impl.pairwise_max_absdiff(block)),
        ("abs_pow_sum", lambda impl: impl.abs_pow_sum(values, 3.0)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=100_000)
    ap.add_argument("--terms", type=int, default=16)
    ap.add_argument("--vars", type=int, default=5)
    ap.add_argument("--max-exp", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    args = ap.parse_args(argv)

    if numba_impl is None:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1

    rows = []
    for name, call in build_workloads(args):
        # warm call compiles the numba kernel outside the timed region
        call(numba_impl)
        t_np, out_np = timeit(lambda: call(numpy_impl), args.repeat)
        t_nb, out_nb = timeit(lambda: call(numba_impl), args.repeat)
        rows.append({
            "kernel": name,
            "numpy_s": t_np,
            "numba_s": t_nb,
            "speedup": t_np / t_nb if t_nb > 0 else float("inf"),
            "max_dev": max_dev(out_np, out_nb),
        })

    if args.json:
        print(json.dumps({"points": args.points, "results": rows}, indent=2))
    else:
        print(f"{'kernel':<22} {'numpy':>10} {'numba':>10} {'speedup':>8} {'max dev':>10}")
        for r in rows:
            print(f"{r['kernel']:<22} {r['numpy_s']*1e3:>8.2f}ms {r['numba_s']*1e3:>8.2f}ms "
                  f"{r['speedup']:>7.1f}x {r['max_dev']:>10.2e}")

    worst = max(r["max_dev"] for r in rows)
    if worst > 1e-9:
        print(f"relative backend disagreement {worst:.3e} exceeds 1e-9", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

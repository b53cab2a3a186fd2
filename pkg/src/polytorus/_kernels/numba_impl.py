"""JIT kernels.

Same contracts as ``numpy_impl``; see that module for the CSR term
layout.  Compiled lazily on first call, cached on disk.  fastmath stays
off: reassociation would break the fixed reduction order that keeps
results reproducible.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def eval_terms(coeffs, positions, exponents, offsets, points):
    n = points.shape[0]
    nterms = coeffs.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    for i in range(n):
        acc = 0.0 + 0.0j
        for t in range(nterms):
            mono = 1.0 + 0.0j
            for k in range(offsets[t], offsets[t + 1]):
                base = points[i, positions[k]]
                e = exponents[k]
                r = 1.0 + 0.0j
                while e:
                    if e & 1:
                        r *= base
                    base *= base
                    e >>= 1
                mono *= r
            acc += coeffs[t] * mono
        out[i] = acc
    return out


@njit(cache=True)
def line_values(coeffs, log_ns, ts):
    n = ts.shape[0]
    out = np.zeros(n, dtype=np.complex128)
    for i in range(n):
        acc = 0.0 + 0.0j
        for t in range(coeffs.shape[0]):
            x = ts[i] * log_ns[t]
            acc += coeffs[t] * complex(np.cos(x), -np.sin(x))
        out[i] = acc
    return out


@njit(cache=True)
def dft_extract(values, m, n_grid, degree_bound, w_pow):
    nalpha = (degree_bound + 1) ** m
    total = values.shape[0]
    out = np.empty(nalpha, dtype=np.complex128)
    adigits = np.zeros(m, dtype=np.int64)
    for ai in range(nalpha):
        # decode ai into per-dimension coefficients, row-major
        rem = ai
        for d in range(m - 1, -1, -1):
            adigits[d] = rem % (degree_bound + 1)
            rem //= degree_bound + 1
        acc = 0.0 + 0.0j
        gdigits = np.zeros(m, dtype=np.int64)
        for g in range(total):
            prod = values[g]
            for d in range(m):
                prod *= w_pow[adigits[d], gdigits[d]]
            acc += prod
            # row-major odometer over the grid
            for d in range(m - 1, -1, -1):
                gdigits[d] += 1
                if gdigits[d] < n_grid:
                    break
                gdigits[d] = 0
        out[ai] = acc / float(n_grid) ** m
    return out


@njit(cache=True)
def pairwise_max_absdiff(block):
    nrows, ncols = block.shape
    best = 0.0
    for a in range(nrows):
        for b in range(a + 1, nrows):
            m2 = 0.0
            for i in range(ncols):
                d = block[a, i] - block[b, i]
                v = d.real * d.real + d.imag * d.imag
                if v > m2:
                    m2 = v
            d1 = np.sqrt(m2)
            if d1 > best:
                best = d1
    return best


@njit(cache=True)
def abs_pow_sum(values, p):
    acc = 0.0
    for i in range(values.shape[0]):
        v = values[i]
        acc += (v.real * v.real + v.imag * v.imag) ** (0.5 * p)
    return acc

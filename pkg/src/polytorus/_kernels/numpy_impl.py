"""Pure-NumPy kernels.

Reference implementations with the same contracts as the JIT twins in
``numba_impl``; which set a process uses is decided once in
``polytorus._kernels``.  Term loops run in term order and inner
reductions are NumPy's pairwise sums, so each backend is deterministic
run to run; across backends values agree to roundoff, not bitwise.

Sparse expansions arrive in a flattened CSR-like layout:

    coeffs[t]                      coefficient of term t
    positions[offsets[t]:offsets[t+1]]   0-based variable slots
    exponents[offsets[t]:offsets[t+1]]   exponents >= 1
"""

from __future__ import annotations

import numpy as np


def eval_terms(
    coeffs: np.ndarray,
    positions: np.ndarray,
    exponents: np.ndarray,
    offsets: np.ndarray,
    points: np.ndarray,
) -> np.ndarray:
    """Evaluate sum_t coeffs[t] * prod_k z[pos_k]^exp_k at each row of points.

    points is (n, m) complex128; returns (n,) complex128.
    """
    n = points.shape[0]
    acc = np.zeros(n, dtype=np.complex128)
    nterms = coeffs.shape[0]
    for t in range(nterms):
        mono = np.ones(n, dtype=np.complex128)
        for k in range(offsets[t], offsets[t + 1]):
            base = points[:, positions[k]].copy()
            e = int(exponents[k])
            # square-and-multiply, low bit first
            r = np.ones(n, dtype=np.complex128)
            while e:
                if e & 1:
                    r *= base
                base *= base
                e >>= 1
            mono *= r
        acc += coeffs[t] * mono
    return acc


def line_values(coeffs: np.ndarray, log_ns: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Evaluate sum_t coeffs[t] * exp(-i * t_val * log_ns[t]) at each t_val in ts."""
    acc = np.zeros(ts.shape[0], dtype=np.complex128)
    for t in range(coeffs.shape[0]):
        x = ts * log_ns[t]
        acc += coeffs[t] * (np.cos(x) - 1j * np.sin(x))
    return acc


def dft_extract(values: np.ndarray, m: int, n_grid: int, degree_bound: int, w_pow: np.ndarray) -> np.ndarray:
    """Mean of values[g] * prod_dim w_pow[alpha_dim, g_dim] over the full grid.

    values is the flattened (n_grid,)*m tensor in row-major order; w_pow is
    the (degree_bound+1, n_grid) table of exp(-2*pi*i*a*j/n_grid).  Returns
    the flattened (degree_bound+1,)*m coefficient tensor.
    """
    if m == 0:
        return values[:1].copy()
    c = values.reshape((n_grid,) * m)
    # Contract one axis at a time; tensordot over axis 0 appends the new
    # axis at the end, so after m contractions the axis order is restored.
    wt = w_pow.T
    for _ in range(m):
        c = np.tensordot(c, wt, axes=([0], [0]))
    return (c / float(n_grid) ** m).ravel()


def pairwise_max_absdiff(block: np.ndarray) -> float:
    """Largest |block[a, i] - block[b, i]| over all pairs a < b and columns i."""
    nrows = block.shape[0]
    best = 0.0
    for a in range(nrows):
        for b in range(a + 1, nrows):
            d = float(np.max(np.abs(block[a] - block[b]))) if block.shape[1] else 0.0
            if d > best:
                best = d
    return best


def abs_pow_sum(values: np.ndarray, p: float) -> float:
    """sum of |values|^p (pairwise reduction)."""
    return float(np.sum(np.abs(values) ** p))

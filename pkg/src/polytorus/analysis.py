"""Evaluation and integral norms on the polydisc and polytorus.

A finitely supported expansion F(z) = sum_alpha c_alpha z^alpha is a
polynomial in its first ``active_vars`` variables, so its p-th power
mean over the m-torus is an ordinary m-fold circle integral.  Three
estimators live here:

* exact coefficient square sums for p = 2 (orthonormality of the
  monomials on the torus);
* tensor-grid trapezoid quadrature, exact for trigonometric polynomials
  once the per-axis grid outruns the integrand's bandwidth, refined by
  doubling until the estimate settles;
* randomly shifted rank-1 lattice rules when the dimension makes tensor
  grids unaffordable, with the spread across shifts as the error proxy.

The same grids drive coefficient recovery: averaging F(r w) w^(-alpha)
over the grid is the discrete form of the iterated Cauchy integral and
is exact (up to roundoff) when the grid strictly outruns the degree.
For Dirichlet polynomials the vertical-line mean over [-R, R] gets a
plain trapezoid estimate; the window R is always the caller's choice,
there is no automatic escalation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

import numpy as np

from . import _kernels as K
from .bohr import MultiIndex
from .errors import ResourceError
from .series import DirichletPolynomial, MonomialExpansion, as_p

__all__ = [
    "NormEstimate",
    "PointInPolydisc",
    "QuadratureConfig",
    "bayart_mean_norm",
    "evaluate",
    "evaluate_dirichlet_line",
    "evaluate_many",
    "extract_coefficients",
    "hp_norm",
    "torus_mean",
]

_METHODS = ("exact_parseval", "tensor_grid", "qmc", "line_mean")


@dataclass(frozen=True)
class PointInPolydisc:
    """A point of the open unit polydisc with finite support.

    Coordinates beyond the stored tuple are zero.  Every stored
    coordinate must satisfy |z_j| < 1 strictly; evaluation on the torus
    boundary itself goes through ``evaluate_many``, which does not
    gatekeep.
    """

    coords: tuple[complex, ...]

    def __post_init__(self) -> None:
        coerced = []
        for c in self.coords:
            z = complex(c)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise ValueError("coordinates must be finite")
            if abs(z) >= 1.0:
                raise ValueError("coordinates must satisfy |z_j| < 1")
            coerced.append(z)
        object.__setattr__(self, "coords", tuple(coerced))

    @property
    def norm2(self) -> float:
        return math.sqrt(sum(abs(c) ** 2 for c in self.coords))

    @property
    def norm_inf(self) -> float:
        return max((abs(c) for c in self.coords), default=0.0)

    def as_array(self, width: int | None = None) -> np.ndarray:
        n = len(self.coords) if width is None else width
        if n < len(self.coords):
            nonzero = any(c != 0 for c in self.coords[n:])
            if nonzero:
                raise ValueError("width would drop nonzero coordinates")
        out = np.zeros(n, dtype=np.complex128)
        out[: min(n, len(self.coords))] = self.coords[: min(n, len(self.coords))]
        return out


@dataclass(frozen=True)
class NormEstimate:
    """A norm value together with how it was produced.

    ``error_proxy`` is a diagnostic scale, not a rigorous bound: the last
    doubling delta for tensor grids, the standard error across shifts for
    lattice rules, a window heuristic for line means, 0 for exact paths.
    """

    value: float
    method: str
    error_proxy: float
    params: Mapping[str, float]

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not (self.value >= 0 and math.isfinite(self.value)):
            raise ValueError("value must be finite and >= 0")
        if not self.error_proxy >= 0:
            raise ValueError("error_proxy must be >= 0")
        if self.method == "exact_parseval" and self.params.get("p") != 2.0:
            raise ValueError("exact_parseval is only available at p = 2")


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for the norm estimators.

    force_method overrides the automatic choice (exact coefficient sums
    at p = 2, tensor grids up to max_grid_dims variables, lattice rules
    above); forcing exact_parseval at p != 2 is rejected.
    """

    max_grid_dims: int = 4
    grid_start: int = 8
    grid_cap: int = 128
    rel_tol: float = 1e-8
    tensor_point_cap: int = 1 << 22
    qmc_samples: int = 8192
    qmc_shifts: int = 16
    seed: int = 0
    force_method: str | None = None

    def __post_init__(self) -> None:
        if self.max_grid_dims < 0:
            raise ValueError("max_grid_dims must be >= 0")
        if self.grid_start < 2:
            raise ValueError("grid_start must be >= 2")
        if self.grid_cap < self.grid_start:
            raise ValueError("grid_cap must be >= grid_start")
        if not (self.rel_tol > 0):
            raise ValueError("rel_tol must be positive")
        if self.tensor_point_cap < 1:
            raise ValueError("tensor_point_cap must be >= 1")
        if self.qmc_samples < 1:
            raise ValueError("qmc sample budget must be positive")
        if self.qmc_shifts < 2:
            raise ValueError("qmc needs >= 2 shifts for an error proxy")
        if self.force_method is not None and self.force_method not in _METHODS[:3]:
            raise ValueError(f"force_method must be one of {_METHODS[:3]}")


def evaluate_many(f: MonomialExpansion, points: np.ndarray) -> np.ndarray:
    """Evaluate F at each row of a (n, width) complex array.

    width must cover active_vars.  No membership checks: quadrature
    calls this on the torus boundary.
    """
    pts = np.ascontiguousarray(points, dtype=np.complex128)
    if pts.ndim != 2:
        raise ValueError("points must be a 2-d array")
    if pts.shape[1] < f.active_vars:
        raise ValueError("points are narrower than the expansion's active variables")
    coeffs, positions, exponents, offsets = f.csr()
    return K.eval_terms(coeffs, positions, exponents, offsets, pts)


def evaluate(f: MonomialExpansion, z: PointInPolydisc) -> complex:
    """F(z) for a point of the open polydisc."""
    width = max(f.active_vars, len(z.coords))
    return complex(evaluate_many(f, z.as_array(width).reshape(1, -1))[0])


def evaluate_dirichlet_line(d: DirichletPolynomial, t) -> "complex | np.ndarray":
    """sum a_n n^(-it) on the critical vertical line, at a scalar or array t."""
    ts = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if ts.ndim != 1:
        raise ValueError("t must be a scalar or 1-d array")
    _, coeffs, log_ns = d.arrays()
    vals = K.line_values(coeffs, log_ns, np.ascontiguousarray(ts))
    if np.isscalar(t) or getattr(t, "ndim", 0) == 0:
        return complex(vals[0])
    return vals


def _grid_chunks(m: int, n_grid: int, r: float, chunk: int) -> Iterator[np.ndarray]:
    """Row-major odometer over the m-fold tensor grid of n_grid-th roots, scaled by r."""
    nodes = r * np.exp(2j * np.pi * np.arange(n_grid) / n_grid)
    total = n_grid**m
    strides = [n_grid ** (m - 1 - d) for d in range(m)]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        pts = np.empty((idx.shape[0], m), dtype=np.complex128)
        for d in range(m):
            pts[:, d] = nodes[(idx // strides[d]) % n_grid]
        yield pts


def torus_mean(f: MonomialExpansion, p, r: float, n_grid: int) -> float:
    """Mean of |F(r w)|^p over the full m-fold tensor grid of n_grid-th roots.

    m is the expansion's active variable count.  Exposed separately from
    hp_norm so radial behaviour (r < 1 versus r = 1) can be inspected.
    """
    p = as_p(p)
    if not (0.0 < r <= 1.0):
        raise ValueError("radius must satisfy 0 < r <= 1")
    if n_grid < 1:
        raise ValueError("n_grid must be >= 1")
    m = f.active_vars
    if m == 0:
        c = next(iter(f.terms.values()), 0j)
        return abs(c) ** p
    coeffs, positions, exponents, offsets = f.csr()
    total = n_grid**m
    acc = 0.0
    for pts in _grid_chunks(m, n_grid, r, K.CHUNK):
        vals = K.eval_terms(coeffs, positions, exponents, offsets, pts)
        acc += K.abs_pow_sum(vals, p)
    return acc / total


def _parseval_norm(f: MonomialExpansion, p: float) -> NormEstimate:
    coeffs, _, _, _ = f.csr()
    value = float(np.sqrt(np.sum(np.abs(coeffs) ** 2)))
    return NormEstimate(value, "exact_parseval", 0.0, {"p": p})


def _tensor_norm(f: MonomialExpansion, p: float, cfg: QuadratureConfig) -> NormEstimate:
    m = f.active_vars
    if m == 0:
        c = next(iter(f.terms.values()), 0j)
        return NormEstimate(abs(c), "tensor_grid", 0.0, {"p": p, "grid": 1, "dims": 0})
    n = max(cfg.grid_start, f.max_degree + 1)
    if n**m > cfg.tensor_point_cap:
        raise ResourceError(
            f"tensor grid of {n}^{m} points exceeds the cap {cfg.tensor_point_cap}; "
            "use the lattice rule or raise tensor_point_cap"
        )
    value = torus_mean(f, p, 1.0, n) ** (1.0 / p)
    delta = math.inf
    while True:
        n2 = 2 * n
        if n2 > cfg.grid_cap or n2**m > cfg.tensor_point_cap:
            break
        v2 = torus_mean(f, p, 1.0, n2) ** (1.0 / p)
        delta = abs(v2 - value)
        value, n = v2, n2
        if delta <= cfg.rel_tol * max(abs(value), 1e-300):
            break
    return NormEstimate(value, "tensor_grid", delta, {"p": p, "grid": n, "dims": m})


def _next_prime_at_least(x: int) -> int:
    from .bohr import is_prime

    n = max(2, int(x))
    while not is_prime(n):
        n += 1
    return n


def _qmc_norm(f: MonomialExpansion, p: float, cfg: QuadratureConfig) -> NormEstimate:
    m = f.active_vars
    n_lat = _next_prime_at_least(cfg.qmc_samples)
    gen = max(1, int(n_lat * 0.6180339887498949) % n_lat)
    g = np.array([pow(gen, j, n_lat) for j in range(m)], dtype=np.int64)
    rng = np.random.default_rng(cfg.seed)
    shifts = rng.random((cfg.qmc_shifts, m))
    base = (np.arange(n_lat, dtype=np.int64)[:, None] * g[None, :]) % n_lat
    base = base / float(n_lat)
    coeffs, positions, exponents, offsets = f.csr()
    means = np.empty(cfg.qmc_shifts)
    for s in range(cfg.qmc_shifts):
        u = base + shifts[s]
        u -= np.floor(u)
        pts = np.ascontiguousarray(np.exp(2j * np.pi * u))
        vals = K.eval_terms(coeffs, positions, exponents, offsets, pts)
        means[s] = K.abs_pow_sum(vals, p) / n_lat
    value = float(np.mean(means)) ** (1.0 / p)
    roots = means ** (1.0 / p)
    proxy = float(np.std(roots, ddof=1) / math.sqrt(cfg.qmc_shifts))
    return NormEstimate(
        value,
        "qmc",
        proxy,
        {"p": p, "lattice": n_lat, "shifts": cfg.qmc_shifts, "seed": cfg.seed, "generator": gen},
    )


def hp_norm(f: MonomialExpansion, p, cfg: QuadratureConfig | None = None) -> NormEstimate:
    """The p-norm of F over the torus sections, by the cheapest sound route.

    p = 2 reads the coefficients (exact, proxy 0).  Otherwise a tensor
    grid up to cfg.max_grid_dims active variables, a shifted lattice rule
    above.  cfg.force_method pins a route; exact_parseval cannot be
    forced away from p = 2.  For polynomials the supremum over radii and
    section dimensions is attained at radius 1 in active_vars variables,
    which is what the estimators integrate.
    """
    p = as_p(p)
    cfg = cfg or QuadratureConfig()
    method = cfg.force_method
    if method is None:
        if p == 2.0:
            method = "exact_parseval"
        elif f.active_vars <= cfg.max_grid_dims:
            method = "tensor_grid"
        else:
            method = "qmc"
    if method == "exact_parseval":
        if p != 2.0:
            raise ValueError("exact coefficient sums require p = 2")
        return _parseval_norm(f, p)
    if method == "tensor_grid":
        return _tensor_norm(f, p, cfg)
    return _qmc_norm(f, p, cfg)


def bayart_mean_norm(d: DirichletPolynomial, p, R: float, samples: int) -> NormEstimate:
    """Trapezoid estimate of the finite-window line mean norm.

    Approximates ((1/2R) * integral_{-R}^{R} |D(it)|^p dt)^(1/p) with a
    uniform trapezoid rule on ``samples`` nodes.  The window R is the
    caller's statement of how far to integrate; nothing here enlarges
    it.  error_proxy = max(coarse-versus-fine delta, value / R), the
    second term standing in for the O(1/R) cross-term bias of the
    finite window.
    """
    p = as_p(p)
    R = float(R)
    if not (R > 0 and math.isfinite(R)):
        raise ValueError("R must be positive and finite")
    if samples < 3:
        raise ValueError("samples must be >= 3")
    ts = np.linspace(-R, R, samples)
    _, coeffs, log_ns = d.arrays()
    vals = K.line_values(coeffs, log_ns, np.ascontiguousarray(ts))
    g = np.abs(vals) ** p

    def _trap_mean(gv: np.ndarray, tv: np.ndarray) -> float:
        span = float(tv[-1] - tv[0])
        h = span / (gv.shape[0] - 1)
        return float(((gv[0] + gv[-1]) / 2 + np.sum(gv[1:-1])) * h / span)

    value = _trap_mean(g, ts) ** (1.0 / p)
    coarse = _trap_mean(g[::2], ts[::2]) ** (1.0 / p)
    proxy = max(abs(value - coarse), value / R)
    return NormEstimate(value, "line_mean", proxy, {"p": p, "R": R, "samples": samples})


def extract_coefficients(
    f: "Callable[[np.ndarray], complex] | Callable[[np.ndarray], np.ndarray]",
    m: int,
    degree_bound: int,
    r: float = 1.0,
    n_grid: int | None = None,
    vectorized: bool = False,
    grid_point_cap: int = 1 << 24,
) -> MonomialExpansion:
    """Recover all coefficients with per-variable degree <= degree_bound.

    Averages f(r w) * w^(-alpha) over the m-fold tensor grid of n_grid-th
    roots of unity and rescales by r^(-|alpha|): the discrete iterated
    Cauchy integral.  Exact up to roundoff when f really is a polynomial
    of per-variable degree <= degree_bound, because a grid of n_grid >
    degree_bound points per axis cannot alias distinct monomials of that
    degree onto each other; n_grid <= degree_bound is therefore rejected.

    Parameters
    ----------
    f : callable
        Black-box evaluator.  Receives one (m,) complex array per call,
        or an (n, m) batch when ``vectorized`` is true.
    m : int
        Number of variables to probe.
    degree_bound : int
        Per-variable degree bound d; (d+1)^m coefficients come back,
        zeros included only when they are not exact zeros.
    r : float
        Grid radius, 0 < r <= 1.  Radii below 1 trade conditioning for
        the r^(-|alpha|) amplification of roundoff.
    n_grid : int
        Grid points per axis, default degree_bound + 1.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ValueError("m must be an int >= 0")
    if not isinstance(degree_bound, int) or isinstance(degree_bound, bool) or degree_bound < 0:
        raise ValueError("degree_bound must be an int >= 0")
    r = float(r)
    if not (0.0 < r <= 1.0):
        raise ValueError("radius must satisfy 0 < r <= 1")
    n = degree_bound + 1 if n_grid is None else int(n_grid)
    if n <= degree_bound:
        raise ValueError("n_grid must exceed degree_bound or the grid aliases coefficients")
    if m == 0:
        value = f(np.zeros((1, 0), dtype=np.complex128)) if vectorized else f(np.zeros(0, dtype=np.complex128))
        c = complex(np.asarray(value).reshape(-1)[0])
        return MonomialExpansion({MultiIndex(()): c} if c != 0 else {})
    total = n**m
    if total > grid_point_cap:
        raise ResourceError(f"extraction grid of {total} points exceeds the cap {grid_point_cap}")
    values = np.empty(total, dtype=np.complex128)
    pos = 0
    for pts in _grid_chunks(m, n, r, K.CHUNK):
        k = pts.shape[0]
        if vectorized:
            values[pos : pos + k] = np.asarray(f(pts), dtype=np.complex128).reshape(k)
        else:
            for i in range(k):
                values[pos + i] = complex(f(pts[i]))
        pos += k
    d = degree_bound
    w_pow = np.exp(-2j * np.pi * np.outer(np.arange(d + 1), np.arange(n)) / n)
    flat = K.dft_extract(values, m, n, d, np.ascontiguousarray(w_pow))
    orders = np.indices((d + 1,) * m).reshape(m, -1).sum(axis=0) if m else np.zeros(1, dtype=np.int64)
    if r != 1.0:
        flat = flat * np.exp(-np.log(r) * orders)
    terms: dict[MultiIndex, complex] = {}
    shape = (d + 1,) * m
    for flat_idx in range(flat.shape[0]):
        c = complex(flat[flat_idx])
        if c == 0:
            continue
        digits = np.unravel_index(flat_idx, shape)
        pairs = tuple((j + 1, int(e)) for j, e in enumerate(digits) if e)
        terms[MultiIndex(pairs)] = c
    return MonomialExpansion(terms)

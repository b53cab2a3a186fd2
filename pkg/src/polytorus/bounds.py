"""Certified inequality checks for Hardy-space growth and tail control.

Every certifier computes its left side (the quantity being bounded) and
right side (the bound) independently and wraps them in a BoundReport.
A report never rounds in the bound's favour: ``holds`` allows only a
relative 1e-12 cushion for float noise, and ``marginal`` flags
comparisons decided inside that cushion so callers can distrust them.

The bounds themselves:

* interior growth: |F(z)| <= exp(|z|_2^2 / (1 - |z|_inf^2)) * ||F||_p;
* one-variable disc growth |f(z)| <= ||f||_{H1} / (1 - |z|) and the
  two-point difference quotient through the Cauchy kernel on |w| = s;
* a Lipschitz estimate on compact boxes with the gradient controlled by
  Cauchy's inequality on an enlargement of the box;
* truncation versus the logarithmic operator-norm growth C * ln x;
* the damped tail after flowing distance eps toward the right
  half-plane, against the Abel-summation upper bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .analysis import (
    NormEstimate,
    PointInPolydisc,
    QuadratureConfig,
    evaluate,
    hp_norm,
)
from .series import (
    DirichletPolynomial,
    MonomialExpansion,
    as_p,
    bohr_lift,
    h2_norm_exact,
    tail_h2_norm,
    truncate,
)

__all__ = [
    "BoundReport",
    "DEFAULT_TRUNCATION_C",
    "TOL",
    "abel_tail_bound",
    "coefficient_sup_bound",
    "disc_coefficient_sup",
    "disc_pointwise_bound",
    "disc_two_point_bound",
    "lipschitz_bound",
    "pointwise_bound",
    "truncation_ratio",
    "abel_suite",
    "disc_suite",
    "lipschitz_suite",
    "pointwise_suite",
    "truncation_suite",
    "two_point_suite",
    "run_all_suites",
]

TOL = 1e-12

DEFAULT_TRUNCATION_C = 1.0 / math.log(2.0)


@dataclass(frozen=True)
class BoundReport:
    """Outcome of one inequality check.

    slack = rhs - lhs; holds tolerates relative noise of TOL; marginal
    means the gap is inside the noise cushion, so the verdict should not
    be trusted without tighter arithmetic.
    """

    lhs: float
    rhs: float
    holds: bool
    slack: float
    marginal: bool
    context: Mapping[str, object] = field(default_factory=dict)

    @classmethod
    def compare(cls, lhs: float, rhs: float, context: Mapping[str, object] | None = None) -> "BoundReport":
        lhs = float(lhs)
        rhs = float(rhs)
        if math.isnan(lhs) or math.isnan(rhs):
            raise ValueError("bound sides must not be NaN")
        cushion = TOL * max(abs(lhs), abs(rhs))
        holds = lhs <= rhs + cushion
        marginal = abs(rhs - lhs) <= TOL * abs(rhs)
        return cls(lhs, rhs, holds, rhs - lhs, marginal, dict(context or {}))


def coefficient_sup_bound(f: MonomialExpansion) -> float:
    """sum |c_alpha|: an upper bound for sup |F| over the closed polydisc."""
    coeffs, _, _, _ = f.csr()
    return float(np.sum(np.abs(coeffs)))


def disc_coefficient_sup(f: MonomialExpansion, s: float) -> float:
    """sum |c_k| s^k: an upper bound for sup |f| on the circle |w| = s."""
    if f.active_vars > 1:
        raise ValueError("disc bounds need a one-variable expansion")
    if not (0.0 < s <= 1.0):
        raise ValueError("s must lie in (0, 1]")
    return float(sum(abs(c) * s**a.order for a, c in f))


def pointwise_bound(
    f: MonomialExpansion,
    p,
    z: PointInPolydisc,
    norm: NormEstimate | None = None,
    cfg: QuadratureConfig | None = None,
) -> BoundReport:
    """|F(z)| against exp(|z|_2^2 / (1 - |z|_inf^2)) * ||F||_p.

    A precomputed norm estimate can be supplied to avoid re-integrating;
    its value is used as-is.
    """
    p = as_p(p)
    est = norm if norm is not None else hp_norm(f, p, cfg)
    lhs = abs(evaluate(f, z))
    growth = math.exp(z.norm2**2 / (1.0 - z.norm_inf**2))
    rhs = growth * est.value
    return BoundReport.compare(
        lhs,
        rhs,
        {
            "p": p,
            "norm": est.value,
            "norm_method": est.method,
            "growth_factor": growth,
            "norm2": z.norm2,
            "norm_inf": z.norm_inf,
        },
    )


def disc_pointwise_bound(f: MonomialExpansion, h1_norm: float, z: complex) -> BoundReport:
    """|f(z)| against h1_norm / (1 - |z|) on the one-variable disc.

    h1_norm is taken on trust as (an upper bound for) the H1 norm; any
    valid upper bound keeps the report sound.
    """
    if f.active_vars > 1:
        raise ValueError("disc bounds need a one-variable expansion")
    h1_norm = float(h1_norm)
    if not (h1_norm >= 0 and math.isfinite(h1_norm)):
        raise ValueError("h1_norm must be finite and >= 0")
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError("z must lie in the open unit disc")
    lhs = abs(evaluate(f, PointInPolydisc((z,))))
    rhs = h1_norm / (1.0 - abs(z))
    return BoundReport.compare(lhs, rhs, {"abs_z": abs(z), "h1_norm": h1_norm})


def disc_two_point_bound(
    f: MonomialExpansion,
    s: float,
    z1: complex,
    z2: complex,
    sup_on_circle: float,
) -> BoundReport:
    """|f(z1) - f(z2)| against |z1 - z2| * s * sup / ((s - |z1|)(s - |z2|)).

    From subtracting the Cauchy representations of f(z1) and f(z2) over
    the circle |w| = s, which requires |z1|, |z2| < s.  sup_on_circle
    must dominate sup |f| on that circle; disc_coefficient_sup gives a
    certified choice.
    """
    if f.active_vars > 1:
        raise ValueError("disc bounds need a one-variable expansion")
    s = float(s)
    if not (0.0 < s <= 1.0):
        raise ValueError("s must lie in (0, 1]")
    z1 = complex(z1)
    z2 = complex(z2)
    if abs(z1) >= s or abs(z2) >= s:
        raise ValueError("both points must lie strictly inside |w| = s")
    sup_on_circle = float(sup_on_circle)
    if not (sup_on_circle >= 0 and math.isfinite(sup_on_circle)):
        raise ValueError("sup_on_circle must be finite and >= 0")
    lhs = abs(evaluate(f, PointInPolydisc((z1,))) - evaluate(f, PointInPolydisc((z2,))))
    rhs = abs(z1 - z2) * s * sup_on_circle / ((s - abs(z1)) * (s - abs(z2)))
    return BoundReport.compare(
        lhs, rhs, {"s": s, "abs_z1": abs(z1), "abs_z2": abs(z2), "sup": sup_on_circle}
    )


def lipschitz_bound(
    f: MonomialExpansion,
    box,
    s: float,
    x: PointInPolydisc,
    y: PointInPolydisc,
    sup_on_enlargement: float,
) -> BoundReport:
    """|F(x) - F(y)| against |x - y|_2 * sup / (r - s) on a compact box.

    r is the box's distance to the torus boundary (box.distance()) and
    0 <= s < r.  x and y may sit anywhere in the s-enlargement of the
    box.  sup_on_enlargement must dominate sup |F| over the full
    r-enlargement of the box (equivalently the closed polydisc slice it
    fills): walking from the s-enlargement, Cauchy's inequality controls
    the derivative along the segment only through values up to distance
    r - s further out.  A sup taken only over the s-enlargement is not
    sufficient; coefficient_sup_bound always is.
    """
    s = float(s)
    r = float(box.distance())
    if not (0.0 <= s < r):
        raise ValueError("need 0 <= s < box.distance()")
    for label, point in (("x", x), ("y", y)):
        if not box.contains(point.coords, enlarge=s):
            raise ValueError(f"{label} must lie in the s-enlargement of the box")
    sup_on_enlargement = float(sup_on_enlargement)
    if not (sup_on_enlargement >= 0 and math.isfinite(sup_on_enlargement)):
        raise ValueError("sup_on_enlargement must be finite and >= 0")
    width = max(len(x.coords), len(y.coords), f.active_vars)
    diff = x.as_array(width) - y.as_array(width)
    dist2 = float(np.linalg.norm(diff))
    lhs = abs(evaluate(f, x) - evaluate(f, y))
    rhs = dist2 * sup_on_enlargement / (r - s)
    return BoundReport.compare(
        lhs,
        rhs,
        {"box_distance": r, "s": s, "dist2": dist2, "sup": sup_on_enlargement},
    )


def truncation_ratio(
    d: DirichletPolynomial,
    x: float,
    p=2,
    cfg: QuadratureConfig | None = None,
    C: float = DEFAULT_TRUNCATION_C,
) -> BoundReport:
    """||truncate(d, x)|| / ||d|| against C * ln x.

    Exact coefficient sums at p = 2.  Other p go through the lifted
    quadrature estimates, so the report is a measurement, not a proof;
    context["data_only"] marks that.  The observed constant
    lhs / ln x is recorded for comparison against C.
    """
    p = as_p(p)
    x = float(x)
    if not (x >= 2.0):
        raise ValueError("x must be >= 2 so that ln x is bounded away from 0")
    if not (C > 0):
        raise ValueError("C must be positive")
    head = truncate(d, x)
    if p == 2.0:
        full = h2_norm_exact(d)
        part = h2_norm_exact(head)
        data_only = False
    else:
        full = hp_norm(bohr_lift(d), p, cfg).value
        part = hp_norm(bohr_lift(head), p, cfg).value
        data_only = True
    ratio = 0.0 if full == 0.0 else part / full
    rhs = C * math.log(x)
    return BoundReport.compare(
        ratio,
        rhs,
        {
            "x": x,
            "p": p,
            "C": C,
            "C_observed": ratio / math.log(x),
            "norm_full": full,
            "norm_truncated": part,
            "data_only": data_only,
        },
    )


def _log_weight_tail_brackets(l: int, eps: float) -> tuple[float, float]:
    """Lower and upper brackets for S = sum_{n > l} ln(n) * n^(-1-eps).

    The summand phi(x) = ln(x) x^(-1-eps) peaks at x = e^(1/(1+eps)) < 3,
    so terms below 3 are added explicitly and the integral comparison is
    applied where phi is decreasing.
    """

    def integral_from(a: float) -> float:
        return a**-eps * (math.log(a) / eps + 1.0 / eps**2)

    explicit = 0.0
    n0 = l + 1
    while n0 < 3:
        explicit += math.log(n0) * n0 ** (-1.0 - eps)
        n0 += 1
    first = math.log(n0) * n0 ** (-1.0 - eps)
    lower = explicit + integral_from(n0)
    upper = explicit + first + integral_from(n0)
    return lower, upper


def abel_tail_bound(
    d: DirichletPolynomial,
    eps: float,
    l: int,
    C: float = DEFAULT_TRUNCATION_C,
) -> BoundReport:
    """Damped tail mass against the Abel-summation bound.

    lhs is the exact H2 norm of the part of the eps-translated series
    beyond frequency l.  rhs = eps * C * M * S_lower, where M is the H2
    norm of d and S_lower under-approximates sum_{n > l} ln(n) n^(-1-eps);
    using the lower bracket keeps a failing certificate failing.
    """
    eps = float(eps)
    if not (eps > 0 and math.isfinite(eps)):
        raise ValueError("eps must be positive and finite")
    if not isinstance(l, int) or isinstance(l, bool) or l < 0:
        raise ValueError("l must be an int >= 0")
    if not (C > 0):
        raise ValueError("C must be positive")
    lhs = tail_h2_norm(d, l, eps)
    m_norm = h2_norm_exact(d)
    s_lower, s_upper = _log_weight_tail_brackets(l, eps)
    rhs = eps * C * m_norm * s_lower
    return BoundReport.compare(
        lhs,
        rhs,
        {
            "eps": eps,
            "l": l,
            "C": C,
            "series_norm": m_norm,
            "log_tail_lower": s_lower,
            "log_tail_upper": s_upper,
        },
    )


def pointwise_suite(seed: int = 0, size: int = 20) -> list[tuple[str, BoundReport]]:
    """Random interior-growth checks; every report is expected to hold."""
    from .sampling import random_expansion, random_point

    rng = np.random.default_rng(seed)
    out = []
    for k in range(size):
        f = random_expansion(rng, n_vars=int(rng.integers(1, 5)), max_degree=3, n_terms=6)
        z = random_point(rng, dims=f.active_vars, max_radius=0.8)
        out.append((f"pointwise[{k}]", pointwise_bound(f, 2, z)))
    return out


def disc_suite(seed: int = 0, size: int = 20) -> list[tuple[str, BoundReport]]:
    from .sampling import random_expansion, random_point

    rng = np.random.default_rng(seed)
    out = []
    for k in range(size):
        f = random_expansion(rng, n_vars=1, max_degree=6, n_terms=4)
        z = random_point(rng, dims=1, max_radius=0.9).coords[0]
        h1 = coefficient_sup_bound(f)
        out.append((f"disc[{k}]", disc_pointwise_bound(f, h1, z)))
    return out


def two_point_suite(seed: int = 0, size: int = 20) -> list[tuple[str, BoundReport]]:
    from .sampling import random_expansion, random_point

    rng = np.random.default_rng(seed)
    out = []
    for k in range(size):
        f = random_expansion(rng, n_vars=1, max_degree=6, n_terms=4)
        s = 0.9
        z1 = random_point(rng, dims=1, max_radius=0.6).coords[0]
        z2 = random_point(rng, dims=1, max_radius=0.6).coords[0]
        sup = disc_coefficient_sup(f, s)
        out.append((f"two_point[{k}]", disc_two_point_bound(f, s, z1, z2, sup)))
    return out


def lipschitz_suite(seed: int = 0, size: int = 20) -> list[tuple[str, BoundReport]]:
    from .montel import CompactBox
    from .sampling import random_expansion

    rng = np.random.default_rng(seed)
    out = []
    for k in range(size):
        dims = int(rng.integers(1, 4))
        f = random_expansion(rng, n_vars=dims, max_degree=3, n_terms=5)
        radii = tuple(float(v) for v in rng.uniform(0.2, 0.6, dims))
        box = CompactBox(radii)
        s = 0.25 * box.distance()
        x = PointInPolydisc(tuple(box.sample(rng, 1)[0]))
        y = PointInPolydisc(tuple(box.sample(rng, 1)[0]))
        sup = coefficient_sup_bound(f)
        out.append((f"lipschitz[{k}]", lipschitz_bound(f, box, s, x, y, sup)))
    return out


def truncation_suite(seed: int = 0, size: int = 20) -> list[tuple[str, BoundReport]]:
    from .sampling import random_dirichlet

    rng = np.random.default_rng(seed)
    out = []
    for k in range(size):
        d = random_dirichlet(rng, max_n=40, density=0.4)
        x = float(rng.choice([2.0, 5.0, 17.0, 40.0]))
        out.append((f"truncation[{k}]", truncation_ratio(d, x)))
    return out


def abel_suite(seed: int = 0, size: int = 20) -> list[tuple[str, BoundReport]]:
    from .sampling import random_dirichlet

    rng = np.random.default_rng(seed)
    out = []
    for k in range(size):
        d = random_dirichlet(rng, max_n=40, density=0.4)
        eps = float(rng.choice([0.3, 0.5, 1.0]))
        l = int(rng.choice([1, 3, 10]))
        out.append((f"abel[{k}]", abel_tail_bound(d, eps, l)))
    return out


def run_all_suites(seed: int = 0, size: int = 20) -> list[tuple[str, BoundReport]]:
    """Every suite back to back, for the command-line verifier."""
    out: list[tuple[str, BoundReport]] = []
    for suite in (
        pointwise_suite,
        disc_suite,
        two_point_suite,
        lipschitz_suite,
        truncation_suite,
        abel_suite,
    ):
        out.extend(suite(seed=seed, size=size))
    return out

"""Seeded random generators for series, expansions, and polydisc points.

Everything takes an explicit numpy Generator so callers own determinism;
nothing here touches global RNG state.
"""

from __future__ import annotations

import numpy as np

from .analysis import PointInPolydisc
from .bohr import MultiIndex
from .series import DirichletPolynomial, MonomialExpansion

__all__ = [
    "COEFF_LAWS",
    "random_dirichlet",
    "random_dirichlet_exact",
    "random_expansion",
    "random_point",
]

COEFF_LAWS = ("normal", "uniform", "unit")


def _draw_coeff(rng: np.random.Generator, law: str) -> complex:
    if law == "normal":
        re, im = rng.standard_normal(2)
        return complex(re, im) / np.sqrt(2.0)
    if law == "uniform":
        re, im = rng.uniform(-1.0, 1.0, 2)
        return complex(re, im)
    if law == "unit":
        theta = rng.uniform(0.0, 2.0 * np.pi)
        return complex(np.cos(theta), np.sin(theta))
    raise ValueError(f"unknown coefficient law {law!r}; choose from {COEFF_LAWS}")


def random_dirichlet(
    rng: np.random.Generator,
    max_n: int = 30,
    density: float = 0.5,
    law: str = "normal",
) -> DirichletPolynomial:
    """A Dirichlet polynomial supported on a random subset of 1..max_n.

    Each frequency is kept independently with probability ``density``.
    An empty draw falls back to the single term 1 * 1^(-s) so the result
    is never the zero polynomial.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    if not (0.0 < density <= 1.0):
        raise ValueError("density must lie in (0, 1]")
    keep = rng.random(max_n) < density
    terms = {n: _draw_coeff(rng, law) for n in range(1, max_n + 1) if keep[n - 1]}
    if not terms:
        terms = {1: 1.0 + 0j}
    return DirichletPolynomial(terms)


def random_dirichlet_exact(
    rng: np.random.Generator,
    n_terms: int,
    max_n: int = 30,
    law: str = "normal",
) -> DirichletPolynomial:
    """A Dirichlet polynomial with exactly n_terms distinct frequencies."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    if max_n < n_terms:
        raise ValueError("max_n must be >= n_terms to fit distinct frequencies")
    ns = sorted(int(v) for v in rng.choice(np.arange(1, max_n + 1), size=n_terms, replace=False))
    terms: dict[int, complex] = {}
    for n in ns:
        c = _draw_coeff(rng, law)
        while c == 0:
            c = _draw_coeff(rng, law)
        terms[n] = c
    return DirichletPolynomial(terms)


def random_expansion(
    rng: np.random.Generator,
    n_vars: int = 3,
    max_degree: int = 3,
    n_terms: int = 8,
    law: str = "normal",
) -> MonomialExpansion:
    """A power-series polynomial with n_terms distinct random monomials."""
    if n_vars < 0 or max_degree < 0 or n_terms < 1:
        raise ValueError("n_vars, max_degree must be >= 0 and n_terms >= 1")
    chosen: dict[MultiIndex, complex] = {}
    attempts = 0
    while len(chosen) < n_terms and attempts < 100 * n_terms:
        attempts += 1
        if n_vars == 0:
            dense: list[int] = []
        else:
            dense = [int(e) for e in rng.integers(0, max_degree + 1, size=n_vars)]
        alpha = MultiIndex.from_dense(dense)
        if alpha in chosen:
            continue
        chosen[alpha] = _draw_coeff(rng, law)
    return MonomialExpansion(chosen)


def random_point(
    rng: np.random.Generator,
    dims: int,
    max_radius: float = 0.9,
) -> PointInPolydisc:
    """A uniform point of the closed polydisc of radius max_radius < 1."""
    if dims < 0:
        raise ValueError("dims must be >= 0")
    if not (0.0 <= max_radius < 1.0):
        raise ValueError("max_radius must lie in [0, 1)")
    radii = max_radius * np.sqrt(rng.random(dims))
    phases = rng.uniform(0.0, 2.0 * np.pi, dims)
    coords = tuple(complex(rad * np.cos(ph), rad * np.sin(ph)) for rad, ph in zip(radii, phases))
    return PointInPolydisc(coords)

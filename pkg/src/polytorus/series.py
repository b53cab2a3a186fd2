"""Dirichlet polynomials, monomial expansions, and the lift between them.

A Dirichlet polynomial is a finite sum of a_n * n^(-s); re-indexing each
n by its prime-exponent vector turns it into a polynomial in countably
many complex variables, sum of c_alpha * z^alpha, with c_alpha = a_n for
n = product p_k^alpha_k.  The lift and drop below are that re-indexing,
coefficient by coefficient, and are exact.

The square-sum norm sqrt(sum |a_n|^2) is the p = 2 norm of both pictures
(orthogonality of the characters n^(-it), respectively of the monomials
on the torus), which is why it gets a closed form here while other p
need quadrature (see ``analysis``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterator, Mapping

import numpy as np

from .bohr import INT64_MAX, MultiIndex, factorize_to_index, index_to_integer

__all__ = [
    "DirichletPolynomial",
    "HpIndex",
    "MonomialExpansion",
    "bohr_drop",
    "bohr_lift",
    "h2_distance",
    "h2_norm_exact",
    "tail_h2_norm",
    "translate",
    "truncate",
]


@dataclass(frozen=True)
class HpIndex:
    """Integrability exponent p with 1 <= p < infinity."""

    p: float

    def __post_init__(self) -> None:
        if isinstance(self.p, bool):
            raise TypeError("p must be a real number, not bool")
        p = float(self.p)
        if not (p >= 1.0 and math.isfinite(p)):
            raise ValueError("p must satisfy 1 <= p < infinity")
        object.__setattr__(self, "p", p)


def as_p(p: "float | HpIndex") -> float:
    """Validate an exponent given as a float or HpIndex; return the float."""
    if isinstance(p, HpIndex):
        return p.p
    return HpIndex(float(p)).p


def _clean_complex(value) -> complex:
    c = complex(value)
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise ValueError("coefficients must be finite")
    return c


class DirichletPolynomial:
    """Finite map n -> a_n with n >= 1; zero coefficients are never stored."""

    __slots__ = ("_terms", "_ns", "_coeffs", "_log_ns")

    def __init__(self, terms: Mapping[int, complex]):
        clean: dict[int, complex] = {}
        for n, a in terms.items():
            if not isinstance(n, int) or isinstance(n, bool):
                raise TypeError("frequencies must be ints")
            if n < 1:
                raise ValueError("frequencies must be >= 1")
            if n > INT64_MAX:
                raise OverflowError("frequency beyond the 64-bit integer range")
            c = _clean_complex(a)
            if c != 0:
                clean[n] = c
        ns = sorted(clean)
        self._terms = {n: clean[n] for n in ns}
        self._ns = np.array(ns, dtype=np.int64)
        self._coeffs = np.array([clean[n] for n in ns], dtype=np.complex128)
        self._log_ns = np.log(self._ns.astype(np.float64)) if ns else np.zeros(0)

    @property
    def terms(self) -> Mapping[int, complex]:
        return MappingProxyType(self._terms)

    @property
    def support_bound(self) -> int:
        """Largest n carrying a coefficient, 0 for the zero polynomial."""
        return int(self._ns[-1]) if len(self._ns) else 0

    def coefficient(self, n: int) -> complex:
        return self._terms.get(n, 0j)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(n values, coefficients, log n) as aligned arrays, n ascending."""
        return self._ns, self._coeffs, self._log_ns

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[int, complex]]:
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DirichletPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "DirichletPolynomial") -> "DirichletPolynomial":
        if not isinstance(other, DirichletPolynomial):
            return NotImplemented
        merged = dict(self._terms)
        for n, a in other._terms.items():
            merged[n] = merged.get(n, 0j) + a
        return DirichletPolynomial(merged)

    def __sub__(self, other: "DirichletPolynomial") -> "DirichletPolynomial":
        if not isinstance(other, DirichletPolynomial):
            return NotImplemented
        merged = dict(self._terms)
        for n, a in other._terms.items():
            merged[n] = merged.get(n, 0j) - a
        return DirichletPolynomial(merged)

    def __rmul__(self, scalar) -> "DirichletPolynomial":
        c = complex(scalar)
        return DirichletPolynomial({n: c * a for n, a in self._terms.items()})

    def __repr__(self) -> str:
        k = len(self._terms)
        return f"DirichletPolynomial({k} term{'s' if k != 1 else ''}, N={self.support_bound})"


class MonomialExpansion:
    """Finite map alpha -> c_alpha over multi-indices; zeros never stored."""

    __slots__ = ("_terms", "_csr")

    def __init__(self, terms: Mapping[MultiIndex, complex]):
        clean: dict[MultiIndex, complex] = {}
        for alpha, c in terms.items():
            if not isinstance(alpha, MultiIndex):
                raise TypeError("keys must be MultiIndex")
            v = _clean_complex(c)
            if v != 0:
                clean[alpha] = v
        order = sorted(clean, key=lambda a: a.grlex_key())
        self._terms = {a: clean[a] for a in order}
        self._csr = None

    @property
    def terms(self) -> Mapping[MultiIndex, complex]:
        return MappingProxyType(self._terms)

    @property
    def active_vars(self) -> int:
        """Number of leading variables the expansion can depend on (max position)."""
        return max((a.max_position for a in self._terms), default=0)

    @property
    def max_degree(self) -> int:
        """Largest single-variable exponent appearing in any term."""
        return max((a.max_exponent for a in self._terms), default=0)

    @property
    def total_degree(self) -> int:
        return max((a.order for a in self._terms), default=0)

    def coefficient(self, alpha: MultiIndex) -> complex:
        return self._terms.get(alpha, 0j)

    def csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Flattened term layout for the kernels.

        Returns (coeffs, positions0, exponents, offsets) with positions
        0-based; cached after the first call.
        """
        if self._csr is None:
            coeffs = np.array(list(self._terms.values()), dtype=np.complex128)
            positions = []
            exponents = []
            offsets = [0]
            for alpha in self._terms:
                for pos, exp in alpha.pairs:
                    positions.append(pos - 1)
                    exponents.append(exp)
                offsets.append(len(positions))
            self._csr = (
                coeffs,
                np.array(positions, dtype=np.int64),
                np.array(exponents, dtype=np.int64),
                np.array(offsets, dtype=np.int64),
            )
        return self._csr

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[MultiIndex, complex]]:
        return iter(self._terms.items())

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialExpansion):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "MonomialExpansion") -> "MonomialExpansion":
        if not isinstance(other, MonomialExpansion):
            return NotImplemented
        merged = dict(self._terms)
        for a, c in other._terms.items():
            merged[a] = merged.get(a, 0j) + c
        return MonomialExpansion(merged)

    def __sub__(self, other: "MonomialExpansion") -> "MonomialExpansion":
        if not isinstance(other, MonomialExpansion):
            return NotImplemented
        merged = dict(self._terms)
        for a, c in other._terms.items():
            merged[a] = merged.get(a, 0j) - c
        return MonomialExpansion(merged)

    def __rmul__(self, scalar) -> "MonomialExpansion":
        c = complex(scalar)
        return MonomialExpansion({a: c * v for a, v in self._terms.items()})

    def __repr__(self) -> str:
        k = len(self._terms)
        return f"MonomialExpansion({k} term{'s' if k != 1 else ''}, vars={self.active_vars}, deg={self.max_degree})"


def bohr_lift(d: DirichletPolynomial) -> MonomialExpansion:
    """Re-index a_n by the multi-index of n.  Exact; no coefficients change."""
    return MonomialExpansion({factorize_to_index(n): a for n, a in d.terms.items()})


def bohr_drop(f: MonomialExpansion) -> DirichletPolynomial:
    """Inverse of bohr_lift.  OverflowError if some alpha maps beyond int64."""
    return DirichletPolynomial({index_to_integer(a): c for a, c in f.terms.items()})


def translate(d: DirichletPolynomial, eps: float) -> DirichletPolynomial:
    """Damp coefficients to a_n * n^(-eps) (a horizontal shift by eps).

    n^(-eps) is computed as exp(-eps * log n), so each coefficient picks
    up at most a few ulp of relative error; eps = 0 is the exact
    identity and n = 1 is never damped.
    """
    eps = float(eps)
    if not math.isfinite(eps):
        raise ValueError("eps must be finite")
    if eps == 0.0:
        return d
    return DirichletPolynomial(
        {n: a * math.exp(-eps * math.log(n)) for n, a in d.terms.items()}
    )


def truncate(d: DirichletPolynomial, x: float) -> DirichletPolynomial:
    """Keep the terms with n <= x.  Requires x >= 1 (so n = 1 always survives)."""
    x = float(x)
    if not (x >= 1.0):
        raise ValueError("truncation point must satisfy x >= 1")
    return DirichletPolynomial({n: a for n, a in d.terms.items() if n <= x})


def h2_norm_exact(d: DirichletPolynomial) -> float:
    """sqrt(sum |a_n|^2): the exact p = 2 norm."""
    _, coeffs, _ = d.arrays()
    return float(np.sqrt(np.sum(np.abs(coeffs) ** 2)))


def tail_h2_norm(d: DirichletPolynomial, l: int, eps: float) -> float:
    """Exact p = 2 norm of the translated tail: sqrt(sum_{n>l} |a_n|^2 n^(-2 eps)).

    Requires l >= 0 and eps > 0 (the damping is what makes tails small;
    see ``bounds.abel_tail_bound`` for the certified comparison).
    """
    if not isinstance(l, int) or isinstance(l, bool) or l < 0:
        raise ValueError("l must be an int >= 0")
    eps = float(eps)
    if not (eps > 0 and math.isfinite(eps)):
        raise ValueError("eps must be positive and finite")
    ns, coeffs, log_ns = d.arrays()
    mask = ns > l
    if not mask.any():
        return 0.0
    damped = np.abs(coeffs[mask]) ** 2 * np.exp(-2.0 * eps * log_ns[mask])
    return float(np.sqrt(np.sum(damped)))


def h2_distance(d1: DirichletPolynomial, d2: DirichletPolynomial) -> float:
    """Exact p = 2 distance between two Dirichlet polynomials."""
    return h2_norm_exact(d1 - d2)

"""Primes and the integer <-> multi-index correspondence.

Every integer n >= 1 factors uniquely over the primes 2, 3, 5, ...;
recording the exponent of the k-th prime in slot k turns n into a
finitely supported vector of non-negative integers, and the map is a
bijection.  That correspondence is what lets a coefficient family
indexed by integers be re-indexed by monomials in countably many
variables and back, so it has to be exact: everything here is integer
arithmetic, and products that would leave the 64-bit range are a hard
error rather than a wrong answer.

Positions are 1-based: position 1 is the prime 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = [
    "INT64_MAX",
    "MultiIndex",
    "PrimeBasis",
    "enumerate_indices",
    "factorize_to_index",
    "first_primes",
    "index_to_integer",
    "is_prime",
    "nth_prime",
    "prime_position",
    "primes_upto",
]

INT64_MAX = 2**63 - 1

# Grow-on-demand prime table.  _PRIMES is always the complete list of
# primes <= _SIEVED, so position lookups are a dict hit.
_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]
_SIEVED = 13
_POSITION = {p: i + 1 for i, p in enumerate(_PRIMES)}


def _extend_sieve(limit: int) -> None:
    global _PRIMES, _SIEVED, _POSITION
    if limit <= _SIEVED:
        return
    limit = max(limit, 2 * _SIEVED)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, int(limit**0.5) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    _PRIMES = [int(p) for p in np.flatnonzero(mask)]
    _SIEVED = limit
    _POSITION = {p: i + 1 for i, p in enumerate(_PRIMES)}


def primes_upto(x: int) -> list[int]:
    """All primes <= x, ascending."""
    if x < 2:
        return []
    _extend_sieve(x)
    import bisect

    return _PRIMES[: bisect.bisect_right(_PRIMES, x)]


def nth_prime(k: int) -> int:
    """The k-th prime, 1-based: nth_prime(1) == 2."""
    if k < 1:
        raise ValueError("prime index must be >= 1")
    while k > len(_PRIMES):
        _extend_sieve(2 * _SIEVED)
    return _PRIMES[k - 1]


def first_primes(m: int) -> tuple[int, ...]:
    """The first m primes as a tuple."""
    if m < 0:
        raise ValueError("m must be >= 0")
    while m > len(_PRIMES):
        _extend_sieve(2 * _SIEVED)
    return tuple(_PRIMES[:m])


def prime_position(p: int) -> int:
    """1-based position of the prime p; ValueError if p is not prime."""
    _extend_sieve(p)
    pos = _POSITION.get(p)
    if pos is None:
        raise ValueError(f"{p} is not prime")
    return pos


def is_prime(n: int) -> bool:
    """Trial-division primality test (small n; used to audit the sieve)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeBasis:
    """A snapshot of the first m primes, ascending.

    The working prime table grows on demand; this type freezes a prefix
    of it so code that needs "the variables in play" can hold a stable
    object.
    """

    primes: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(self.primes[i] >= self.primes[i + 1] for i in range(len(self.primes) - 1)):
            raise ValueError("primes must be strictly increasing")
        if self.primes and self.primes[0] != 2:
            raise ValueError("a prime basis starts at 2")

    @classmethod
    def first(cls, m: int) -> "PrimeBasis":
        return cls(first_primes(m))

    @property
    def m(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class MultiIndex:
    """Finitely supported exponent vector, stored as (position, exponent) pairs.

    Positions are 1-based and strictly increasing, exponents >= 1; the
    empty tuple is the zero index (the integer 1).  Instances are
    immutable and hashable so they can key coefficient maps.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 0
        for pos, exp in self.pairs:
            if not isinstance(pos, int) or isinstance(pos, bool):
                raise TypeError("positions must be ints")
            if not isinstance(exp, int) or isinstance(exp, bool):
                raise TypeError("exponents must be ints")
            if pos <= last:
                raise ValueError("positions must be strictly increasing and >= 1")
            if exp < 1:
                raise ValueError("exponents must be >= 1")
            last = pos

    @classmethod
    def from_dense(cls, exponents: Iterable[int]) -> "MultiIndex":
        """Build from a dense exponent sequence (position j+1 gets exponents[j])."""
        pairs = []
        for j, e in enumerate(exponents):
            e = int(e)
            if e < 0:
                raise ValueError("exponents must be >= 0")
            if e:
                pairs.append((j + 1, e))
        return cls(tuple(pairs))

    @property
    def order(self) -> int:
        """Total degree |alpha|."""
        return sum(e for _, e in self.pairs)

    @property
    def max_position(self) -> int:
        """Largest occupied position, 0 for the zero index."""
        return self.pairs[-1][0] if self.pairs else 0

    @property
    def max_exponent(self) -> int:
        return max((e for _, e in self.pairs), default=0)

    def dense(self, length: int | None = None) -> tuple[int, ...]:
        """Dense exponent tuple of the given length (default: max_position)."""
        n = self.max_position if length is None else length
        if n < self.max_position:
            raise ValueError("length shorter than the index support")
        out = [0] * n
        for pos, exp in self.pairs:
            out[pos - 1] = exp
        return tuple(out)

    def exponent_at(self, position: int) -> int:
        for pos, exp in self.pairs:
            if pos == position:
                return exp
            if pos > position:
                return 0
        return 0

    def grlex_key(self) -> tuple:
        """Graded-lexicographic sort key: total degree first, then the dense vector."""
        return (self.order, self.dense())

    def __add__(self, other: "MultiIndex") -> "MultiIndex":
        merged: dict[int, int] = {}
        for pos, exp in self.pairs:
            merged[pos] = exp
        for pos, exp in other.pairs:
            merged[pos] = merged.get(pos, 0) + exp
        return MultiIndex(tuple(sorted(merged.items())))

    def __repr__(self) -> str:
        return f"MultiIndex({self.pairs!r})"


ZERO_INDEX = MultiIndex(())


def factorize_to_index(n: int) -> MultiIndex:
    """Multi-index of n: exponent of the k-th prime goes in position k.

    n == 1 maps to the zero index.  n < 1 is a domain error.
    """
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError("n must be an int")
    if n < 1:
        raise ValueError("n must be >= 1")
    pairs = []
    rest = n
    k = 0
    while rest > 1:
        k += 1
        p = nth_prime(k)
        if p * p > rest:
            # The remainder is prime; its position may lie far beyond k.
            pairs.append((prime_position(rest), 1))
            break
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            pairs.append((k, e))
    pairs.sort()
    return MultiIndex(tuple(pairs))


def index_to_integer(alpha: MultiIndex) -> int:
    """The integer whose factorization is alpha: product of p_k^alpha_k.

    Results must stay within int64 so they remain exact in array and file
    form; anything larger raises OverflowError instead of wrapping.
    """
    n = 1
    for pos, exp in alpha.pairs:
        n *= nth_prime(pos) ** exp
        if n > INT64_MAX:
            raise OverflowError("index maps beyond the 64-bit integer range")
    return n


def enumerate_indices(max_n: int) -> Iterator[MultiIndex]:
    """Multi-indices of 1..max_n in integer order."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    for n in range(1, max_n + 1):
        yield factorize_to_index(n)

"""Plain-text serialization and run configuration.

Formats are line-oriented text so fixtures stay diffable and can be
shared byte-for-byte across reimplementations:

* series files start with a header line, ``dirichlet v1`` or
  ``monomial v1``, followed by one record per term;
* family files hold an ordered list of series under ``family dirichlet
  v1`` or ``family monomial v1``, each record prefixed with its member
  ordinal;
* floats are printed with %.17g, which round-trips IEEE doubles.

Records must arrive sorted (by frequency, or graded-lexicographically
on the multi-index) with no duplicates: the ordering is part of the
format, and enforcing it on parse keeps serialize/parse a byte-level
identity.  Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .analysis import QuadratureConfig
from .bohr import MultiIndex
from .series import DirichletPolynomial, MonomialExpansion

__all__ = [
    "ParseError",
    "RunConfig",
    "format_float",
    "load_config",
    "parse_family",
    "parse_series",
    "serialize_family",
    "serialize_series",
]

DIRICHLET_HEADER = "dirichlet v1"
MONOMIAL_HEADER = "monomial v1"
FAMILY_DIRICHLET_HEADER = "family dirichlet v1"
FAMILY_MONOMIAL_HEADER = "family monomial v1"


class ParseError(ValueError):
    """Malformed file content; the message carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def format_float(x: float) -> str:
    """%.17g: enough digits to reproduce any double exactly."""
    return "%.17g" % float(x)


def _dirichlet_record(n: int, c: complex) -> str:
    return f"{n} {format_float(c.real)} {format_float(c.imag)}"


def _monomial_record(alpha: MultiIndex, c: complex) -> str:
    if alpha.pairs:
        positions = ",".join(str(p) for p, _ in alpha.pairs)
        exponents = ",".join(str(e) for _, e in alpha.pairs)
    else:
        positions = exponents = "-"
    return f"{positions} {exponents} {format_float(c.real)} {format_float(c.imag)}"


def serialize_series(series: "DirichletPolynomial | MonomialExpansion") -> str:
    if isinstance(series, DirichletPolynomial):
        lines = [DIRICHLET_HEADER]
        lines += [_dirichlet_record(n, c) for n, c in series]
    elif isinstance(series, MonomialExpansion):
        lines = [MONOMIAL_HEADER]
        lines += [_monomial_record(alpha, c) for alpha, c in series]
    else:
        raise TypeError("expected a DirichletPolynomial or MonomialExpansion")
    return "\n".join(lines) + "\n"


def serialize_family(family) -> str:
    members = list(family)
    if not members:
        raise ValueError("family must be nonempty")
    if all(isinstance(f, DirichletPolynomial) for f in members):
        lines = [FAMILY_DIRICHLET_HEADER]
        for k, f in enumerate(members):
            if len(f) == 0:
                raise ValueError("family files cannot hold a zero member (no records would name it)")
            lines += [f"{k} {_dirichlet_record(n, c)}" for n, c in f]
    elif all(isinstance(f, MonomialExpansion) for f in members):
        lines = [FAMILY_MONOMIAL_HEADER]
        for k, f in enumerate(members):
            if len(f) == 0:
                raise ValueError("family files cannot hold a zero member (no records would name it)")
            lines += [f"{k} {_monomial_record(alpha, c)}" for alpha, c in f]
    else:
        raise TypeError("family must be homogeneous in series kind")
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield line_no, line


def _parse_float(token: str, line_no: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(line_no, f"bad {what} {token!r}") from None
    if math.isnan(value) or math.isinf(value):
        raise ParseError(line_no, f"{what} must be finite, got {token!r}")
    return value


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(line_no, f"bad {what} {token!r}") from None


def _parse_dirichlet_fields(parts: list[str], line_no: int) -> tuple[int, complex]:
    if len(parts) != 3:
        raise ParseError(line_no, "expected 'n re im'")
    n = _parse_int(parts[0], line_no, "frequency")
    if n < 1:
        raise ParseError(line_no, f"frequency must be >= 1, got {n}")
    re = _parse_float(parts[1], line_no, "real part")
    im = _parse_float(parts[2], line_no, "imaginary part")
    return n, complex(re, im)


def _parse_monomial_fields(parts: list[str], line_no: int) -> tuple[MultiIndex, complex]:
    if len(parts) != 4:
        raise ParseError(line_no, "expected 'positions exponents re im'")
    pos_tok, exp_tok = parts[0], parts[1]
    if (pos_tok == "-") != (exp_tok == "-"):
        raise ParseError(line_no, "positions and exponents must both be '-' or both be lists")
    if pos_tok == "-":
        pairs: tuple[tuple[int, int], ...] = ()
    else:
        positions = [_parse_int(t, line_no, "position") for t in pos_tok.split(",")]
        exponents = [_parse_int(t, line_no, "exponent") for t in exp_tok.split(",")]
        if len(positions) != len(exponents):
            raise ParseError(line_no, "positions and exponents differ in length")
        pairs = tuple(zip(positions, exponents))
    re = _parse_float(parts[2], line_no, "real part")
    im = _parse_float(parts[3], line_no, "imaginary part")
    try:
        alpha = MultiIndex(pairs)
    except ValueError as exc:
        raise ParseError(line_no, str(exc)) from None
    return alpha, complex(re, im)


def parse_series(text: str) -> "DirichletPolynomial | MonomialExpansion":
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "empty file: missing header")
    header_no, header = lines[0]
    records = lines[1:]
    if header == DIRICHLET_HEADER:
        terms: dict[int, complex] = {}
        last_n = 0
        for line_no, line in records:
            n, c = _parse_dirichlet_fields(line.split(), line_no)
            if n <= last_n:
                raise ParseError(line_no, "frequencies must be strictly increasing")
            last_n = n
            terms[n] = c
        return DirichletPolynomial(terms)
    if header == MONOMIAL_HEADER:
        mono: dict[MultiIndex, complex] = {}
        last_key = None
        for line_no, line in records:
            alpha, c = _parse_monomial_fields(line.split(), line_no)
            key = alpha.grlex_key()
            if last_key is not None and key <= last_key:
                raise ParseError(line_no, "multi-indices must be strictly increasing in graded-lex order")
            last_key = key
            mono[alpha] = c
        return MonomialExpansion(mono)
    raise ParseError(header_no, f"unknown header {header!r}")


def parse_family(text: str) -> "list[DirichletPolynomial] | list[MonomialExpansion]":
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "empty file: missing header")
    header_no, header = lines[0]
    if header not in (FAMILY_DIRICHLET_HEADER, FAMILY_MONOMIAL_HEADER):
        raise ParseError(header_no, f"unknown header {header!r}")
    dirichlet = header == FAMILY_DIRICHLET_HEADER
    members: list = []
    current: dict = {}
    current_ordinal = 0
    last_sort_key = None

    def flush(line_no: int) -> None:
        if not current:
            raise ParseError(line_no, "family member with no records")
        members.append(
            DirichletPolynomial(dict(current)) if dirichlet else MonomialExpansion(dict(current))
        )
        current.clear()

    for line_no, line in lines[1:]:
        parts = line.split()
        if len(parts) < 1:
            raise ParseError(line_no, "empty record")
        ordinal = _parse_int(parts[0], line_no, "member ordinal")
        if ordinal == current_ordinal + 1:
            flush(line_no)
            current_ordinal = ordinal
            last_sort_key = None
        elif ordinal != current_ordinal:
            raise ParseError(line_no, f"member ordinals must advance by one, got {ordinal}")
        if dirichlet:
            n, c = _parse_dirichlet_fields(parts[1:], line_no)
            key: object = n
            current[n] = c
        else:
            alpha, c = _parse_monomial_fields(parts[1:], line_no)
            key = alpha.grlex_key()
            current[alpha] = c
        if last_sort_key is not None and key <= last_sort_key:
            raise ParseError(line_no, "records within a member must be strictly increasing")
        last_sort_key = key
    if not current:
        raise ParseError(lines[-1][0], "family has a header but no records")
    flush(lines[-1][0])
    return members


@dataclass(frozen=True)
class RunConfig:
    """Run-wide knobs shared by the command-line tools.

    Loaded from JSON; unknown keys are rejected so typos cannot silently
    fall back to defaults.  c_truncation defaults to 1/ln 2, the constant
    that makes the truncation ratio bound hold for every x >= 2 at p = 2.
    """

    p: float = 2.0
    c_truncation: float = 1.0 / math.log(2.0)
    seed: int = 0
    grid_start: int = 8
    grid_cap: int = 128
    rel_tol: float = 1e-8
    max_grid_dims: int = 4
    tensor_point_cap: int = 1 << 22
    qmc_samples: int = 8192
    qmc_shifts: int = 16
    net_size_cap: int = 1 << 26
    audit_samples: int = 4096
    suite_size: int = 100
    n_dense: int = 16
    schedule: str = "harmonic"
    schedule_ratio: float = 0.5

    def __post_init__(self) -> None:
        if not (self.p >= 1.0 and math.isfinite(self.p)):
            raise ValueError("p must be a finite real >= 1")
        if not (self.c_truncation > 0):
            raise ValueError("c_truncation must be positive")
        if self.suite_size < 1:
            raise ValueError("suite_size must be >= 1")
        if self.audit_samples < 0:
            raise ValueError("audit_samples must be >= 0")
        if self.net_size_cap < 1:
            raise ValueError("net_size_cap must be >= 1")
        if self.n_dense < 1:
            raise ValueError("n_dense must be >= 1")
        if self.schedule not in ("harmonic", "geometric"):
            raise ValueError("schedule must be 'harmonic' or 'geometric'")
        if not (0.0 < self.schedule_ratio < 1.0):
            raise ValueError("schedule_ratio must lie in (0, 1)")
        self.quadrature()

    def quadrature(self, force_method: str | None = None) -> QuadratureConfig:
        return QuadratureConfig(
            max_grid_dims=self.max_grid_dims,
            grid_start=self.grid_start,
            grid_cap=self.grid_cap,
            rel_tol=self.rel_tol,
            tensor_point_cap=self.tensor_point_cap,
            qmc_samples=self.qmc_samples,
            qmc_shifts=self.qmc_shifts,
            seed=self.seed,
            force_method=force_method,
        )


def load_config(path: "str | Path | None") -> RunConfig:
    """RunConfig from a JSON file; None means all defaults."""
    if path is None:
        return RunConfig()
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, dict):
        raise ValueError("config file must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(unknown)}")
    return RunConfig(**raw)

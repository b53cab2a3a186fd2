"""Command-line surface.

Eleven subcommands map one-to-one onto library operations: transforms
(lift, drop, translate, truncate, coeffs, gen-random) read and write
series files, measurements (norm, bayart-mean, verify-bounds) write
versioned CSV, and the extraction commands write a line-oriented report
plus an optional per-stage CSV.  All randomness is seeded explicitly,
every float is printed with %.17g, and rows come out in a fixed order,
so identical invocations produce byte-identical output.

Exit codes: 0 success, 1 domain error (bad values, malformed files),
2 resource error (a requested grid or net exceeds its cap), 64 usage
error (unknown command or flags).  A failing bound inside verify-bounds
is a reported result, not an error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from .analysis import bayart_mean_norm, extract_coefficients, evaluate_many, hp_norm
from .bounds import run_all_suites
from .errors import ResourceError
from .fileio import (
    ParseError,
    format_float,
    load_config,
    parse_family,
    parse_series,
    serialize_series,
)
from .montel import (
    CompactBox,
    ExtractionReport,
    dirichlet_montel,
    extract_and_certify,
    geometric_schedule,
)
from .sampling import COEFF_LAWS, random_dirichlet_exact
from .series import (
    DirichletPolynomial,
    MonomialExpansion,
    bohr_drop,
    bohr_lift,
    translate,
    truncate,
)

__all__ = ["main"]


class _UsageExit(Exception):
    def __init__(self, status: int):
        self.status = status


class _Parser(argparse.ArgumentParser):
    """argparse that signals usage problems with exit code 64."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageExit(64)

    def exit(self, status: int = 0, message: str | None = None):
        if message:
            sys.stderr.write(message)
        raise _UsageExit(status)


def _build_parser() -> _Parser:
    parser = _Parser(prog="polytorus", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("-o", "--output", metavar="PATH", help="output file (default stdout)")
        return p

    p = cmd("lift", "Dirichlet series file -> monomial expansion file")
    p.add_argument("input", metavar="SERIES")

    p = cmd("drop", "monomial expansion file -> Dirichlet series file")
    p.add_argument("input", metavar="SERIES")

    p = cmd("norm", "Hp norm of a series file, as CSV")
    p.add_argument("input", metavar="SERIES")
    p.add_argument("--p", type=float, default=None, help="exponent (default from config)")
    p.add_argument(
        "--method",
        choices=["auto", "exact_parseval", "tensor_grid", "qmc"],
        default="auto",
    )
    p.add_argument("--config", metavar="JSON")

    p = cmd("coeffs", "re-extract coefficients of a series file through the grid DFT")
    p.add_argument("input", metavar="SERIES")
    p.add_argument("--vars", type=int, default=None, help="variables to probe (default: active)")
    p.add_argument("--degree", type=int, default=None, help="per-variable degree bound (default: observed)")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=None, help="grid points per axis (default: degree+1)")

    p = cmd("translate", "flow a Dirichlet series file right by eps")
    p.add_argument("input", metavar="SERIES")
    p.add_argument("--eps", type=float, required=True)

    p = cmd("truncate", "keep Dirichlet frequencies n <= x")
    p.add_argument("input", metavar="SERIES")
    p.add_argument("--x", type=float, required=True)

    p = cmd("verify-bounds", "run the randomized bound suites, as CSV")
    p.add_argument("--config", metavar="JSON")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--size", type=int, default=None, help="cases per suite (default from config)")

    p = cmd("montel-extract", "diagonal extraction + uniform-Cauchy certification")
    p.add_argument("family", metavar="FAMILY")
    p.add_argument("--box", required=True, metavar="R1[,R2,...]", help="box radii in [0,1)")
    p.add_argument("--eps", type=float, required=True, help="uniform-Cauchy target")
    p.add_argument("--config", metavar="JSON")
    p.add_argument("--stages-csv", metavar="PATH", help="also write per-stage certificates as CSV")

    p = cmd("dirichlet-montel", "translated-norm selection for Dirichlet families")
    p.add_argument("family", metavar="FAMILY")
    p.add_argument("--eps", type=float, required=True, help="translation distance (must be > 0)")
    p.add_argument("--eta", type=float, required=True, help="tail budget")
    p.add_argument("--config", metavar="JSON")
    p.add_argument("--stages-csv", metavar="PATH")

    p = cmd("bayart-mean", "finite-window vertical line mean norm, as CSV")
    p.add_argument("input", metavar="SERIES")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--window", type=float, required=True, help="half-width R of the t window")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--config", metavar="JSON")

    p = cmd("gen-random", "deterministic random Dirichlet series file")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--max-n", type=int, default=30)
    p.add_argument("--law", choices=list(COEFF_LAWS), default="normal")
    p.add_argument("--seed", type=int, required=True)

    return parser


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read_series(path: str):
    return parse_series(Path(path).read_text())


def _read_family(path: str):
    return parse_family(Path(path).read_text())


def _as_expansion(series) -> MonomialExpansion:
    if isinstance(series, DirichletPolynomial):
        return bohr_lift(series)
    return series


def _as_dirichlet(series) -> DirichletPolynomial:
    if isinstance(series, MonomialExpansion):
        raise ValueError("this command needs a Dirichlet series file (header 'dirichlet v1')")
    return series


def _csv_text(header_comment: str, columns: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    buf.write(f"# {header_comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def _format_site(site: object) -> str:
    if isinstance(site, int):
        return str(site)
    return ";".join(f"{format_float(c.real)}{'+' if c.imag >= 0 else '-'}{format_float(abs(c.imag))}j" for c in site)


def _stages_csv(report: ExtractionReport) -> str:
    rows = [
        [
            str(s.stage),
            _format_site(s.site),
            format_float(s.tolerance),
            format_float(s.diameter),
            str(s.survivors),
            format_float(s.representative.real),
            format_float(s.representative.imag),
        ]
        for s in report.stages
    ]
    return _csv_text(
        "polytorus montel-stages v1",
        ["stage", "site", "tolerance", "diameter", "survivors", "rep_re", "rep_im"],
        rows,
    )


def _extraction_report_text(kind: str, report: ExtractionReport) -> str:
    lines = [f"# polytorus {kind} v1"]
    lines.append("selected_indices: " + " ".join(str(i) for i in report.selected_indices))
    lines.append(f"stages_applied: {len(report.stages)}")
    if report.cauchy_modulus is not None:
        lines.append(f"cauchy_modulus: {format_float(report.cauchy_modulus)}")
    if report.certified is not None:
        lines.append(f"certified: {_bool_str(report.certified)}")
    if report.limit is not None:
        lines.append(f"limit_terms: {len(report.limit)}")
    if report.limit_norm_report is not None:
        lines.append(f"limit_norm: {format_float(report.limit_norm_report.lhs)}")
        lines.append(f"limit_norm_bound: {format_float(report.limit_norm_report.rhs)}")
        lines.append(f"limit_norm_holds: {_bool_str(report.limit_norm_report.holds)}")
    for key in sorted(report.context):
        if key == "stages_applied":
            continue
        value = report.context[key]
        if isinstance(value, float):
            value = format_float(value)
        elif isinstance(value, tuple):
            value = " ".join(
                format_float(v) if isinstance(v, float) else str(v) for v in value
            )
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _run(args) -> int:
    if args.command == "lift":
        series = _as_dirichlet(_read_series(args.input))
        _write_text(args.output, serialize_series(bohr_lift(series)))
        return 0

    if args.command == "drop":
        series = _read_series(args.input)
        if isinstance(series, DirichletPolynomial):
            raise ValueError("this command needs a monomial expansion file (header 'monomial v1')")
        _write_text(args.output, serialize_series(bohr_drop(series)))
        return 0

    if args.command == "norm":
        cfg = load_config(args.config)
        p = cfg.p if args.p is None else args.p
        force = None if args.method == "auto" else args.method
        est = hp_norm(_as_expansion(_read_series(args.input)), p, cfg.quadrature(force))
        text = _csv_text(
            "polytorus norm v1",
            ["value", "method", "error_proxy", "p"],
            [[format_float(est.value), est.method, format_float(est.error_proxy), format_float(p)]],
        )
        _write_text(args.output, text)
        return 0

    if args.command == "coeffs":
        f = _as_expansion(_read_series(args.input))
        m = f.active_vars if args.vars is None else args.vars
        degree = f.max_degree if args.degree is None else args.degree
        recovered = extract_coefficients(
            lambda pts: evaluate_many(f, pts),
            m,
            degree,
            r=args.radius,
            n_grid=args.grid,
            vectorized=True,
        )
        _write_text(args.output, serialize_series(recovered))
        return 0

    if args.command == "translate":
        series = _as_dirichlet(_read_series(args.input))
        _write_text(args.output, serialize_series(translate(series, args.eps)))
        return 0

    if args.command == "truncate":
        series = _as_dirichlet(_read_series(args.input))
        _write_text(args.output, serialize_series(truncate(series, args.x)))
        return 0

    if args.command == "verify-bounds":
        cfg = load_config(args.config)
        seed = cfg.seed if args.seed is None else args.seed
        size = cfg.suite_size if args.size is None else args.size
        rows = []
        for label, report in run_all_suites(seed=seed, size=size):
            rows.append(
                [
                    label,
                    format_float(report.lhs),
                    format_float(report.rhs),
                    _bool_str(report.holds),
                    format_float(report.slack),
                    _bool_str(report.marginal),
                ]
            )
        text = _csv_text(
            "polytorus verify-bounds v1",
            ["label", "lhs", "rhs", "holds", "slack", "marginal"],
            rows,
        )
        _write_text(args.output, text)
        return 0

    if args.command == "montel-extract":
        cfg = load_config(args.config)
        family = [_as_expansion(f) for f in _read_family(args.family)]
        radii = tuple(float(tok) for tok in args.box.split(","))
        schedule = None
        if cfg.schedule == "geometric":
            schedule = geometric_schedule(cfg.n_dense, ratio=cfg.schedule_ratio)
        report = extract_and_certify(
            family,
            CompactBox(radii),
            args.eps,
            n_dense=cfg.n_dense,
            schedule=schedule,
            p=cfg.p,
            cfg=cfg.quadrature(),
            audit_samples=cfg.audit_samples,
            seed=cfg.seed,
            net_size_cap=cfg.net_size_cap,
        )
        _write_text(args.output, _extraction_report_text("montel-extract", report))
        if args.stages_csv:
            Path(args.stages_csv).write_text(_stages_csv(report))
        return 0

    if args.command == "dirichlet-montel":
        cfg = load_config(args.config)
        family = _read_family(args.family)
        if not all(isinstance(f, DirichletPolynomial) for f in family):
            raise ValueError("this command needs a Dirichlet family file (header 'family dirichlet v1')")
        report = dirichlet_montel(family, args.eps, args.eta, C=cfg.c_truncation)
        _write_text(args.output, _extraction_report_text("dirichlet-montel", report))
        if args.stages_csv:
            Path(args.stages_csv).write_text(_stages_csv(report))
        return 0

    if args.command == "bayart-mean":
        cfg = load_config(args.config)
        p = cfg.p if args.p is None else args.p
        series = _as_dirichlet(_read_series(args.input))
        est = bayart_mean_norm(series, p, args.window, args.samples)
        text = _csv_text(
            "polytorus bayart-mean v1",
            ["value", "method", "error_proxy", "p", "window", "samples"],
            [
                [
                    format_float(est.value),
                    est.method,
                    format_float(est.error_proxy),
                    format_float(p),
                    format_float(args.window),
                    str(args.samples),
                ]
            ],
        )
        _write_text(args.output, text)
        return 0

    if args.command == "gen-random":
        rng = np.random.default_rng(args.seed)
        series = random_dirichlet_exact(rng, args.terms, args.max_n, args.law)
        _write_text(args.output, serialize_series(series))
        return 0

    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.error("a command is required")
        return _run(args)
    except _UsageExit as exc:
        return exc.status
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # The consumer closed stdout (e.g. head); suppress the traceback noise.
        try:
            sys.stdout.close()
        except OSError:
            pass
        return 1
    except (ParseError, ValueError, TypeError, OverflowError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Acceptance suite: ten go/no-go checks, one test per criterion.

Each test prints a single "criterion k PASS/FAIL" line (visible with -s,
or via the -v test report) and then asserts, so a red run names exactly
the criteria that failed.
"""

import math
import subprocess
import sys
import time

import numpy as np
import pytest

from polytorus import (
    CompactBox,
    DirichletPolynomial,
    MonomialExpansion,
    MultiIndex,
    QuadratureConfig,
    ZERO_INDEX,
    bayart_mean_norm,
    bohr_lift,
    dirichlet_montel,
    disc_pointwise_bound,
    disc_two_point_bound,
    evaluate_many,
    extract_and_certify,
    extract_coefficients,
    h2_distance,
    h2_norm_exact,
    hp_norm,
    pointwise_bound,
    serialize_series,
    translate,
    truncation_ratio,
    abel_tail_bound,
)
from polytorus.sampling import random_dirichlet_exact, random_expansion, random_point


def report(k, ok, detail):
    print(f"criterion {k} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {k}: {detail}"


def _smooth_frequencies(limit=30, primes=(2, 3, 5)):
    out = []
    for n in range(1, limit + 1):
        m = n
        for p in primes:
            while m % p == 0:
                m //= p
        if m == 1:
            out.append(n)
    return out


def test_criterion_01_parseval_consistency():
    """Tensor-grid p=2 norms agree with exact Parseval on 200 series."""
    rng = np.random.default_rng(101)
    freqs = _smooth_frequencies()
    cfg = QuadratureConfig(force_method="tensor_grid")
    t0 = time.time()
    worst = 0.0
    for _ in range(200):
        k = int(rng.integers(1, 11))
        chosen = rng.choice(freqs, size=min(k, len(freqs)), replace=False)
        d = DirichletPolynomial({
            int(n): complex(rng.normal(), rng.normal()) for n in chosen
        })
        if not d.terms:
            continue
        est = hp_norm(bohr_lift(d), 2.0, cfg)
        exact = h2_norm_exact(d)
        worst = max(worst, abs(est.value - exact) / exact)
    elapsed = time.time() - t0
    ok = worst <= 1e-9 and elapsed <= 60.0
    report(1, ok, f"worst rel err {worst:.3e}, elapsed {elapsed:.1f}s")


def test_criterion_02_bayart_line_mean():
    """Finite-window line means reach the H2 norm within 2% on 50 series."""
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(50):
        k = int(rng.integers(3, 11))
        d = random_dirichlet_exact(rng, k, max_n=20)
        est = bayart_mean_norm(d, 2.0, R=1e4, samples=200_000)
        exact = h2_norm_exact(d)
        worst = max(worst, abs(est.value - exact) / exact)
    ok = worst <= 0.02
    report(2, ok, f"worst rel err {worst:.5f} (allowed 0.02)")


def test_criterion_03_coefficient_round_trip():
    """Grid DFT recovers the coefficients of 200 random expansions."""
    rng = np.random.default_rng(103)
    worst = 0.0
    for _ in range(200):
        m = int(rng.integers(1, 4))
        f = random_expansion(rng, n_vars=m, max_degree=6,
                             n_terms=int(rng.integers(1, 13)))
        got = extract_coefficients(
            lambda z: evaluate_many(f, z), m, 6, vectorized=True
        )
        for alpha in set(got.terms) | set(f.terms):
            worst = max(worst, abs(got.coefficient(alpha) - f.coefficient(alpha)))
    ok = worst <= 1e-10
    report(3, ok, f"max abs coefficient error {worst:.3e}")


def test_criterion_04_pointwise_growth_bound():
    """The interior growth bound holds on 1000 random (F, z) pairs."""
    rng = np.random.default_rng(104)
    failures = 0
    for _ in range(1000):
        m = int(rng.integers(1, 5))
        f = random_expansion(rng, n_vars=m, max_degree=3,
                             n_terms=int(rng.integers(1, 7)))
        z = random_point(rng, m, max_radius=0.8)
        if not pointwise_bound(f, 2.0, z).holds:
            failures += 1
    report(4, failures == 0, f"{1000 - failures}/1000 held")


def _circle_mean_abs(coeffs, nodes=4096):
    t = np.linspace(0.0, 2.0 * np.pi, nodes, endpoint=False)
    return float(np.mean(np.abs(np.polyval(coeffs[::-1], np.exp(1j * t)))))


def _circle_sup_abs(coeffs, s, nodes=8192):
    t = np.linspace(0.0, 2.0 * np.pi, nodes, endpoint=False)
    return float(np.max(np.abs(np.polyval(coeffs[::-1], s * np.exp(1j * t)))))


def test_criterion_05_disc_bounds():
    """Both one-variable disc bounds hold on 500 sampled instances each,
    with the H1 norm and circle sup taken from dense-sampling oracles."""
    rng = np.random.default_rng(105)
    bad_pointwise = 0
    for _ in range(500):
        deg = int(rng.integers(1, 7))
        coeffs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        f = MonomialExpansion({
            MultiIndex.from_dense([j]): coeffs[j] for j in range(deg + 1)
        })
        z = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        if not disc_pointwise_bound(f, _circle_mean_abs(coeffs), complex(z)).holds:
            bad_pointwise += 1
    bad_two_point = 0
    for _ in range(500):
        deg = int(rng.integers(1, 7))
        coeffs = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
        f = MonomialExpansion({
            MultiIndex.from_dense([j]): coeffs[j] for j in range(deg + 1)
        })
        s = 0.9
        z1, z2 = (0.6 * s * np.sqrt(rng.uniform(size=2)) *
                  np.exp(2j * np.pi * rng.uniform(size=2)))
        rep = disc_two_point_bound(f, s, complex(z1), complex(z2),
                                   _circle_sup_abs(coeffs, s))
        if not rep.holds:
            bad_two_point += 1
    ok = bad_pointwise == 0 and bad_two_point == 0
    report(5, ok, f"pointwise {500 - bad_pointwise}/500, "
                  f"two-point {500 - bad_two_point}/500")


def test_criterion_06_truncation_contractivity():
    """At p=2 the truncated-to-full ratio never exceeds 1 (500 instances)."""
    rng = np.random.default_rng(106)
    worst = 0.0
    failures = 0
    for _ in range(500):
        d = random_dirichlet_exact(rng, int(rng.integers(2, 13)), max_n=50)
        x = float(rng.choice([2.0, 3.0, 7.5, 20.0, 50.0]))
        rep = truncation_ratio(d, x)
        worst = max(worst, rep.lhs)
        if not (rep.holds and rep.lhs <= 1.0 + 1e-12):
            failures += 1
    ok = failures == 0
    report(6, ok, f"max ratio {worst:.6f}, {500 - failures}/500 held")


def test_criterion_07_abel_tail_bound():
    """The damped-tail certificate holds on 500 instances across the
    (eps, l) grid {0.25, 0.5, 1} x {5, 20}."""
    rng = np.random.default_rng(107)
    combos = [(eps, l) for eps in (0.25, 0.5, 1.0) for l in (5, 20)]
    failures = 0
    for i in range(500):
        eps, l = combos[i % len(combos)]
        d = random_dirichlet_exact(rng, int(rng.integers(2, 13)), max_n=60)
        if not abel_tail_bound(d, eps, l).holds:
            failures += 1
    report(7, failures == 0, f"{500 - failures}/500 held")


def test_criterion_08_montel_positive_control():
    """Powers of one variable: extraction picks a genuine tail, the
    uniform-Cauchy certificate passes at 1e-3, and the limit keeps the
    norm allowance."""
    fam = [MonomialExpansion({MultiIndex(((1, n),)): 1.0})
           for n in range(1, 33)]
    box = CompactBox((0.5,))
    rep = extract_and_certify(fam, box, 1e-3, n_dense=16, member_norm_cap=1.0)
    sel = rep.selected_indices
    tail = rep.context["tail_half"]
    checks = {
        "selection": sel == (7, 15, 23, 31),
        "tail powers >= 11": min(i + 1 for i in tail) >= 11,
        "certified": rep.certified is True,
        "modulus <= 1e-3": rep.cauchy_modulus <= 1e-3,
        "limit is zero": rep.limit == MonomialExpansion({}),
        "limit norm": rep.limit_norm_report.holds,
    }
    np.testing.assert_allclose(rep.cauchy_modulus, 5.98374754190443e-08,
                               rtol=1e-6)
    ok = all(checks.values())
    report(8, ok, f"selection {sel}, modulus {rep.cauchy_modulus:.3e}, "
                  f"failed={[k for k, v in checks.items() if not v]}")


def test_criterion_09_montel_dirichlet_pair():
    """Single-frequency family: untranslated members sit at mutual H2
    distance exactly sqrt(2), while the translated selection certifies
    pairwise distances below 3 eta."""
    fam = [DirichletPolynomial({n: 1.0}) for n in range(2, 201)]
    worst_gap = max(
        abs(h2_distance(a, b) - math.sqrt(2.0))
        for i, a in enumerate(fam) for b in fam[i + 1:]
    )
    rep = dirichlet_montel(fam, 0.5, 0.2)
    sel = rep.selected_indices
    checks = {
        "untranslated sqrt(2)": worst_gap <= 1e-12,
        "l0": rep.context["l0"] == 25,
        "selection tail": sel == tuple(range(24, 199)),
        "modulus": abs(rep.cauchy_modulus
                       - math.sqrt(1.0 / 26.0 + 1.0 / 27.0)) <= 1e-12,
        "certified <= 3 eta": rep.certified is True
                              and rep.cauchy_modulus <= 3.0 * 0.2,
    }
    ok = all(checks.values())
    report(9, ok, f"untranslated gap {worst_gap:.2e}, "
                  f"modulus {rep.cauchy_modulus:.6f}, "
                  f"failed={[k for k, v in checks.items() if not v]}")


def _run_cli(args, cwd):
    return subprocess.run(
        [sys.executable, "-m", "polytorus", *args],
        capture_output=True,
        cwd=cwd,
        timeout=300,
    )


def test_criterion_10_cli_determinism(tmp_path):
    """Each CLI command, run twice with the same inputs and seeds, must
    produce byte-identical stdout and byte-identical output files."""
    series = tmp_path / "s.txt"
    series.write_text(serialize_series(
        DirichletPolynomial({1: 1.0, 2: 0.5, 3: 0.25, 10: -0.125})
    ))
    family = tmp_path / "fam.txt"
    family.write_text(
        "family dirichlet v1\n"
        + "".join(f"{k} {n} 1 0\n" for k, n in enumerate(range(2, 10)))
    )
    cases = [
        ["gen-random", "--terms", "10", "--seed", "9"],
        ["lift", str(series)],
        ["norm", str(series), "--p", "4", "--method", "tensor_grid"],
        ["coeffs", str(series)],
        ["translate", str(series), "--eps", "0.5"],
        ["truncate", str(series), "--x", "3"],
        ["bayart-mean", str(series), "--window", "100", "--samples", "2001"],
        ["verify-bounds", "--size", "3", "--seed", "2"],
        ["montel-extract", str(family), "--box", "0.3", "--eps", "0.1"],
        ["dirichlet-montel", str(family), "--eps", "0.5", "--eta", "0.7"],
    ]
    unstable = []
    for args in cases:
        first = _run_cli(args, tmp_path)
        second = _run_cli(args, tmp_path)
        if not (first.returncode == second.returncode == 0
                and first.stdout == second.stdout):
            unstable.append(args[0])
    report(10, not unstable, f"all {len(cases)} commands byte-stable"
           if not unstable else f"unstable: {unstable}")

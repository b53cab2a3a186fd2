"""Tests for the desk-scale normal-family machinery."""

import math

import numpy as np
import pytest

from polytorus import (
    CompactBox,
    DirichletPolynomial,
    MonomialExpansion,
    MultiIndex,
    ResourceError,
    ZERO_INDEX,
    bohr_lift,
    box_distance,
    build_eps_net,
    certify_uniform_cauchy,
    dense_enumerate,
    diagonal_extract,
    dirichlet_montel,
    extract_and_certify,
    h2_distance,
    limit_norm_check,
    translate,
)
from polytorus.montel import geometric_schedule, harmonic_schedule, tail_half


def zmono(n_power, coeff=1.0):
    """One-variable monomial coeff * z^n_power as an expansion."""
    if n_power == 0:
        return MonomialExpansion({ZERO_INDEX: coeff})
    return MonomialExpansion({MultiIndex(((1, n_power),)): coeff})


class TestCompactBox:
    def test_distance_examples(self):
        np.testing.assert_allclose(box_distance(CompactBox((0.5, 0.25))), 0.5)
        np.testing.assert_allclose(box_distance(CompactBox(())), 1.0)
        np.testing.assert_allclose(box_distance(CompactBox((0.9,))), 0.1)

    def test_distance_method_matches_function(self):
        box = CompactBox((0.3, 0.7))
        assert box.distance() == box_distance(box)

    def test_rejects_radii_outside_unit_interval(self):
        with pytest.raises(ValueError):
            CompactBox((1.0,))
        with pytest.raises(ValueError):
            CompactBox((-0.1,))

    def test_contains(self):
        box = CompactBox((0.5, 0.5))
        assert box.contains((0.5, 0.5j))
        assert not box.contains((0.6, 0.0))
        assert box.contains((0.6, 0.0), enlarge=0.1)
        # tolerance absorbs rounding on the boundary
        assert box.contains((0.5 + 1e-13, 0.0))

    def test_sample_stays_inside(self):
        rng = np.random.default_rng(41)
        box = CompactBox((0.5, 0.25, 0.0))
        pts = box.sample(rng, 10_000)
        assert pts.shape == (10_000, 3)
        assert np.max(np.abs(pts[:, 0])) <= 0.5
        assert np.max(np.abs(pts[:, 1])) <= 0.25
        assert np.max(np.abs(pts[:, 2])) == 0.0
        # radial law fills the discs rather than hugging the centre
        assert np.max(np.abs(pts[:, 0])) > 0.45

    def test_diameter(self):
        box = CompactBox((0.5, 0.25))
        np.testing.assert_allclose(box.diameter(), math.sqrt(1.0 + 0.25))


class TestEpsNet:
    def test_small_net_shape(self):
        net = build_eps_net(CompactBox((0.5,)), 0.25)
        assert net.size == 49
        assert [len(a) for a in net.axis_nodes] == [7]
        assert net.radius == 0.25

    def test_chunks_match_centers(self):
        net = build_eps_net(CompactBox((0.5, 0.25)), 0.4)
        chunks = list(net.iter_chunks(chunk=7))
        stacked = np.concatenate(chunks, axis=0)
        np.testing.assert_array_equal(stacked, net.centers())
        assert stacked.shape == (net.size, 2)

    def test_covering_property(self):
        # every point of the box must be within the advertised radius of
        # some center; the construction actually achieves half of it
        rng = np.random.default_rng(42)
        for radii, eps in (((0.5,), 0.25), ((0.5, 0.25), 0.3)):
            box = CompactBox(radii)
            net = build_eps_net(box, eps)
            pts = box.sample(rng, 100_000)
            dists = net.nearest_distance(pts)
            assert float(np.max(dists)) <= eps / 2 + 1e-12

    def test_centers_stay_in_box(self):
        box = CompactBox((0.5, 0.25))
        net = build_eps_net(box, 0.3)
        centers = net.centers()
        assert np.all(np.abs(centers[:, 0]) <= 0.5 + 1e-12)
        assert np.all(np.abs(centers[:, 1]) <= 0.25 + 1e-12)

    def test_size_cap(self):
        with pytest.raises(ResourceError):
            build_eps_net(CompactBox((0.9, 0.9, 0.9)), 1e-3, size_cap=10_000)

    def test_rejects_bad_eps(self):
        with pytest.raises(ValueError):
            build_eps_net(CompactBox((0.5,)), 0.0)


class TestDenseEnumerate:
    def test_starts_at_origin(self):
        pts = dense_enumerate(4, 2)
        assert pts[0].coords == (0j, 0j)

    def test_known_prefix_in_one_dim(self):
        pts = dense_enumerate(4, 1)
        got = [p.coords[0] for p in pts]
        assert got == [0j, -0.5 - 0.5j, -0.5 + 0j, -0.5 + 0.5j]

    def test_level_one_count(self):
        # denominator 2 admits 8 lattice points inside the unit disc
        pts = dense_enumerate(9, 1)
        assert len({p.coords[0] for p in pts}) == 9

    def test_deterministic_and_distinct(self):
        a = dense_enumerate(300, 2)
        b = dense_enumerate(300, 2)
        assert [p.coords for p in a] == [p.coords for p in b]
        assert len({p.coords for p in a}) == 300

    def test_all_points_interior(self):
        for dims in (1, 2, 3):
            for p in dense_enumerate(200, dims):
                assert max(abs(c) for c in p.coords) < 1.0

    def test_later_levels_widen_support(self):
        # with 2 dims, points touching the second coordinate appear only
        # from the second refinement level onward
        pts = dense_enumerate(64, 2)
        first_wide = next(i for i, p in enumerate(pts) if p.coords[1] != 0)
        assert first_wide > 8

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            dense_enumerate(0, 1)
        with pytest.raises(ValueError):
            dense_enumerate(4, 0)


class TestSchedules:
    def test_harmonic(self):
        np.testing.assert_allclose(harmonic_schedule(3), [1.0, 0.5, 1.0 / 3.0])

    def test_geometric(self):
        np.testing.assert_allclose(geometric_schedule(3), [1.0, 0.5, 0.25])
        np.testing.assert_allclose(
            geometric_schedule(2, start=0.4, ratio=0.1), [0.4, 0.04]
        )

    def test_rejects_nonpositive_stages(self):
        with pytest.raises(ValueError):
            harmonic_schedule(0)


class TestTailHalf:
    def test_conventions(self):
        assert tail_half([5]) == [5]
        assert tail_half([1, 2]) == [1, 2]
        assert tail_half([1, 2, 3, 4]) == [3, 4]
        assert tail_half([1, 2, 3, 4, 5]) == [3, 4, 5]


class TestDiagonalExtract:
    def test_identical_members_all_survive(self):
        fam = [zmono(2)] * 4
        report = diagonal_extract(fam, dense_enumerate(6, 1))
        assert report.selected_indices == (0, 1, 2, 3)

    def test_alternating_family_splits_on_parity(self):
        # two equal-size value clusters; the tie goes to the lower bucket
        # key, which here is the nonzero member at the negative site
        fam = [zmono(1, 0.0) if i % 2 == 0 else zmono(1, 1.0) for i in range(6)]
        report = diagonal_extract(fam, dense_enumerate(8, 1))
        assert report.selected_indices == (1, 3, 5)

    def test_survivor_sets_are_nested(self):
        rng = np.random.default_rng(43)
        fam = [zmono(int(rng.integers(1, 5)), complex(rng.normal(), rng.normal()))
               for _ in range(12)]
        report = diagonal_extract(fam, dense_enumerate(10, 1))
        sets = [set(s) for s in report.survivor_sets]
        for outer, inner in zip(sets, sets[1:]):
            assert inner <= outer
        assert set(report.selected_indices) == sets[-1]

    def test_stage_records_are_coherent(self):
        fam = [zmono(n) for n in range(1, 9)]
        report = diagonal_extract(fam, dense_enumerate(6, 1))
        assert len(report.stages) == len(report.survivor_sets)
        for k, cert in enumerate(report.stages):
            assert cert.stage == k
            assert cert.tolerance > 0
            assert cert.diameter <= 2.0 * cert.tolerance + 1e-12
            assert cert.survivors == len(report.survivor_sets[k])

    def test_rejects_empty_family(self):
        with pytest.raises(ValueError):
            diagonal_extract([], dense_enumerate(4, 1))


class TestCertifyUniformCauchy:
    def test_monomial_tail_certified(self):
        box = CompactBox((0.5,))
        fam = [zmono(n) for n in range(1, 13)]
        ok, achieved = certify_uniform_cauchy(fam, [7, 8, 9, 10, 11], box, 0.01)
        assert ok
        # the tail half is z^10, z^11, z^12; the worst pair attains
        # 0.5^10 * 1.5 at z = -1/2, which the clipped net contains
        np.testing.assert_allclose(achieved, 0.5**10 * 1.5, rtol=1e-12)

    def test_low_powers_fail_at_tight_eps(self):
        box = CompactBox((0.5,))
        fam = [zmono(n) for n in range(1, 13)]
        ok, achieved = certify_uniform_cauchy(fam, [5, 6], box, 0.01)
        assert not ok
        np.testing.assert_allclose(achieved, 0.5**6 * 1.5, rtol=1e-12)

    def test_short_selection_short_circuits(self):
        box = CompactBox((0.5,))
        fam = [zmono(n) for n in range(1, 5)]
        assert certify_uniform_cauchy(fam, [2], box, 0.01) == (True, 0.0)

    def test_identical_members(self):
        box = CompactBox((0.4, 0.4))
        f = MonomialExpansion({MultiIndex(((1, 1), (2, 1))): 1.0})
        ok, achieved = certify_uniform_cauchy([f, f, f], [0, 1, 2], box, 0.2)
        assert ok
        assert achieved == 0.0


class TestLimitNormCheck:
    def test_inside_allowance(self):
        f = zmono(1, 1.0)
        rep = limit_norm_check(f, 2.0, member_norm_cap=1.0)
        assert rep.holds
        np.testing.assert_allclose(rep.lhs, 1.0)
        np.testing.assert_allclose(rep.rhs, 1.5)

    def test_violation_detected(self):
        f = zmono(1, 4.0)
        rep = limit_norm_check(f, 2.0, member_norm_cap=1.0)
        assert not rep.holds

    def test_rejects_negative_cap(self):
        with pytest.raises(ValueError):
            limit_norm_check(zmono(1), 2.0, member_norm_cap=-1.0)


class TestExtractAndCertify:
    def test_monomial_powers_full_pipeline(self):
        fam = [zmono(n) for n in range(1, 9)]
        box = CompactBox((0.3,))
        report = extract_and_certify(fam, box, 0.05, n_dense=12)
        assert report.certified is not None
        assert len(report.selected_indices) >= 2
        assert report.cauchy_modulus >= 0.0
        sets = [set(s) for s in report.survivor_sets]
        for outer, inner in zip(sets, sets[1:]):
            assert inner <= outer
        assert report.limit is not None
        assert report.limit_norm_report is not None
        assert "tail_half" in report.context

    def test_identical_family_certifies_immediately(self):
        f = zmono(3, 0.5)
        report = extract_and_certify([f] * 5, CompactBox((0.4,)), 0.01)
        assert report.selected_indices == (0, 1, 2, 3, 4)
        assert report.certified
        assert report.cauchy_modulus == 0.0
        assert report.limit == f

    def test_rejects_empty_family(self):
        with pytest.raises(ValueError):
            extract_and_certify([], CompactBox((0.3,)), 0.1)


class TestDirichletMontel:
    def test_constant_family(self):
        fam = [DirichletPolynomial({1: 1.0}) for _ in range(5)]
        report = dirichlet_montel(fam, 0.5, 0.2)
        assert report.selected_indices == (0, 1, 2, 3, 4)
        assert report.certified
        assert report.cauchy_modulus == 0.0

    def test_single_frequency_family(self):
        fam = [DirichletPolynomial({n: 1.0}) for n in range(2, 61)]
        report = dirichlet_montel(fam, 0.5, 0.2)
        ctx = report.context
        assert ctx["l0"] == 25
        # the big bucket is the members supported beyond l0
        assert report.selected_indices == tuple(range(24, 59))
        want = math.sqrt(1.0 / 26.0 + 1.0 / 27.0)
        np.testing.assert_allclose(report.cauchy_modulus, want, rtol=1e-12)
        assert report.certified
        assert report.cauchy_modulus <= 3.0 * 0.2

    def test_untranslated_distances_stay_large(self):
        # the same family is far-separated before damping, which is the
        # point of translating first
        fam = [DirichletPolynomial({n: 1.0}) for n in range(2, 12)]
        worst = max(
            h2_distance(a, b) for i, a in enumerate(fam) for b in fam[i + 1:]
        )
        np.testing.assert_allclose(worst, math.sqrt(2.0), rtol=1e-15)

    def test_certified_distance_matches_translated_members(self):
        fam = [DirichletPolynomial({n: 1.0}) for n in range(2, 61)]
        report = dirichlet_montel(fam, 0.5, 0.2)
        sel = report.selected_indices
        worst = max(
            h2_distance(translate(fam[i], 0.5), translate(fam[j], 0.5))
            for a, i in enumerate(sel)
            for j in sel[a + 1:]
        )
        np.testing.assert_allclose(worst, report.cauchy_modulus, rtol=1e-12)

    def test_rejects_zero_translation(self):
        fam = [DirichletPolynomial({2: 1.0})]
        with pytest.raises(ValueError):
            dirichlet_montel(fam, 0.0, 0.2)

    def test_rejects_empty_family(self):
        with pytest.raises(ValueError):
            dirichlet_montel([], 0.5, 0.2)


class TestMajorityLimit:
    def test_power_family_limit_is_zero(self):
        # f_N = z^N on a small box: the selected tail has no common
        # support, so the majority vote yields the zero expansion
        fam = [zmono(n) for n in range(1, 17)]
        box = CompactBox((0.4,))
        report = extract_and_certify(fam, box, 0.01, n_dense=12,
                                     member_norm_cap=1.0)
        assert report.limit == MonomialExpansion({})
        assert report.limit_norm_report.holds

    def test_common_core_is_recovered(self):
        # members share the constant term and differ in a fading tail
        core = MonomialExpansion({ZERO_INDEX: 2.0})
        fam = [core + zmono(8, 1e-9 * n) for n in range(10)]
        report = extract_and_certify(fam, CompactBox((0.4,)), 0.05)
        assert report.limit.coefficient(ZERO_INDEX) == 2.0

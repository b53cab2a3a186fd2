"""Tests for the text formats and the run configuration loader."""

import json

import numpy as np
import pytest

from polytorus import (
    DirichletPolynomial,
    MonomialExpansion,
    MultiIndex,
    ParseError,
    RunConfig,
    ZERO_INDEX,
    load_config,
    parse_family,
    parse_series,
    serialize_family,
    serialize_series,
)
from polytorus.sampling import random_dirichlet, random_expansion


class TestDirichletFormat:
    def test_serialize_known_series(self):
        d = DirichletPolynomial({1: 1.5, 6: -0.25j})
        assert serialize_series(d) == "dirichlet v1\n1 1.5 0\n6 -0 -0.25\n"

    def test_round_trip_is_byte_identical(self):
        rng = np.random.default_rng(51)
        for _ in range(25):
            d = random_dirichlet(rng, max_n=50, density=0.4)
            text = serialize_series(d)
            assert parse_series(text) == d
            assert serialize_series(parse_series(text)) == text

    def test_awkward_floats_survive(self):
        d = DirichletPolynomial({1: 0.1, 2: 1e-300, 3: complex(-0.0, 1e17)})
        assert parse_series(serialize_series(d)) == d

    def test_blank_lines_and_comments_are_skipped(self):
        text = "dirichlet v1\n\n# comment\n1 1 0\n  \n2 2 0\n"
        d = parse_series(text)
        assert d == DirichletPolynomial({1: 1.0, 2: 2.0})

    def test_unknown_header_rejected(self):
        with pytest.raises(ParseError) as info:
            parse_series("dirichlet v9\n1 1 0\n")
        assert info.value.line_no == 1

    def test_bad_token_reports_line(self):
        with pytest.raises(ParseError) as info:
            parse_series("dirichlet v1\n1 1 0\ntwo 1 0\n")
        assert info.value.line_no == 3

    def test_wrong_field_count_reports_line(self):
        with pytest.raises(ParseError) as info:
            parse_series("dirichlet v1\n1 1\n")
        assert info.value.line_no == 2

    def test_unsorted_frequencies_rejected(self):
        with pytest.raises(ParseError):
            parse_series("dirichlet v1\n3 1 0\n2 1 0\n")

    def test_duplicate_frequency_rejected(self):
        with pytest.raises(ParseError):
            parse_series("dirichlet v1\n2 1 0\n2 2 0\n")

    def test_empty_body_is_zero_series(self):
        assert parse_series("dirichlet v1\n") == DirichletPolynomial({})


class TestMonomialFormat:
    def test_serialize_known_expansion(self):
        f = MonomialExpansion({ZERO_INDEX: 1.0, MultiIndex(((1, 2), (3, 1))): 2.0})
        assert serialize_series(f) == "monomial v1\n- - 1 0\n1,3 2,1 2 0\n"

    def test_round_trip_is_byte_identical(self):
        rng = np.random.default_rng(52)
        for _ in range(25):
            f = random_expansion(rng, n_vars=4, max_degree=5, n_terms=9)
            text = serialize_series(f)
            assert parse_series(text) == f
            assert serialize_series(parse_series(text)) == text

    def test_dash_means_constant_term(self):
        f = parse_series("monomial v1\n- - 3 -1\n")
        assert f.terms == {ZERO_INDEX: 3.0 - 1j}

    def test_mismatched_position_exponent_counts(self):
        with pytest.raises(ParseError) as info:
            parse_series("monomial v1\n1,2 1 1 0\n")
        assert info.value.line_no == 2

    def test_zero_exponent_rejected(self):
        with pytest.raises(ParseError):
            parse_series("monomial v1\n1 0 1 0\n")

    def test_terms_must_follow_graded_lex_order(self):
        # within a degree class the dense exponent vectors ascend, which
        # puts the high-position variable first
        good = "monomial v1\n2 1 1 0\n1 1 1 0\n"
        assert len(parse_series(good).terms) == 2
        with pytest.raises(ParseError):
            parse_series("monomial v1\n1 1 1 0\n2 1 1 0\n")


class TestFamilyFormat:
    def test_round_trip_dirichlet_family(self):
        rng = np.random.default_rng(53)
        fam = [random_dirichlet(rng, max_n=30, density=0.5) for _ in range(6)]
        text = serialize_family(fam)
        assert text.startswith("family dirichlet v1\n")
        back = parse_family(text)
        assert back == fam
        assert serialize_family(back) == text

    def test_round_trip_monomial_family(self):
        rng = np.random.default_rng(54)
        fam = [random_expansion(rng, n_vars=3, max_degree=4, n_terms=6)
               for _ in range(5)]
        text = serialize_family(fam)
        assert text.startswith("family monomial v1\n")
        assert parse_family(text) == fam

    def test_zero_member_cannot_be_serialized(self):
        # a member with no records would leave a hole in the ordinals
        fam = [DirichletPolynomial({2: 1.0}), DirichletPolynomial({}),
               DirichletPolynomial({3: 1.0})]
        with pytest.raises(ValueError):
            serialize_family(fam)

    def test_ordinal_gap_rejected(self):
        text = "family dirichlet v1\n0 1 1 0\n2 1 1 0\n"
        with pytest.raises(ParseError) as info:
            parse_family(text)
        assert info.value.line_no == 3

    def test_ordinal_must_start_at_zero(self):
        with pytest.raises(ParseError):
            parse_family("family dirichlet v1\n1 1 1 0\n")

    def test_empty_family_rejected(self):
        with pytest.raises(ParseError):
            parse_family("family dirichlet v1\n")

    def test_mixed_kinds_rejected(self):
        with pytest.raises(TypeError):
            serialize_family([DirichletPolynomial({1: 1.0}),
                              MonomialExpansion({ZERO_INDEX: 1.0})])


class TestRunConfig:
    def test_defaults_are_valid(self):
        cfg = RunConfig()
        assert cfg.p == 2.0
        assert cfg.schedule == "harmonic"
        q = cfg.quadrature()
        assert q.grid_start == 8
        assert q.seed == 0

    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            RunConfig(p=0.5)
        with pytest.raises(ValueError):
            RunConfig(schedule="fibonacci")
        with pytest.raises(ValueError):
            RunConfig(grid_start=1)

    def test_load_config_none_gives_defaults(self):
        assert load_config(None) == RunConfig()

    def test_load_config_round_trip(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"p": 4.0, "seed": 7, "n_dense": 8}))
        cfg = load_config(path)
        assert cfg.p == 4.0
        assert cfg.seed == 7
        assert cfg.n_dense == 8

    def test_load_config_rejects_unknown_keys(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"p": 2.0, "tolerance": 1e-6}))
        with pytest.raises(ValueError) as info:
            load_config(path)
        assert "tolerance" in str(info.value)

    def test_load_config_rejects_non_object(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("[1, 2]")
        with pytest.raises(ValueError):
            load_config(path)

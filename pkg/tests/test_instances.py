import math

import numpy as np
import pytest

from scpanneal.errors import (
    ConfigInfeasible,
    ElementOutOfRange,
    InvariantViolation,
    LengthMismatch,
    ParseError,
)
from scpanneal.instances import (
    GeneratorConfig,
    ScpInstance,
    cover_cost,
    deserialize_instance,
    generate_instance,
    is_feasible,
    reported_cost,
    serialize_instance,
    sigma,
    uncovered_elements,
)


class TestInstanceInvariants:
    def test_union_must_cover_universe(self):
        with pytest.raises(InvariantViolation):
            ScpInstance(n=3, sets=[{1}, {2}], weights=(0.5, 0.5))

    def test_m_at_least_two(self):
        with pytest.raises(InvariantViolation):
            ScpInstance(n=1, sets=[{1}], weights=(0.5,))

    def test_no_empty_sets(self):
        with pytest.raises(InvariantViolation):
            ScpInstance(n=1, sets=[{1}, set()], weights=(0.5, 0.5))

    def test_positive_weights(self):
        with pytest.raises(InvariantViolation):
            ScpInstance(n=1, sets=[{1}, {1}], weights=(0.5, 0.0))

    def test_elements_within_universe(self):
        with pytest.raises(InvariantViolation):
            ScpInstance(n=1, sets=[{1}, {2}], weights=(0.5, 0.5))

    def test_weight_count_matches_sets(self):
        with pytest.raises(InvariantViolation):
            ScpInstance(n=1, sets=[{1}, {1}], weights=(0.5,))


class TestSigma:
    def test_t1_element_1(self, t1):
        assert sigma(t1, 1) == {1, 2}

    def test_t1_element_2(self, t1):
        assert sigma(t1, 2) == {2, 3}

    def test_out_of_range(self, t1):
        with pytest.raises(ElementOutOfRange):
            sigma(t1, 3)
        with pytest.raises(ElementOutOfRange):
            sigma(t1, 0)

    def test_never_empty_on_valid_instances(self, t1, t2):
        for inst in (t1, t2):
            for e in range(1, inst.n + 1):
                assert sigma(inst, e)


class TestFeasibilityAndCosts:
    def test_feasible_examples(self, t1):
        assert is_feasible(t1, (1, 0, 1)) is True
        assert is_feasible(t1, (1, 0, 0)) is False
        assert is_feasible(t1, (0, 0, 0)) is False

    def test_uncovered_examples(self, t1):
        assert uncovered_elements(t1, (0, 0, 0)) == {1, 2}
        assert uncovered_elements(t1, (0, 1, 0)) == frozenset()
        assert uncovered_elements(t1, (1, 0, 0)) == {2}

    def test_cover_cost_examples(self, t1):
        assert cover_cost(t1, (1, 0, 1)) == pytest.approx(0.8, abs=1e-12)
        assert cover_cost(t1, (0, 0, 0)) == 0.0
        assert cover_cost(t1, (1, 1, 1)) == pytest.approx(1.7, abs=1e-12)

    def test_reported_cost_examples(self, t1):
        assert reported_cost(t1, (1, 0, 1)) == pytest.approx(0.8, abs=1e-12)
        assert reported_cost(t1, (1, 0, 0)) == pytest.approx(1.7, abs=1e-12)
        assert reported_cost(t1, (0, 0, 0)) == pytest.approx(1.7, abs=1e-12)

    def test_length_mismatch(self, t1):
        for fn in (is_feasible, uncovered_elements, cover_cost, reported_cost):
            with pytest.raises(LengthMismatch):
                fn(t1, (1, 0))

    def test_feasible_iff_no_uncovered(self, t1, t2):
        # exhaustive over all selections of the small fixtures
        for inst in (t1, t2):
            for bits in range(2**inst.m):
                sel = [(bits >> j) & 1 for j in range(inst.m)]
                assert is_feasible(inst, sel) == (not uncovered_elements(inst, sel))

    def test_reported_dominates_cover_cost(self, t1):
        for bits in range(2**t1.m):
            sel = [(bits >> j) & 1 for j in range(t1.m)]
            assert reported_cost(t1, sel) >= cover_cost(t1, sel) - 1e-12


class TestGenerator:
    def _check_conditions(self, inst: ScpInstance, cfg: GeneratorConfig):
        # (i) every element in at least two sets
        for e in range(1, inst.n + 1):
            assert len(inst.covering_sets(e)) >= 2
        # (ii) every set nonempty
        assert all(inst.sets)
        # (iii) fill target reached
        total = sum(len(s) for s in inst.sets)
        scale = cfg.m if cfg.fill_rule == "paper_mc" else cfg.n
        assert total >= scale * cfg.coverage - 1e-9
        assert all(0 < w <= 1 for w in inst.weights)

    def test_small_grid_conditions(self):
        cfg = GeneratorConfig(m=4, n=4, coverage=2)
        inst = generate_instance(cfg, seed=42)
        assert sum(len(s) for s in inst.sets) >= 8
        self._check_conditions(inst, cfg)

    def test_forced_structure_m2_n1(self):
        cfg = GeneratorConfig(m=2, n=1, coverage=2, fill_rule="per_element_nc")
        inst = generate_instance(cfg, seed=0)
        assert inst.sets == (frozenset({1}), frozenset({1}))

    def test_forced_structure_infeasible_under_default_rule(self):
        # m*c = 4 exceeds the m*n = 2 available pairs
        with pytest.raises(ConfigInfeasible):
            generate_instance(GeneratorConfig(m=2, n=1, coverage=2), seed=0)

    def test_counting_bound_infeasible(self):
        with pytest.raises(ConfigInfeasible):
            generate_instance(GeneratorConfig(m=4, n=3, coverage=5), seed=0)

    def test_m_below_two_infeasible(self):
        with pytest.raises(ConfigInfeasible):
            generate_instance(GeneratorConfig(m=1, n=1, coverage=1), seed=0)

    def test_deterministic(self):
        cfg = GeneratorConfig(m=8, n=6, coverage=3)
        assert generate_instance(cfg, seed=7) == generate_instance(cfg, seed=7)

    def test_seeds_differ(self):
        cfg = GeneratorConfig(m=8, n=6, coverage=3)
        a = [generate_instance(cfg, seed=s) for s in range(6)]
        assert len(set(a)) > 1

    def test_conditions_hold_across_grid(self):
        rng = np.random.default_rng(123)
        for _ in range(30):
            m = int(rng.integers(2, 15))
            n = int(rng.integers(1, 12))
            for rule in ("paper_mc", "per_element_nc"):
                cmax = n if rule == "paper_mc" else m
                c = float(rng.uniform(0.5, cmax))
                cfg = GeneratorConfig(m=m, n=n, coverage=c, fill_rule=rule)
                inst = generate_instance(cfg, seed=int(rng.integers(2**32)))
                self._check_conditions(inst, cfg)

    def test_per_element_rule_uses_n_scale(self):
        cfg = GeneratorConfig(m=3, n=12, coverage=3, fill_rule="per_element_nc")
        inst = generate_instance(cfg, seed=5)
        assert sum(len(s) for s in inst.sets) >= 36


class TestSerialization:
    def test_round_trip(self, t1, t2):
        for inst in (t1, t2):
            assert deserialize_instance(serialize_instance(inst)) == inst

    def test_round_trip_generated(self):
        inst = generate_instance(GeneratorConfig(m=9, n=7, coverage=3), seed=11)
        back = deserialize_instance(serialize_instance(inst))
        assert back == inst
        assert back.weights == inst.weights  # bit-exact weights

    def test_zero_weight_rejected(self):
        text = '{"m": 2, "n": 1, "sets": [[1], [1]], "weights": [0.0, 0.5]}'
        with pytest.raises(InvariantViolation):
            deserialize_instance(text)

    def test_empty_set_list_rejected(self):
        text = '{"m": 0, "n": 1, "sets": [], "weights": []}'
        with pytest.raises(InvariantViolation):
            deserialize_instance(text)

    def test_parse_error_has_location(self):
        with pytest.raises(ParseError, match=r"line \d+"):
            deserialize_instance('{"m": 2,')

    def test_missing_key(self):
        with pytest.raises(ParseError, match="weights"):
            deserialize_instance('{"m": 2, "n": 1, "sets": [[1], [1]]}')

    def test_wrong_lengths(self):
        with pytest.raises(ParseError):
            deserialize_instance('{"m": 3, "n": 1, "sets": [[1], [1]], "weights": [0.5, 0.5]}')

    def test_weights_full_precision(self):
        w = 1 / 3
        inst = ScpInstance(n=1, sets=[{1}, {1}], weights=(w, 0.9))
        assert deserialize_instance(serialize_instance(inst)).weights[0] == w

    def test_total_weight_fsum(self, t1):
        assert t1.total_weight() == math.fsum((0.5, 0.9, 0.3))

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from efdkit.geometry import (
    FullDimResult,
    IneqSystem,
    feasible_point,
    gcd_all,
    is_full_dimensional,
    normalize_row,
    rank_of,
    sample_solutions,
)


class TestRowUtilities:
    def test_normalize_row_divides_gcd(self):
        assert normalize_row((4, -6, 8)) == (2, -3, 4)

    def test_normalize_row_keeps_primitive(self):
        assert normalize_row((3, 5)) == (3, 5)

    def test_normalize_zero_row(self):
        assert normalize_row((0, 0)) == (0, 0)

    def test_gcd_all(self):
        assert gcd_all([4, -6, 10]) == 2

    def test_gcd_all_rejects_all_zero(self):
        with pytest.raises(ValueError):
            gcd_all([0, 0])

    def test_rank(self):
        assert rank_of([(1, 0), (0, 1)]) == 2
        assert rank_of([(1, 2), (2, 4)]) == 1


class TestFeasiblePoint:
    def test_simple_feasible(self):
        p = feasible_point([(1, 0), (0, 1)], [1, 1], 2)
        assert p is not None and p[0] >= 1 and p[1] >= 1

    def test_infeasible(self):
        assert feasible_point([(1,), (-1,)], [1, 1], 1) is None

    def test_negative_direction(self):
        p = feasible_point([(-1,)], [3], 1)
        assert p is not None and -p[0] >= 3

    def test_exactness(self):
        p = feasible_point([(3, -7), (-2, 5)], [1, 1], 2)
        assert p is not None
        assert 3 * p[0] - 7 * p[1] >= 1 and -2 * p[0] + 5 * p[1] >= 1
        assert all(isinstance(c, Fraction) for c in p)


class TestFullDimensionality:
    def test_empty_system_is_full(self):
        res = is_full_dimensional(IneqSystem(2, ()))
        assert res.full_dimensional
        assert res.basis is not None and rank_of(res.basis) == 2

    def test_halfspace_is_full(self):
        res = is_full_dimensional(IneqSystem(2, ((1, 0),)))
        assert res.full_dimensional

    def test_opposite_rows_collapse(self):
        res = is_full_dimensional(IneqSystem(2, ((1, 0), (-1, 0))))
        assert not res.full_dimensional
        assert res.certificate is not None and any(res.certificate)

    def test_certificate_vanishes_on_cone(self):
        system = IneqSystem(2, ((1, -1), (-1, 1)))
        res = is_full_dimensional(system)
        assert not res.full_dimensional
        for point in [(1, 1), (-2, -2), (0, 0), (Fraction(1, 3), Fraction(1, 3))]:
            assert system.contains(point)
            assert sum(c * p for c, p in zip(res.certificate, point)) == 0

    def test_basis_solutions_satisfy_system(self):
        system = IneqSystem(3, ((1, 1, 0), (0, 1, -1)))
        res = is_full_dimensional(system)
        assert res.full_dimensional
        assert len(res.basis) == 3
        assert rank_of(res.basis) == 3
        for v in res.basis:
            assert system.contains(v)

    def test_origin_only_cone_in_dim_1(self):
        # single zero row keeps the cone all of Q^1
        res = is_full_dimensional(IneqSystem(1, ((0,),)))
        assert res.full_dimensional

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(1, 3), st.integers(1, 3))
    def test_certificates_always_verify(self, seed, n, nrows):
        rng = random.Random(seed)
        rows = tuple(
            tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(nrows)
        )
        system = IneqSystem(n, rows)
        res = is_full_dimensional(system)
        pool = itertools.product(range(-3, 4), repeat=n)
        sols = [p for p in pool if system.contains(p)]
        if res.full_dimensional:
            assert rank_of(res.basis) == n
            for v in res.basis:
                assert system.contains(v)
        else:
            assert any(res.certificate)
            for p in sols:
                assert sum(c * q for c, q in zip(res.certificate, p)) == 0

    def test_json_roundtrip(self):
        system = IneqSystem(2, ((1, -1), (0, 1)))
        assert IneqSystem.from_json(system.to_json()) == system


class TestSampling:
    def test_samples_satisfy_system(self):
        system = IneqSystem(2, ((1, 1), (1, -1)))
        sols = sample_solutions(system, 50)
        assert sols
        assert all(system.contains(p) for p in sols)

    def test_deterministic_for_seed(self):
        system = IneqSystem(2, ((1, 0),))
        assert sample_solutions(system, 25, seed=5) == sample_solutions(
            system, 25, seed=5
        )

    def test_distinct(self):
        system = IneqSystem(1, ())
        sols = sample_solutions(system, 30)
        assert len(set(sols)) == len(sols)

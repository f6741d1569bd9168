"""Unit tests for coloring search and Milliken-Taylor sums."""
import random
from itertools import product

import pytest

from radokit_core.exceptions import InvalidInput, RangeError, ResourceExceeded
from radokit_core.search import (
    Coloring,
    MTSpec,
    exhaustive_forcing_n,
    find_monochromatic,
    fs,
    min_forcing_n,
    mt_sums,
    solutions_in_set,
    verify_mt_monochromatic,
)
from radokit_core.witness import EquationCoeffs

THREE_AP = EquationCoeffs((1, 1, -2))
SCHUR = EquationCoeffs((1, 1, -1))


class TestColoring:
    """Tests for the coloring type."""

    def test_from_list(self):
        col = Coloring.from_list([0, 0, 1, 1])
        assert col.n_max == 4
        assert col.r == 2
        assert col.color(3) == 1
        assert col.color_class(0) == [1, 2]
        assert col.to_list() == [0, 0, 1, 1]

    def test_out_of_range_lookup(self):
        col = Coloring.from_list([0, 1])
        with pytest.raises(RangeError):
            col.color(3)
        with pytest.raises(RangeError):
            col.color(0)

    def test_invalid_colorings(self):
        with pytest.raises(InvalidInput):
            Coloring(3, 2, (0, 1))
        with pytest.raises(InvalidInput):
            Coloring(2, 2, (0, 2))
        with pytest.raises(InvalidInput):
            Coloring(1, 0, (0,))


class TestSolutions:
    """Tests for solution enumeration."""

    def test_three_ap_distinct(self):
        found = solutions_in_set(THREE_AP, range(1, 6), distinct=True)
        assert found == [
            (1, 3, 2), (1, 5, 3), (2, 4, 3), (3, 1, 2),
            (3, 5, 4), (4, 2, 3), (5, 1, 3), (5, 3, 4),
        ]

    def test_non_distinct_includes_constant(self):
        found = solutions_in_set(THREE_AP, [1, 2], distinct=False)
        assert found == [(1, 1, 1), (2, 2, 2)]

    def test_limit(self):
        assert solutions_in_set(THREE_AP, range(1, 6), limit=2) == [(1, 3, 2), (1, 5, 3)]
        with pytest.raises(InvalidInput):
            solutions_in_set(THREE_AP, range(1, 6), limit=0)

    def test_find_monochromatic(self):
        col = Coloring.from_list([0, 0, 0])
        assert find_monochromatic(THREE_AP, col) == (1, 3, 2)

    def test_three_ap_free_coloring(self):
        col = Coloring.from_list([0, 0, 1, 1, 0, 0, 1, 1])
        assert find_monochromatic(THREE_AP, col, distinct=True) is None


class TestForcing:
    """Tests for the minimal forcing search."""

    def test_three_ap_two_colors(self):
        outcome = min_forcing_n(THREE_AP, 2, distinct=True, n_max=12)
        assert outcome.forced
        assert outcome.n == 9
        assert outcome.certificate is None

    def test_not_forced_returns_certificate(self):
        outcome = min_forcing_n(THREE_AP, 2, distinct=True, n_max=8)
        assert not outcome.forced
        assert outcome.n == 8
        assert outcome.certificate is not None
        assert outcome.certificate.n_max == 8
        assert find_monochromatic(THREE_AP, outcome.certificate, distinct=True) is None

    def test_schur_matches_exhaustive(self):
        fast = min_forcing_n(SCHUR, 2, distinct=False, n_max=8)
        slow = exhaustive_forcing_n(SCHUR, 2, distinct=False, n_max=8)
        assert fast.forced and slow.forced
        assert fast.n == slow.n

    @pytest.mark.parametrize("coeffs", [(1, 1, -2), (1, 1, -1), (2, -1, -1)])
    @pytest.mark.parametrize("distinct", [True, False])
    @pytest.mark.parametrize("symmetry", [True, False])
    def test_agrees_with_exhaustive_up_to_twelve(self, coeffs, distinct, symmetry):
        eq = EquationCoeffs(coeffs)
        fast = min_forcing_n(eq, 2, distinct=distinct, n_max=12, symmetry=symmetry)
        slow = exhaustive_forcing_n(eq, 2, distinct=distinct, n_max=12)
        assert fast.forced == slow.forced
        assert fast.n == slow.n

    @pytest.mark.parametrize("coeffs", [(1, 2, -3), (2, 1, -3), (1, 1, -1, -1)])
    @pytest.mark.parametrize("distinct", [True, False])
    @pytest.mark.parametrize("symmetry", [True, False])
    def test_agrees_with_exhaustive(self, coeffs, distinct, symmetry):
        eq = EquationCoeffs(coeffs)
        fast = min_forcing_n(eq, 2, distinct=distinct, n_max=7, symmetry=symmetry)
        slow = exhaustive_forcing_n(eq, 2, distinct=distinct, n_max=7)
        assert fast.forced == slow.forced
        assert fast.n == slow.n
        if not fast.forced:
            assert find_monochromatic(eq, fast.certificate, distinct) is None

    def test_one_color(self):
        outcome = min_forcing_n(THREE_AP, 1, distinct=True, n_max=5)
        assert outcome.forced
        assert outcome.n == 3

    def test_budget_exhaustion(self):
        with pytest.raises(ResourceExceeded) as exc_info:
            min_forcing_n(THREE_AP, 2, distinct=True, n_max=12, budget=5)
        partial = exc_info.value.partial
        assert "not_forced_up_to" in partial
        assert len(partial["coloring"]) == partial["not_forced_up_to"]

    def test_budget_from_environment(self, monkeypatch):
        monkeypatch.setenv("RADOKIT_BUDGET", "5")
        with pytest.raises(ResourceExceeded):
            min_forcing_n(THREE_AP, 2, distinct=True, n_max=12)

    def test_parallel_matches_serial(self):
        serial = min_forcing_n(THREE_AP, 2, distinct=True, n_max=12, workers=1)
        parallel = min_forcing_n(THREE_AP, 2, distinct=True, n_max=12, workers=2, split_depth=3)
        assert parallel.forced == serial.forced
        assert parallel.n == serial.n

    def test_parallel_not_forced(self):
        outcome = min_forcing_n(THREE_AP, 2, distinct=True, n_max=8, workers=2, split_depth=3)
        assert not outcome.forced
        assert find_monochromatic(THREE_AP, outcome.certificate, distinct=True) is None

    def test_parallel_budget_caps_total_nodes(self):
        serial = min_forcing_n(THREE_AP, 2, distinct=True, n_max=12, workers=1)
        budget = serial.nodes_explored - 1
        with pytest.raises(ResourceExceeded) as exc_info:
            min_forcing_n(THREE_AP, 2, distinct=True, n_max=12, budget=budget, workers=2, split_depth=3)
        assert exc_info.value.used > budget
        assert "not_forced_up_to" in exc_info.value.partial

    def test_parallel_counts_every_node(self):
        serial = min_forcing_n(THREE_AP, 2, distinct=True, n_max=12, workers=1)
        parallel = min_forcing_n(
            THREE_AP, 2, distinct=True, n_max=12, budget=serial.nodes_explored, workers=2, split_depth=3
        )
        assert parallel.forced and parallel.n == 9
        assert parallel.nodes_explored == serial.nodes_explored

    def test_random_equations_give_valid_certificates(self):
        rng = random.Random(31)
        for _ in range(20):
            eq = EquationCoeffs(tuple(rng.choice([-3, -2, -1, 1, 2, 3]) for _ in range(3)))
            distinct = rng.choice([True, False])
            outcome = min_forcing_n(eq, 2, distinct=distinct, n_max=7)
            slow = exhaustive_forcing_n(eq, 2, distinct=distinct, n_max=7)
            assert (outcome.forced, outcome.n) == (slow.forced, slow.n)
            if not outcome.forced:
                assert outcome.certificate.n_max == 7
                assert find_monochromatic(eq, outcome.certificate, distinct) is None

    def test_forcing_is_monotone(self):
        """Once every coloring of 1..N has a solution, so does every coloring of 1..N+1."""
        rng = random.Random(43)
        for _ in range(8):
            eq = EquationCoeffs(tuple(rng.choice([-2, -1, 1, 2]) for _ in range(3)))
            forced = [
                all(
                    find_monochromatic(eq, Coloring(n, 2, colors), distinct=False) is not None
                    for colors in product(range(2), repeat=n)
                )
                for n in range(1, 8)
            ]
            first = forced.index(True) if True in forced else None
            if first is not None:
                assert all(forced[first:])
                outcome = min_forcing_n(eq, 2, distinct=False, n_max=7)
                assert outcome.forced and outcome.n == first + 1

    def test_invalid_arguments(self):
        with pytest.raises(InvalidInput):
            min_forcing_n(THREE_AP, 0)
        with pytest.raises(InvalidInput):
            exhaustive_forcing_n(THREE_AP, 2, n_max=0)


class TestSumSets:
    """Tests for Milliken-Taylor and finite sums."""

    def test_mt_sums_example(self):
        assert mt_sums(MTSpec((1, 2, 3), (2, 1))) == {4, 5, 7, 9}

    def test_fs_example(self):
        assert fs((1, 2, 4)) == set(range(1, 8))

    @pytest.mark.parametrize("ground, coeffs", [
        ((1, 2, 3), (2, 1)),
        ((1, 2, 4), (1,)),
        ((1, 3, 4, 7, 11), (1, 2)),
        ((2, 3, 5, 8, 13), (3, 1, 2)),
    ])
    def test_matches_direct_enumeration(self, ground, coeffs):
        expected = set()
        # Each ground element is skipped (-1) or placed in a block.
        for labels in product(range(-1, len(coeffs)), repeat=len(ground)):
            used = [b for b in labels if b >= 0]
            if sorted(used) != used or set(used) != set(range(len(coeffs))):
                continue
            expected.add(sum(coeffs[b] * x for b, x in zip(labels, ground) if b >= 0))
        assert mt_sums(MTSpec(ground, coeffs)) == expected

    def test_single_coefficient_scales_finite_sums(self):
        ground = (1, 3, 4, 9)
        assert mt_sums(MTSpec(ground, (3,))) == {3 * v for v in fs(ground)}

    def test_short_ground_gives_empty_set(self):
        assert mt_sums(MTSpec((1, 2), (1, 1, 1))) == set()

    def test_cap(self):
        with pytest.raises(ResourceExceeded):
            mt_sums(MTSpec(tuple(range(1, 11)), (1, 2)), cap=10)

    def test_cap_on_long_ground_sequence(self):
        with pytest.raises(ResourceExceeded):
            fs(tuple(range(1, 1201)), cap=10)

    def test_mtspec_validation(self):
        with pytest.raises(InvalidInput):
            MTSpec((2, 1))
        with pytest.raises(InvalidInput):
            MTSpec((1, 2), (0,))
        with pytest.raises(InvalidInput):
            MTSpec((0, 1))

    def test_monochromatic_check(self):
        spec = MTSpec((1, 2, 4))
        assert verify_mt_monochromatic(spec, Coloring.from_list([0] * 7, r=2)) == 0
        assert verify_mt_monochromatic(spec, Coloring.from_list([0, 0, 0, 1, 0, 0, 0])) is None
        with pytest.raises(RangeError):
            verify_mt_monochromatic(spec, Coloring.from_list([0] * 5))

    def test_empty_sum_set_is_not_monochromatic(self):
        spec = MTSpec((1,), (1, 1))
        assert verify_mt_monochromatic(spec, Coloring.from_list([0])) is None

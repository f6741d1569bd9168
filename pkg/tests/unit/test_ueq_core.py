"""Unit tests for u-equivalence."""
import random
from collections import defaultdict
from functools import lru_cache
from itertools import product

import pytest

from radokit_core.exceptions import InvalidInput, ResourceExceeded
from radokit_core.ueq_core import (
    Polynomial,
    closure_oracle,
    concat,
    is_canonical,
    one_step_reductions,
    reduce,
    rewrite_steps,
    scale,
    u_equiv,
    u_equiv_poly,
)


def all_strings(values, max_len):
    for n in range(max_len + 1):
        yield from product(values, repeat=n)


class TestReduce:
    """Tests for normal forms."""

    def test_golden_example(self):
        assert reduce((3, 0, 0, -4, 1, 1)) == (3, -4, 1)

    def test_empty_and_all_zero(self):
        assert reduce(()) == ()
        assert reduce((0, 0, 0)) == ()

    def test_zero_removal_exposes_repeats(self):
        """Dropping a zero can make neighbours equal."""
        assert reduce((1, 0, 1)) == (1,)
        assert reduce((2, 0, 2, 0, 3, 3)) == (2, 3)

    def test_result_is_canonical_and_idempotent(self):
        rng = random.Random(7)
        for _ in range(500):
            s = tuple(rng.randint(-3, 3) for _ in range(rng.randint(0, 12)))
            r = reduce(s)
            assert is_canonical(r)
            assert reduce(r) == r

    def test_is_canonical(self):
        assert is_canonical((1, 2, 1))
        assert not is_canonical((1, 1))
        assert not is_canonical((1, 0, 2))


class TestRewriting:
    """Tests for single steps and traces."""

    def test_one_step_reductions(self):
        steps = list(one_step_reductions((1, 1, 0)))
        assert ("collapse", 1, (1, 0)) in steps
        assert ("zero", 2, (1, 1)) in steps
        assert len(steps) == 2

    def test_trace_is_leftmost_first(self):
        trace = rewrite_steps((3, 0, 0, -4, 1, 1))
        assert [rule for rule, _, _ in trace] == ["zero", "zero", "collapse"]
        assert [index for _, index, _ in trace] == [1, 1, 3]
        assert trace[-1][2] == (3, -4, 1)

    def test_trace_of_canonical_string_is_empty(self):
        assert rewrite_steps((1, 2, 3)) == []
        assert rewrite_steps(()) == []

    def test_confluence_small_strings(self):
        """Every reduction order ends in the same normal form."""
        @lru_cache(maxsize=None)
        def normal_forms(s):
            successors = [t for _, _, t in one_step_reductions(s)]
            if not successors:
                return frozenset([s])
            return frozenset().union(*(normal_forms(t) for t in successors))

        for s in all_strings((-2, -1, 0, 1, 2), 5):
            assert normal_forms(s) == {reduce(s)}


class TestClosureOracle:
    """The bounded closure must agree with normal-form comparison."""

    def test_oracle_matches_normal_forms(self):
        values = (-1, 0, 1, 2)
        max_len = 6
        classes = defaultdict(set)
        for t in all_strings(values, max_len):
            classes[reduce(t)].add(t)

        checked: dict = {}
        for s in all_strings(values, 4):
            if s in checked:
                closure = checked[s]
            else:
                closure = closure_oracle(s, max_len, values)
                for t in closure:
                    checked[t] = closure
            assert closure == classes[reduce(s)]

    def test_rejects_long_input(self):
        with pytest.raises(InvalidInput):
            closure_oracle((1, 2, 3), 2, (1, 2, 3))

    def test_rejects_stray_values(self):
        with pytest.raises(InvalidInput):
            closure_oracle((1, 5), 4, (0, 1))

    def test_state_cap(self):
        with pytest.raises(ResourceExceeded):
            closure_oracle((1, 2), 6, (0, 1, 2), state_cap=3)


class TestLaws:
    """Algebraic behaviour of u-equivalence."""

    def test_examples(self):
        assert u_equiv((2, 1), (2, 2, 0, 1, 1))
        assert not u_equiv((2, 1), (1, 2))
        assert u_equiv((), (0,))

    def test_three_ap_chain(self):
        chain = [(2, 0, 1), (2, 1, 1), (2, 2, 1), (2, 1)]
        assert all(u_equiv(s, t) for s in chain for t in chain)

    def test_concat_is_a_congruence(self):
        rng = random.Random(11)
        for _ in range(10_000):
            s = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 6)))
            t = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 6)))
            assert u_equiv(concat(s, t), concat(reduce(s), reduce(t)))

    def test_scaling_commutes_with_reduce(self):
        rng = random.Random(13)
        for _ in range(10_000):
            s = tuple(rng.randint(0, 4) for _ in range(rng.randint(0, 8)))
            h = rng.choice([1, 2, 5])
            assert reduce(scale(h, s)) == scale(h, reduce(s))

    def test_negative_scaling_commutes_with_reduce(self):
        rng = random.Random(17)
        for _ in range(300):
            s = tuple(rng.randint(-3, 3) for _ in range(rng.randint(0, 8)))
            h = rng.choice([-3, -2, -1])
            assert reduce(scale(h, s)) == scale(h, reduce(s))

    def test_scaling_by_zero(self):
        assert reduce(scale(0, (1, 2, 3))) == ()


class TestPolynomial:
    """Tests for the dense polynomial type."""

    def test_trailing_zeros_trimmed(self):
        p = Polynomial((1, 2, 0, 0))
        assert p.coeffs == (1, 2)
        assert p.degree == 1
        assert Polynomial((0, 0)).is_zero()
        assert Polynomial().degree == -1

    def test_arithmetic(self):
        p = Polynomial((1, 2, 2))
        q = Polynomial((1, 0, 2))
        assert (p + q).coeffs == (2, 2, 4)
        assert (p - p).is_zero()
        assert (3 * q).coeffs == (3, 0, 6)
        assert (q * -1).coeffs == (-1, 0, -2)
        assert Polynomial.monomial(2, 5).coeffs == (0, 0, 5)

    def test_to_text(self):
        assert str(Polynomial((2, 7, 3))) == "3X^2+7X+2"
        assert str(Polynomial((0, -1))) == "-X"
        assert str(Polynomial()) == "0"
        assert str(Polynomial((1, 0, -2))) == "-2X^2+1"

    def test_u_equiv_poly(self):
        assert u_equiv_poly(Polynomial((1, 0, 2)), Polynomial((1, 2, 2)))
        assert not u_equiv_poly(Polynomial((1, 2)), Polynomial((2, 1)))

    def test_u_equiv_poly_examples(self):
        # X^5+X^4-4X^3+3 and X^4-4X^3-4X^2+3X
        assert u_equiv_poly(Polynomial((3, 0, 0, -4, 1, 1)), Polynomial((0, 3, -4, -4, 1)))
        # 3X^6+7X^5+7X^4+2X+2 and 3X^2+7X+2
        assert u_equiv_poly(Polynomial((2, 2, 0, 0, 7, 7, 3)), Polynomial((2, 7, 3)))

    def test_monomials_share_a_normal_form(self):
        """Leading zeros vanish, so X and X^2 are u-equivalent."""
        assert u_equiv_poly(Polynomial.monomial(1), Polynomial.monomial(2))

"""Witness combinations for sum-zero linear equations.

For ``c_1 x_1 + ... + c_k x_k = 0`` with ``c_1 + ... + c_k = 0`` and
``k > 2``, the coefficients are sorted non-increasingly and the vector
``a_0, ..., a_{k-2}`` is computed in closed form from prefix and suffix
partial sums. Each ``a_i`` pairs the product of the first ``k-2-i`` prefix
sums with ``(-1)**i`` times the product of the first ``i`` suffix sums.

The family ``P_1, ..., P_k`` built from ``a`` consists of strings that are
all u-equivalent to ``<a_0, ..., a_{k-2}>`` and satisfy
``c_1 P_1 + ... + c_k P_k = 0``; any family with those properties, built here
or supplied by a caller, is checked by :func:`verify_family`.
"""
import logging
from dataclasses import dataclass, field
from itertools import accumulate, combinations
from math import prod
from typing import Iterable, Optional, Sequence, Union

from .exceptions import DimensionMismatch, InvalidEquation, InvalidInput
from .ueq_core import IntString, Polynomial, u_equiv

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquationCoeffs:
    """Coefficients ``c_1 ... c_k`` of a linear diophantine equation."""

    c: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(v) for v in self.c)
        object.__setattr__(self, "c", c)
        if len(c) < 2:
            raise InvalidEquation(c, "at least two variables are required")
        if any(v == 0 for v in c):
            raise InvalidEquation(c, "coefficients must be nonzero")

    @property
    def k(self) -> int:
        return len(self.c)

    @property
    def total(self) -> int:
        return sum(self.c)

    def evaluate(self, x: Sequence[int]) -> int:
        """Left-hand side at ``x``."""
        if len(x) != self.k:
            raise DimensionMismatch("solution", self.k, len(x))
        return sum(ci * xi for ci, xi in zip(self.c, x))

    def sorted(self) -> tuple["EquationCoeffs", tuple[int, ...]]:
        """Non-increasing rearrangement and the permutation used.

        ``permutation[j]`` is the original index of the ``j``-th sorted
        coefficient. Ties keep their original order.
        """
        permutation = tuple(sorted(range(self.k), key=lambda i: -self.c[i]))
        return EquationCoeffs(tuple(self.c[i] for i in permutation)), permutation

    def __str__(self) -> str:
        terms = []
        for i, ci in enumerate(self.c, start=1):
            mag = "" if abs(ci) == 1 else str(abs(ci))
            sign = "-" if ci < 0 else "+"
            terms.append(f"{sign}{mag}x{i}")
        text = "".join(terms)
        return (text[1:] if text.startswith("+") else text) + "=0"


@dataclass(frozen=True)
class WitnessCombination:
    """Witness ``a_0 ... a_{k-2}`` relative to ``sorted_c``."""

    a: tuple[int, ...]
    sorted_c: EquationCoeffs
    permutation: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.sorted_c.k


@dataclass(frozen=True)
class PolynomialFamily:
    members: tuple[Polynomial, ...]

    def __len__(self) -> int:
        return len(self.members)

    def strings(self) -> list[IntString]:
        return [p.to_string() for p in self.members]


@dataclass(frozen=True)
class VerificationReport:
    """Independent outcomes of the three family checks."""

    sum_zero: bool
    all_u_equivalent: bool
    pairwise_distinct: bool
    require_distinct: bool
    witness: tuple[int, ...] = ()
    permutation: tuple[int, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.sum_zero and self.all_u_equivalent and (self.pairwise_distinct or not self.require_distinct)


def _prefix_sums(c: Sequence[int]) -> list[int]:
    # [c1, c1+c2, ..., c1+...+ck]
    return list(accumulate(c))


def _suffix_sums(c: Sequence[int]) -> list[int]:
    # [ck, ck+c(k-1), ..., ck+...+c1]
    return list(accumulate(reversed(c)))


def build_witness(eq: EquationCoeffs) -> WitnessCombination:
    """Compute the witness combination for a sum-zero equation.

    Raises:
        InvalidEquation: If ``k < 3`` or the coefficients do not sum to zero.
    """
    if eq.k < 3:
        raise InvalidEquation(eq.c, "at least three variables are required")
    if eq.total != 0:
        raise InvalidEquation(eq.c, f"coefficients sum to {eq.total}, not 0")

    sorted_eq, permutation = eq.sorted()
    c = sorted_eq.c
    k = sorted_eq.k
    prefix = _prefix_sums(c)
    suffix = _suffix_sums(c)

    a = []
    for i in range(k - 1):
        b = prod(prefix[: k - 2 - i])
        b_prime = (-1) ** i * prod(suffix[:i])
        a.append(b * b_prime)

    if any(v < 1 for v in a):
        # Sorted sum-zero input with nonzero entries always gives positive a_i.
        raise InvalidEquation(eq.c, f"witness coefficients are not all positive: {a}")

    logger.debug(f"witness for {list(c)}: {a} (permutation {list(permutation)})")
    return WitnessCombination(tuple(a), sorted_eq, permutation)


def check_system(eq: EquationCoeffs, a: Union[WitnessCombination, Sequence[int]]) -> bool:
    """Check the linear conditions under which ``c_1 P_1 + ... + c_k P_k``
    vanishes, independently of :func:`build_witness`.

    The conditions read, for ``1 <= j <= k-2``::

        (c_1 + ... + c_{k-1-j}) * a_j + (c_{k-j+1} + ... + c_k) * a_{j-1} = 0

    together with ``(c_1 + ... + c_k) * a_0 = 0`` and the same for ``a_{k-2}``.

    Raises:
        DimensionMismatch: If ``len(a) != k - 1``.
    """
    values = a.a if isinstance(a, WitnessCombination) else tuple(a)
    c = eq.c
    k = eq.k
    if len(values) != k - 1:
        raise DimensionMismatch("witness", k - 1, len(values))

    total = sum(c)
    if total * values[0] != 0 or total * values[k - 2] != 0:
        return False
    for j in range(1, k - 1):
        head = sum(c[: k - 1 - j])
        tail = sum(c[k - j:])
        if head * values[j] + tail * values[j - 1] != 0:
            return False
    return True


def build_family(a: Union[WitnessCombination, Sequence[int]]) -> PolynomialFamily:
    """Build ``P_1 ... P_k`` from the witness entries.

    ``P_1`` repeats the last entry, ``P_m`` (``2 <= m <= k-1``) inserts a zero
    at index ``k-m`` and ``P_k`` repeats the first entry.

    Raises:
        InvalidInput: If fewer than two entries are given or one is below 1.
    """
    values = a.a if isinstance(a, WitnessCombination) else tuple(a)
    if len(values) < 2:
        raise InvalidInput("witness", "at least two entries are required")
    if any(v < 1 for v in values):
        raise InvalidInput("witness", "entries must be positive")

    k = len(values) + 1
    members = [Polynomial(values + (values[-1],))]
    for m in range(2, k):
        z = k - m
        members.append(Polynomial(values[:z] + (0,) + values[z:]))
    members.append(Polynomial((values[0],) + values))
    return PolynomialFamily(tuple(members))


def verify_family(
    eq: EquationCoeffs,
    target: Iterable[int],
    family: Union[PolynomialFamily, Sequence[Polynomial]],
    require_distinct: bool = True,
    permutation: Optional[Sequence[int]] = None,
) -> VerificationReport:
    """Check a polynomial family against an equation and a target string.

    The family need not come from :func:`build_family`.

    Raises:
        DimensionMismatch: If the family does not have exactly ``k`` members.
    """
    members = family.members if isinstance(family, PolynomialFamily) else tuple(family)
    target = tuple(target)
    if len(members) != eq.k:
        raise DimensionMismatch("family", eq.k, len(members))

    combination = Polynomial()
    for ci, p in zip(eq.c, members):
        combination = combination + ci * p

    report = VerificationReport(
        sum_zero=combination.is_zero(),
        all_u_equivalent=all(u_equiv(p.to_string(), target) for p in members),
        pairwise_distinct=len({p.coeffs for p in members}) == len(members),
        require_distinct=require_distinct,
        witness=target,
        permutation=tuple(permutation) if permutation is not None else tuple(range(eq.k)),
    )
    if not report.passed:
        logger.debug(f"family check failed for {eq}: {report}")
    return report


def rado_condition(eq: EquationCoeffs) -> Optional[tuple[int, ...]]:
    """Smallest nonempty index subset whose coefficients sum to zero.

    Among subsets of minimal size the lexicographically first is returned;
    ``None`` means no such subset exists and the equation is not partition
    regular.
    """
    for size in range(1, eq.k + 1):
        for subset in combinations(range(eq.k), size):
            if sum(eq.c[i] for i in subset) == 0:
                return subset
    return None


def unsort_solution(witness: WitnessCombination, x_sorted: Sequence[int]) -> tuple[int, ...]:
    """Map a solution of the sorted equation back to the original order."""
    if len(x_sorted) != witness.k:
        raise DimensionMismatch("solution", witness.k, len(x_sorted))
    x = [0] * witness.k
    for j, original in enumerate(witness.permutation):
        x[original] = x_sorted[j]
    return tuple(x)


def three_ap_family() -> tuple[EquationCoeffs, IntString, PolynomialFamily]:
    """The three-term progression example ``x - 2y + z = 0`` with target
    ``<2, 1>`` and family ``<2,0,1>, <2,1,1>, <2,2,1>``."""
    eq = EquationCoeffs((1, -2, 1))
    family = PolynomialFamily(tuple(Polynomial(s) for s in ((2, 0, 1), (2, 1, 1), (2, 2, 1))))
    return eq, (2, 1), family

"""u-equivalence of integer strings and polynomials.

Two rules generate the relation, read left to right as reductions:

    zero      <..., 0, ...>     ->  <..., ...>
    collapse  <..., a, a, ...>  ->  <..., a, ...>

Every step shortens the string, so reduction terminates, and the system is
confluent: the normal form of a string is obtained by dropping its zero
entries and then merging runs of equal neighbours. Two strings are
u-equivalent iff their normal forms coincide.

Uniqueness of normal forms is a theorem for strings over the natural
numbers. For strings with negative entries it is checked empirically
against :func:`closure_oracle` and is not claimed beyond that.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Optional

from .exceptions import InvalidInput, ResourceExceeded

logger = logging.getLogger(__name__)

IntString = tuple[int, ...]
"""A finite (possibly empty) sequence of integers."""

CanonicalString = tuple[int, ...]
"""A string with no zero entries and no two equal neighbours."""

Rule = Literal["zero", "collapse"]


# ============================================================================
# Reduction
# ============================================================================

def reduce(s: Iterable[int]) -> CanonicalString:
    """Return the normal form of ``s``.

    >>> reduce((3, 0, 0, -4, 1, 1))
    (3, -4, 1)
    """
    out: list[int] = []
    for a in s:
        if a == 0:
            continue
        if out and out[-1] == a:
            continue
        out.append(a)
    return tuple(out)


def is_canonical(s: IntString) -> bool:
    """Check the normal form invariants: no zeros, no equal neighbours."""
    return all(a != 0 for a in s) and all(s[i] != s[i + 1] for i in range(len(s) - 1))


def one_step_reductions(s: IntString) -> Iterator[tuple[Rule, int, IntString]]:
    """Yield every single reduction applicable to ``s``.

    Each item is ``(rule, index, result)``; for ``collapse`` the index is the
    position of the second entry of the pair, which is the one removed.
    """
    for i, a in enumerate(s):
        if a == 0:
            yield "zero", i, s[:i] + s[i + 1:]
        if i > 0 and s[i - 1] == a:
            yield "collapse", i, s[:i] + s[i + 1:]


def rewrite_steps(s: IntString) -> list[tuple[Rule, int, IntString]]:
    """Reduce ``s`` leftmost-first and return the trace of steps taken."""
    trace = []
    current = tuple(s)
    while True:
        step = next(one_step_reductions(current), None)
        if step is None:
            return trace
        trace.append(step)
        current = step[2]
        logger.debug(f"{step[0]} at {step[1]}: {list(current)}")


def u_equiv(s: Iterable[int], t: Iterable[int]) -> bool:
    """Decide u-equivalence by comparing normal forms."""
    return reduce(s) == reduce(t)


def concat(s: IntString, t: IntString) -> IntString:
    """Concatenate two strings."""
    return tuple(s) + tuple(t)


def scale(h: int, s: IntString) -> IntString:
    """Multiply every entry by ``h``."""
    return tuple(h * a for a in s)


# ============================================================================
# Polynomials
# ============================================================================

@dataclass(frozen=True)
class Polynomial:
    """Integer polynomial as a dense ascending coefficient vector.

    ``coeffs[i]`` is the coefficient of ``X**i``. Trailing zeros are trimmed
    on construction, so the zero polynomial has ``coeffs == ()``.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        c = tuple(int(a) for a in self.coeffs)
        n = len(c)
        while n and c[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "coeffs", c[:n])

    @classmethod
    def from_string(cls, s: Iterable[int]) -> "Polynomial":
        return cls(tuple(s))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Polynomial":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_string(self) -> IntString:
        return self.coeffs

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, v in enumerate(b):
            res[i] += v
        return Polynomial(tuple(res))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, h: int) -> "Polynomial":
        if not isinstance(h, int):
            return NotImplemented
        return Polynomial(tuple(h * a for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("X" if i == 1 else f"X^{i}")
            sign = "-" if a < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += sign + body
        return text


def poly_to_string(p: Polynomial) -> IntString:
    """Coefficient string of ``p`` in ascending degree order."""
    return p.coeffs


def u_equiv_poly(p: Polynomial, q: Polynomial) -> bool:
    """Decide u-equivalence of two polynomials via their coefficient strings."""
    return u_equiv(poly_to_string(p), poly_to_string(q))


# ============================================================================
# Reference oracle
# ============================================================================

def _neighbours(s: IntString, max_len: int) -> Iterator[IntString]:
    # Reductions, then their inverses (insert a zero, duplicate an entry).
    for _, _, t in one_step_reductions(s):
        yield t
    if len(s) + 1 > max_len:
        return
    for i in range(len(s) + 1):
        yield s[:i] + (0,) + s[i:]
    for i, a in enumerate(s):
        yield s[:i] + (a,) + s[i:]


def closure_oracle(
    s: IntString,
    max_len: int,
    value_set: Iterable[int],
    state_cap: Optional[int] = None,
) -> set[IntString]:
    """All strings reachable from ``s`` by the generating rules in both
    directions, never exceeding ``max_len`` entries along the way.

    This is a brute-force reference for :func:`u_equiv` and is only meant
    for small inputs.

    Raises:
        InvalidInput: If ``s`` is longer than ``max_len`` or uses a value
            outside ``value_set``.
        ResourceExceeded: If more than ``state_cap`` strings are reached.
    """
    from .config import get_config

    s = tuple(s)
    values = set(value_set)
    if len(s) > max_len:
        raise InvalidInput("max_len", f"string of length {len(s)} exceeds max_len {max_len}")
    stray = [a for a in s if a not in values]
    if stray:
        raise InvalidInput("value_set", f"entries {stray} are not in the value set")
    cap = state_cap if state_cap is not None else get_config().closure_state_cap

    seen = {s}
    queue = deque([s])
    while queue:
        current = queue.popleft()
        for t in _neighbours(current, max_len):
            if t in seen:
                continue
            seen.add(t)
            if len(seen) > cap:
                raise ResourceExceeded("closure states", cap, len(seen))
            queue.append(t)
    logger.debug(f"closure of {list(s)} (max_len={max_len}): {len(seen)} strings")
    return seen

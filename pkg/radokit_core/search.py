"""Finite verification of partition regularity.

Everything here works on initial segments ``{1..N}`` of the positive
integers; 0 is never colored, since the all-zero tuple trivially solves
every sum-zero equation.

:func:`min_forcing_n` colors ``1, 2, 3, ...`` in increasing order and
backtracks as soon as the integer just colored completes a monochromatic
solution. Only solutions whose largest entry is the new integer are
checked at each node. The deepest valid partial coloring found decides
the answer: if it reaches ``n_max`` the equation is not forced on
``{1..n_max}``, otherwise the minimal forcing ``N`` is one past its length.
"""
import logging
import multiprocessing
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, replace
from multiprocessing.sharedctypes import Synchronized
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

import psutil

from .config import get_config
from .exceptions import InvalidInput, RangeError, ResourceExceeded
from .witness import EquationCoeffs

logger = logging.getLogger(__name__)

Solution = tuple[int, ...]


# ============================================================================
# Domain types
# ============================================================================

@dataclass(frozen=True)
class Coloring:
    """Total coloring of ``{1..n_max}``; ``assignment[i - 1]`` colors ``i``."""

    n_max: int
    r: int
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(int(v) for v in self.assignment))
        if self.r < 1:
            raise InvalidInput("colors", "at least one color is required")
        if len(self.assignment) != self.n_max:
            raise InvalidInput("coloring", f"expected {self.n_max} entries, got {len(self.assignment)}")
        bad = [v for v in self.assignment if not 0 <= v < self.r]
        if bad:
            raise InvalidInput("coloring", f"colors {sorted(set(bad))} are outside 0..{self.r - 1}")

    @classmethod
    def from_list(cls, colors: Sequence[int], r: Optional[int] = None) -> "Coloring":
        """Build from a JSON-style list; ``r`` defaults to one past the largest color."""
        colors = tuple(colors)
        if r is None:
            r = max(colors, default=0) + 1
        return cls(len(colors), r, colors)

    def color(self, x: int) -> int:
        if not 1 <= x <= self.n_max:
            raise RangeError(x, self.n_max)
        return self.assignment[x - 1]

    def color_class(self, color: int) -> list[int]:
        return [i + 1 for i, v in enumerate(self.assignment) if v == color]

    def to_list(self) -> list[int]:
        return list(self.assignment)


@dataclass(frozen=True)
class MTSpec:
    """Ground sequence ``x_1 < ... < x_n`` and block coefficients ``a_0 ... a_k``."""

    ground: tuple[int, ...]
    coeffs: tuple[int, ...] = (1,)

    def __post_init__(self) -> None:
        ground = tuple(int(v) for v in self.ground)
        coeffs = tuple(int(v) for v in self.coeffs)
        object.__setattr__(self, "ground", ground)
        object.__setattr__(self, "coeffs", coeffs)
        if any(v < 1 for v in ground):
            raise InvalidInput("ground", "entries must be positive integers")
        if any(ground[i] >= ground[i + 1] for i in range(len(ground) - 1)):
            raise InvalidInput("ground", "sequence must be strictly increasing")
        if not coeffs:
            raise InvalidInput("coeffs", "at least one coefficient is required")
        if any(v < 1 for v in coeffs):
            raise InvalidInput("coeffs", "coefficients must be positive")


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a forcing search.

    ``certificate`` is ``None`` when the search space was exhausted (forced),
    otherwise a coloring of ``{1..n}`` without a monochromatic solution.
    """

    forced: bool
    n: int
    certificate: Optional[Coloring]
    nodes_explored: int


# ============================================================================
# Enumeration
# ============================================================================

def _iter_solutions(
    c: Sequence[int],
    members: Sequence[int],
    member_set: set[int] | frozenset[int],
    distinct: bool,
) -> Iterator[Solution]:
    # The last variable is solved for, so tuples come out in lexicographic order.
    k = len(c)
    last = c[-1]
    x: list[int] = []

    def extend(partial: int) -> Iterator[Solution]:
        if len(x) == k - 1:
            if partial % last:
                return
            v = -partial // last
            if v in member_set and not (distinct and v in x):
                yield tuple(x) + (v,)
            return
        ci = c[len(x)]
        for m in members:
            if distinct and m in x:
                continue
            x.append(m)
            yield from extend(partial + ci * m)
            x.pop()

    yield from extend(0)


def solutions_in_set(
    eq: EquationCoeffs,
    A: Iterable[int],
    distinct: bool = True,
    limit: Optional[int] = None,
) -> list[Solution]:
    """Solutions with every entry in ``A``, in lexicographic order.

    Raises:
        InvalidInput: If ``limit`` is given and below 1.
    """
    if limit is not None and limit < 1:
        raise InvalidInput("limit", "must be at least 1")
    members = sorted(set(A))
    found = []
    for sol in _iter_solutions(eq.c, members, frozenset(members), distinct):
        found.append(sol)
        if limit is not None and len(found) >= limit:
            break
    return found


def find_monochromatic(eq: EquationCoeffs, col: Coloring, distinct: bool = True) -> Optional[Solution]:
    """Lexicographically least solution lying inside one color class."""
    candidates = []
    for color in range(col.r):
        members = col.color_class(color)
        first = next(_iter_solutions(eq.c, members, frozenset(members), distinct), None)
        if first is not None:
            candidates.append(first)
    return min(candidates) if candidates else None


def _completes_solution(
    c: Sequence[int],
    members: Sequence[int],
    member_set: set[int],
    new: int,
    distinct: bool,
) -> bool:
    """Whether some solution inside ``members`` uses ``new``.

    ``members`` holds the color class of ``new`` (including it) among the
    integers colored so far, so ``new`` is its largest element.
    """
    k = len(c)
    for p in range(k):
        q = k - 1 if p != k - 1 else k - 2
        rest = [i for i in range(k) if i != p and i != q]
        for values in product(members, repeat=len(rest)):
            if distinct and (new in values or len(set(values)) != len(values)):
                continue
            partial = c[p] * new + sum(c[i] * v for i, v in zip(rest, values))
            if partial % c[q]:
                continue
            v = -partial // c[q]
            if v not in member_set:
                continue
            if distinct and (v == new or v in values):
                continue
            return True
    return False


# ============================================================================
# Backtracking search
# ============================================================================

@dataclass(frozen=True)
class _SubtreeTask:
    c: tuple[int, ...]
    r: int
    distinct: bool
    n_max: int
    symmetry: bool
    budget: int
    prefix: tuple[int, ...]


@dataclass(frozen=True)
class _SubtreeResult:
    best_depth: int
    best_coloring: tuple[int, ...]
    complete: bool
    nodes: int


class _ColoringSearch:
    """Depth-first search for a long coloring without monochromatic solutions."""

    def __init__(
        self,
        task: _SubtreeTask,
        stop_depth: Optional[int] = None,
        shared_nodes: Optional["Synchronized[int]"] = None,
    ):
        self.c = task.c
        self.r = task.r
        self.distinct = task.distinct
        self.n_max = task.n_max
        self.symmetry = task.symmetry
        self.budget = task.budget
        self.stop_depth = stop_depth
        self.shared_nodes = shared_nodes
        self.nodes = 0
        self.assignment: list[int] = []
        self.classes: list[list[int]] = [[] for _ in range(task.r)]
        self.class_sets: list[set[int]] = [set() for _ in range(task.r)]
        self.best_depth = 0
        self.best_coloring: tuple[int, ...] = ()
        self.prefixes: list[tuple[int, ...]] = []

    def _allowed_colors(self, x: int) -> range:
        if x == 1:
            return range(1)
        if self.symmetry:
            return range(min(self.r, max(self.assignment) + 2))
        return range(self.r)

    def _push(self, x: int, color: int) -> bool:
        self.assignment.append(color)
        self.classes[color].append(x)
        self.class_sets[color].add(x)
        return not _completes_solution(self.c, self.classes[color], self.class_sets[color], x, self.distinct)

    def _pop(self, x: int, color: int) -> None:
        self.assignment.pop()
        self.classes[color].pop()
        self.class_sets[color].discard(x)

    def _record(self) -> None:
        depth = len(self.assignment)
        if depth > self.best_depth:
            self.best_depth = depth
            self.best_coloring = tuple(self.assignment)

    def _count_node(self) -> int:
        """Count one node; returns the total charged against the budget."""
        self.nodes += 1
        if self.shared_nodes is None:
            return self.nodes
        with self.shared_nodes.get_lock():
            self.shared_nodes.value += 1
            return self.shared_nodes.value

    def load_prefix(self, prefix: Sequence[int]) -> bool:
        """Apply a prefix coloring; False if it already holds a solution."""
        for x, color in enumerate(prefix, start=1):
            if not self._push(x, color):
                return False
            self._record()
        return True

    def run(self) -> bool:
        """Explore from the current state; True once ``n_max`` is reached."""
        x = len(self.assignment) + 1
        if x > self.n_max:
            return True
        if self.stop_depth is not None and x > self.stop_depth:
            self.prefixes.append(tuple(self.assignment))
            return False
        for color in self._allowed_colors(x):
            used = self._count_node()
            if used > self.budget:
                raise ResourceExceeded(
                    "search nodes",
                    self.budget,
                    used,
                    partial={"not_forced_up_to": self.best_depth, "coloring": list(self.best_coloring)},
                )
            if self._push(x, color):
                self._record()
                if self.run():
                    return True
            self._pop(x, color)
        return False


# Node counter shared by pool workers; installed by _init_worker.
_shared_nodes: Optional["Synchronized[int]"] = None


def _init_worker(counter: "Synchronized[int]") -> None:
    global _shared_nodes
    _shared_nodes = counter


def _explore_subtree(task: _SubtreeTask) -> _SubtreeResult:
    search = _ColoringSearch(task, shared_nodes=_shared_nodes)
    complete = search.load_prefix(task.prefix) and search.run()
    return _SubtreeResult(search.best_depth, search.best_coloring, complete, search.nodes)


def _outcome(
    eq: EquationCoeffs,
    r: int,
    n_max: int,
    best_depth: int,
    best_coloring: Sequence[int],
    complete: bool,
    nodes: int,
) -> SearchOutcome:
    if complete:
        certificate = Coloring(n_max, r, tuple(best_coloring))
        logger.debug(f"{eq}: {r}-coloring of 1..{n_max} without monochromatic solution ({nodes} nodes)")
        return SearchOutcome(False, n_max, certificate, nodes)
    n = best_depth + 1
    logger.debug(f"{eq}: every {r}-coloring of 1..{n} is forced ({nodes} nodes)")
    return SearchOutcome(True, n, None, nodes)


def min_forcing_n(
    eq: EquationCoeffs,
    r: int,
    distinct: bool = True,
    n_max: int = 12,
    budget: Optional[int] = None,
    symmetry: Optional[bool] = None,
    workers: Optional[int] = None,
    split_depth: Optional[int] = None,
) -> SearchOutcome:
    """Least ``N <= n_max`` such that every ``r``-coloring of ``{1..N}`` has a
    monochromatic solution (pairwise distinct if requested).

    Unset keyword arguments fall back to the configuration. With more than one
    worker, the valid colorings of ``{1..split_depth}`` are explored as
    independent subtrees in a process pool; the answer does not depend on
    how the work is distributed, though the certificate may.

    Raises:
        InvalidInput: If ``r`` or ``n_max`` is below 1.
        ResourceExceeded: If the node budget is exhausted before a decision.
    """
    if r < 1:
        raise InvalidInput("colors", "at least one color is required")
    if n_max < 1:
        raise InvalidInput("max", "must be at least 1")

    config = get_config()
    budget = budget if budget is not None else config.budget
    symmetry = symmetry if symmetry is not None else config.symmetry_breaking
    workers = workers if workers is not None else config.workers
    if workers == 0:
        workers = psutil.cpu_count() or 1
    split_depth = split_depth if split_depth is not None else config.split_depth

    task = _SubtreeTask(eq.c, r, distinct, n_max, symmetry, budget, ())
    if workers <= 1 or split_depth >= n_max:
        result = _explore_subtree(task)
        return _outcome(eq, r, n_max, result.best_depth, result.best_coloring, result.complete, result.nodes)

    # Split on the valid colorings of {1..split_depth}.
    splitter = _ColoringSearch(task, stop_depth=split_depth)
    splitter.run()
    nodes = splitter.nodes
    best_depth, best_coloring = splitter.best_depth, splitter.best_coloring
    if not splitter.prefixes:
        return _outcome(eq, r, n_max, best_depth, best_coloring, False, nodes)

    logger.debug(f"{eq}: exploring {len(splitter.prefixes)} subtrees on {workers} workers")
    # Workers charge every node to one counter, so the budget caps the total.
    counter = multiprocessing.Value("q", nodes)
    complete_coloring: Optional[tuple[int, ...]] = None
    exhausted = False
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(counter,)) as executor:
        pending = {executor.submit(_explore_subtree, replace(task, prefix=prefix)) for prefix in splitter.prefixes}
        try:
            while pending and complete_coloring is None and not exhausted:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for future in done:
                    try:
                        result = future.result()
                    except ResourceExceeded as e:
                        exhausted = True
                        depth = e.partial.get("not_forced_up_to", 0)
                        if depth > best_depth:
                            best_depth, best_coloring = depth, tuple(e.partial.get("coloring", ()))
                        continue
                    if result.best_depth > best_depth:
                        best_depth, best_coloring = result.best_depth, result.best_coloring
                    if result.complete and complete_coloring is None:
                        complete_coloring = result.best_coloring
        finally:
            for future in pending:
                future.cancel()

    nodes = counter.value
    if complete_coloring is not None:
        return _outcome(eq, r, n_max, n_max, complete_coloring, True, nodes)
    if exhausted:
        raise ResourceExceeded(
            "search nodes",
            budget,
            nodes,
            partial={"not_forced_up_to": best_depth, "coloring": list(best_coloring)},
        )
    return _outcome(eq, r, n_max, best_depth, best_coloring, False, nodes)


def exhaustive_forcing_n(eq: EquationCoeffs, r: int, distinct: bool = True, n_max: int = 12) -> SearchOutcome:
    """Reference decision procedure: try all ``r**N`` colorings for each ``N``.

    Exponential and without pruning; intended for small ``N``.
    """
    if r < 1:
        raise InvalidInput("colors", "at least one color is required")
    if n_max < 1:
        raise InvalidInput("max", "must be at least 1")
    checked = 0
    witness: Optional[Coloring] = None
    for n in range(1, n_max + 1):
        witness = None
        for colors in product(range(r), repeat=n):
            checked += 1
            col = Coloring(n, r, colors)
            if find_monochromatic(eq, col, distinct) is None:
                witness = col
                break
        if witness is None:
            return SearchOutcome(True, n, None, checked)
    return SearchOutcome(False, n_max, witness, checked)


# ============================================================================
# Milliken-Taylor and finite sums
# ============================================================================

def mt_sums(spec: MTSpec, cap: Optional[int] = None) -> set[int]:
    """All sums ``a_0 * sum(I_0) + ... + a_k * sum(I_k)`` over nonempty index
    blocks ``I_0 < ... < I_k`` of the ground sequence.

    An empty set is returned when the ground sequence is too short to host
    ``k + 1`` blocks.

    Raises:
        ResourceExceeded: If more than ``cap`` block tuples are enumerated.
    """
    limit = cap if cap is not None else get_config().mt_block_cap
    ground, coeffs = spec.ground, spec.coeffs
    n, blocks = len(ground), len(coeffs)
    sums: set[int] = set()
    count = 0

    # Explicit stack of (index, block, block_filled, partial_sum).
    stack = [(0, 0, False, 0)]
    while stack:
        i, block, filled, total = stack.pop()
        needed = blocks - block - (1 if filled else 0)
        if n - i < needed:
            continue
        if i == n:
            if block == blocks - 1 and filled:
                count += 1
                if count > limit:
                    raise ResourceExceeded("block tuples", limit, count)
                sums.add(total)
            continue
        x = ground[i]
        stack.append((i + 1, block, filled, total))
        stack.append((i + 1, block, True, total + coeffs[block] * x))
        if filled and block + 1 < blocks:
            stack.append((i + 1, block + 1, True, total + coeffs[block + 1] * x))

    logger.debug(f"{count} block tuples, {len(sums)} distinct sums")
    return sums


def fs(ground: Sequence[int], cap: Optional[int] = None) -> set[int]:
    """Finite sums of the ground sequence (all nonempty subset sums)."""
    return mt_sums(MTSpec(tuple(ground), (1,)), cap)


def verify_mt_monochromatic(spec: MTSpec, col: Coloring, cap: Optional[int] = None) -> Optional[int]:
    """The color shared by all MT-sums, or ``None`` if they are not
    monochromatic. An empty sum set is reported as ``None``.

    Raises:
        RangeError: If a sum lies beyond the colored segment.
    """
    sums = mt_sums(spec, cap)
    if not sums:
        return None
    top = max(sums)
    if top > col.n_max:
        raise RangeError(top, col.n_max)
    colors = {col.color(v) for v in sums}
    return colors.pop() if len(colors) == 1 else None

"""Core API for RadoKit.

Each function takes plain text / JSON-friendly arguments, runs one
operation and returns its response schema. :func:`run_job` dispatches by
command name for batch input and :func:`execute` adds cache replay.
"""
import inspect
import json
import logging
import time
from typing import Any, Callable, Optional

from pydantic import BaseModel

from . import expr, search, ueq_core, witness as witness_mod
from .cache import ResultCache, job_digest
from .exceptions import CacheError, InvalidInput, ParseError
from .schemas import (
    CanonResponse,
    EqualityResponse,
    FamilyResponse,
    JobRecord,
    SearchOutcomeResponse,
    SolutionsResponse,
    SumSetResponse,
    TraceStep,
    VerificationResponse,
    WitnessResponse,
)
from .utils import from_decimal_strings, parse_int_list, parse_int_string, to_decimal_strings

logger = logging.getLogger(__name__)


def canon(string: str, trace: bool = False) -> CanonResponse:
    """Normal form of a string literal such as ``[3,0,0,-4,1,1]``."""
    s = parse_int_string(string)
    steps = None
    if trace:
        steps = [
            TraceStep(rule=rule, index=index, result=to_decimal_strings(result))
            for rule, index, result in ueq_core.rewrite_steps(s)
        ]
    return CanonResponse(
        input=to_decimal_strings(s),
        canonical=to_decimal_strings(ueq_core.reduce(s)),
        trace=steps,
    )


def equal(left: str, right: str) -> EqualityResponse:
    """Decide equality of two combinations such as ``2U (+) U``."""
    e1 = expr.parse_combination(left)
    e2 = expr.parse_combination(right)
    c1 = expr.canonical_combination(e1)
    c2 = expr.canonical_combination(e2)
    return EqualityResponse(
        equal=expr.combinations_equal(e1, e2),
        left=expr.format_combination(c1),
        right=expr.format_combination(c2),
        left_canonical=to_decimal_strings(c1.coeffs),
        right_canonical=to_decimal_strings(c2.coeffs),
    )


def witness(equation: str, verify: bool = False) -> WitnessResponse:
    """Witness combination for a sum-zero equation."""
    parsed = expr.parse_equation(equation)
    w = witness_mod.build_witness(parsed.eq)
    report = None
    if verify:
        report = witness_mod.verify_family(
            w.sorted_c, w.a, witness_mod.build_family(w), True, w.permutation
        )
    return WitnessResponse.from_witness(
        equation=str(parsed.eq),
        coeffs=parsed.eq.c,
        witness=w,
        combination=expr.format_combination(expr.UltraExpr(w.a)),
        system_holds=witness_mod.check_system(w.sorted_c, w),
        verification=report,
    )


def family(equation: str) -> FamilyResponse:
    """Polynomial family built from the witness of an equation."""
    parsed = expr.parse_equation(equation)
    w = witness_mod.build_witness(parsed.eq)
    return FamilyResponse.from_family(w, witness_mod.build_family(w))


def _parse_family(text: str) -> list[ueq_core.Polynomial]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.colno)
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParseError("family must be a JSON array of coefficient arrays", 1)
    return [ueq_core.Polynomial(from_decimal_strings(row)) for row in data]


def verify(
    equation: Optional[str] = None,
    target: Optional[str] = None,
    family: Optional[str] = None,
    distinct: bool = True,
    example: Optional[str] = None,
) -> VerificationResponse:
    """Verify a polynomial family against an equation.

    Without ``family`` the constructed family of the equation's witness is
    checked; ``example="3ap"`` checks the three-term progression family.
    """
    if example is not None:
        if example != "3ap":
            raise InvalidInput("example", f"unknown example {example!r} (available: 3ap)")
        eq, target_string, members = witness_mod.three_ap_family()
        report = witness_mod.verify_family(eq, target_string, members, distinct)
        return VerificationResponse.from_report(report)

    if equation is None:
        raise InvalidInput("equation", "an equation or --example is required")
    parsed = expr.parse_equation(equation)

    if family is None:
        w = witness_mod.build_witness(parsed.eq)
        report = witness_mod.verify_family(
            w.sorted_c, w.a, witness_mod.build_family(w), distinct, w.permutation
        )
        return VerificationResponse.from_report(report)

    if target is None:
        raise InvalidInput("target", "a target string is required with a user family")
    report = witness_mod.verify_family(parsed.eq, parse_int_string(target), _parse_family(family), distinct)
    return VerificationResponse.from_report(report)


def solve(
    equation: str,
    members: Optional[str] = None,
    n_max: Optional[int] = None,
    distinct: bool = False,
    limit: Optional[int] = None,
) -> SolutionsResponse:
    """Solutions inside a finite set, given as ``1,2,3`` or as ``1..n_max``."""
    parsed = expr.parse_equation(equation)
    if members is not None:
        A = parse_int_list(members, "set")
        if any(v < 1 for v in A):
            raise InvalidInput("set", "entries must be positive integers")
    elif n_max is not None:
        A = tuple(range(1, n_max + 1))
    else:
        raise InvalidInput("set", "either a set or a maximum is required")
    if not A:
        raise InvalidInput("set", "the set must be nonempty")
    found = search.solutions_in_set(parsed.eq, A, distinct, limit)
    return SolutionsResponse(
        coeffs=to_decimal_strings(parsed.eq.c),
        distinct=distinct,
        count=len(found),
        solutions=[to_decimal_strings(x) for x in found],
    )


def force(
    equation: str,
    colors: int,
    distinct: bool = False,
    n_max: int = 12,
    budget: Optional[int] = None,
    symmetry: Optional[bool] = None,
    workers: Optional[int] = None,
    exhaustive: bool = False,
) -> SearchOutcomeResponse:
    """Minimal forcing ``N`` for ``colors`` colors up to ``n_max``."""
    parsed = expr.parse_equation(equation)
    if exhaustive:
        outcome = search.exhaustive_forcing_n(parsed.eq, colors, distinct, n_max)
    else:
        outcome = search.min_forcing_n(
            parsed.eq, colors, distinct, n_max, budget=budget, symmetry=symmetry, workers=workers
        )
    return SearchOutcomeResponse.from_outcome(outcome)


def _sum_set(spec: search.MTSpec, coloring: Optional[str]) -> SumSetResponse:
    sums = search.mt_sums(spec)
    color = None
    if coloring is not None:
        col = search.Coloring.from_list(parse_int_string(coloring))
        color = search.verify_mt_monochromatic(spec, col)
    return SumSetResponse(
        ground=to_decimal_strings(spec.ground),
        coeffs=to_decimal_strings(spec.coeffs),
        count=len(sums),
        sums=to_decimal_strings(sorted(sums)),
        monochromatic_color=color,
    )


def mtsums(ground: str, coeffs: str, coloring: Optional[str] = None) -> SumSetResponse:
    """Milliken-Taylor sums of a ground sequence such as ``1,2,3``."""
    spec = search.MTSpec(parse_int_list(ground, "ground"), parse_int_list(coeffs, "coeffs"))
    return _sum_set(spec, coloring)


def fs(ground: str, coloring: Optional[str] = None) -> SumSetResponse:
    """Finite sums of a ground sequence."""
    return _sum_set(search.MTSpec(parse_int_list(ground, "ground"), (1,)), coloring)


JOBS: dict[str, Callable[..., BaseModel]] = {
    "canon": canon,
    "equal": equal,
    "witness": witness,
    "family": family,
    "verify": verify,
    "solve": solve,
    "force": force,
    "mtsums": mtsums,
    "fs": fs,
}


def run_job(command: str, args: dict[str, Any]) -> dict[str, Any]:
    """Run one job and return its JSON document.

    Raises:
        InvalidInput: If the command is unknown or the arguments do not fit it.
    """
    handler = JOBS.get(command)
    if handler is None:
        raise InvalidInput("command", f"unknown command {command!r} (available: {', '.join(sorted(JOBS))})")
    try:
        inspect.signature(handler).bind(**args)
    except TypeError as e:
        raise InvalidInput("args", f"{command}: {e}")
    response = handler(**args)
    return response.model_dump(mode="json")


def execute(command: str, args: dict[str, Any], cache: Optional[ResultCache] = None) -> dict[str, Any]:
    """Run a job, replaying a cached result for identical input.

    An unreadable or unwritable cache is logged and bypassed.
    """
    if cache is not None:
        try:
            record = cache.lookup(command, args)
        except CacheError as e:
            logger.warning(f"{e}; running without the cache")
            cache = None
        else:
            if record is not None:
                return record.result

    started = time.perf_counter()
    result = run_job(command, args)
    elapsed = time.perf_counter() - started
    logger.debug(f"{command} finished in {elapsed:.4f}s")

    if cache is not None:
        try:
            cache.store(JobRecord(command=command, input_digest=job_digest(command, args), result=result, wall_time=elapsed))
        except CacheError as e:
            logger.warning(f"{e}; result not cached")
    return result

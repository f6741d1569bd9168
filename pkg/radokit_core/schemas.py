"""Pydantic schemas/DTOs for RadoKit.

These schemas define the JSON documents printed by the CLI and stored in
the result cache. Big integers travel as decimal strings so that consumers
never lose precision.
"""
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field

from .search import SearchOutcome
from .utils import to_decimal_strings
from .witness import PolynomialFamily, VerificationReport, WitnessCombination


class TraceStep(BaseModel):
    """One reduction step."""
    rule: Literal["zero", "collapse"]
    index: int
    result: list[str]


class CanonResponse(BaseModel):
    """Schema for the normal form of a string."""
    input: list[str]
    canonical: list[str]
    trace: Optional[list[TraceStep]] = None


class EqualityResponse(BaseModel):
    """Schema for a combination equality decision."""
    equal: bool
    left: str
    right: str
    left_canonical: list[str]
    right_canonical: list[str]


class VerificationResponse(BaseModel):
    """Schema for a family verification report."""
    sum_zero: bool
    all_u_equivalent: bool
    pairwise_distinct: bool
    passed: bool
    witness: list[str]
    permutation: list[int]

    @classmethod
    def from_report(cls, report: VerificationReport) -> "VerificationResponse":
        return cls(
            sum_zero=report.sum_zero,
            all_u_equivalent=report.all_u_equivalent,
            pairwise_distinct=report.pairwise_distinct,
            passed=report.passed,
            witness=to_decimal_strings(report.witness),
            permutation=list(report.permutation),
        )


class WitnessResponse(BaseModel):
    """Schema for a witness combination."""
    equation: str
    coeffs: list[str]
    sorted_coeffs: list[str]
    permutation: list[int]
    witness: list[str]
    combination: str
    system_holds: bool
    verification: Optional[VerificationResponse] = None

    @classmethod
    def from_witness(
        cls,
        equation: str,
        coeffs: tuple[int, ...],
        witness: WitnessCombination,
        combination: str,
        system_holds: bool,
        verification: Optional[VerificationReport] = None,
    ) -> "WitnessResponse":
        return cls(
            equation=equation,
            coeffs=to_decimal_strings(coeffs),
            sorted_coeffs=to_decimal_strings(witness.sorted_c.c),
            permutation=list(witness.permutation),
            witness=to_decimal_strings(witness.a),
            combination=combination,
            system_holds=system_holds,
            verification=VerificationResponse.from_report(verification) if verification else None,
        )


class FamilyResponse(BaseModel):
    """Schema for a polynomial family."""
    sorted_coeffs: list[str]
    witness: list[str]
    family: list[list[str]]
    polynomials: list[str]

    @classmethod
    def from_family(cls, witness: WitnessCombination, family: PolynomialFamily) -> "FamilyResponse":
        return cls(
            sorted_coeffs=to_decimal_strings(witness.sorted_c.c),
            witness=to_decimal_strings(witness.a),
            family=[to_decimal_strings(p.coeffs) for p in family.members],
            polynomials=[str(p) for p in family.members],
        )


class SolutionsResponse(BaseModel):
    """Schema for enumerated solutions."""
    coeffs: list[str]
    distinct: bool
    count: int
    solutions: list[list[str]]


class SearchOutcomeResponse(BaseModel):
    """Schema for a forcing search outcome."""
    forced: bool
    n: int
    certificate: Union[list[int], Literal["exhausted"]]
    nodes: int

    @classmethod
    def from_outcome(cls, outcome: SearchOutcome) -> "SearchOutcomeResponse":
        return cls(
            forced=outcome.forced,
            n=outcome.n,
            certificate=outcome.certificate.to_list() if outcome.certificate else "exhausted",
            nodes=outcome.nodes_explored,
        )


class SumSetResponse(BaseModel):
    """Schema for a Milliken-Taylor or finite-sum set."""
    ground: list[str]
    coeffs: list[str]
    count: int
    sums: list[str]
    monochromatic_color: Optional[int] = None


class BatchJob(BaseModel):
    """One line of batch input."""
    command: str
    args: dict[str, Any] = Field(default_factory=dict)


class JobRecord(BaseModel):
    """Cache entry for one executed job."""
    command: str
    input_digest: str
    result: dict[str, Any]
    wall_time: float


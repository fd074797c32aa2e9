"""Report schemas for adversary evaluations and proof-chain checks.

Every number that a check compares is stored as an exact rational string so a
reader can redo the comparison by hand.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Literal

from pydantic import BaseModel, Field

from src.adversary.bound import AdversaryEvaluation, SampledEstimate, Witness
from src.adversary.family import FunctionLabel
from src.utils.rationals import fraction_payload


class Violation(BaseModel):
    context: dict[str, str]
    lhs: str
    rhs: str


class CheckReport(BaseModel):
    """Outcome of one mechanical check over a family."""

    name: str
    status: Literal["pass", "fail", "skipped"]
    checked: int = 0
    failures: int = 0
    violations: list[Violation] = Field(default_factory=list)
    exact: bool = True
    note: str | None = None
    details: dict[str, str] = Field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.status == "fail"


class LabelPayload(BaseModel):
    milestones: list[int]
    b: int


class WitnessPayload(BaseModel):
    F1: LabelPayload
    F2: LabelPayload
    v: int


class RationalPayload(BaseModel):
    numerator: str
    denominator: str
    decimal: str


class AdversaryReport(BaseModel):
    """Evaluation report; the CLI adds provenance and checks."""

    mode: Literal["full", "sampled"]
    exact: bool
    upper_bound: bool
    n: int
    L: int
    g: int
    min_ratio_squared: RationalPayload
    bound: str
    witness: WitnessPayload
    M_min: RationalPayload | None = None
    M_max: RationalPayload | None = None
    good_labels: int | None = None
    triples: int | None = None
    samples: int | None = None
    pool_size: int | None = None
    provenance: dict[str, Any] = Field(default_factory=dict)
    estimates: dict[str, Any] = Field(default_factory=dict)
    checks: list[CheckReport] = Field(default_factory=list)


def label_payload(label: FunctionLabel) -> LabelPayload:
    return LabelPayload(milestones=list(label.milestones.entries), b=label.b)


def witness_payload(witness: Witness) -> WitnessPayload:
    return WitnessPayload(F1=label_payload(witness.F1), F2=label_payload(witness.F2), v=witness.v)


def rational(value: Fraction | int) -> RationalPayload:
    return RationalPayload(**fraction_payload(value))


def evaluation_report(evaluation: AdversaryEvaluation) -> AdversaryReport:
    M_values = list(evaluation.M.values())
    return AdversaryReport(
        mode="full",
        exact=evaluation.exact,
        upper_bound=False,
        n=evaluation.n,
        L=evaluation.L,
        g=evaluation.g,
        min_ratio_squared=rational(evaluation.min_ratio_squared),
        bound=evaluation.bound,
        witness=witness_payload(evaluation.witness),
        M_min=rational(min(M_values)),
        M_max=rational(max(M_values)),
        good_labels=2 * len(M_values),
        triples=evaluation.triples,
    )


def estimate_report(estimate: SampledEstimate) -> AdversaryReport:
    return AdversaryReport(
        mode="sampled",
        exact=estimate.exact,
        upper_bound=True,
        n=estimate.n,
        L=estimate.L,
        g=estimate.g,
        min_ratio_squared=rational(estimate.min_ratio_squared),
        bound=estimate.bound,
        witness=witness_payload(estimate.witness),
        samples=estimate.samples,
        pool_size=len(estimate.pool),
    )

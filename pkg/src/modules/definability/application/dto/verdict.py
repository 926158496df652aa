from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.definability.domain.entity.verdict import Verdict
from src.modules.formulas.application.service.printer import print_formula


class CounterexampleDto(BaseModel):
    kind: str
    source: str
    source_elements: list[str]
    target: str
    target_elements: list[str]
    sigma: list[list[str]]
    point: list[str]
    image: list[str]


class VerdictDto(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str
    query: dict[str, Any]
    verdict: str
    syntactic_class: str = Field(alias="class")
    witness: str | None = None
    verified: bool = False
    counterexample: CounterexampleDto | None = None
    reason: str | None = None
    report: dict[str, Any] = Field(default_factory=dict)
    oracle: dict[str, Any] | None = None

    @classmethod
    def from_domain(cls, query: DefinabilityQuery, verdict: Verdict, schema_version: str) -> "VerdictDto":
        return cls(
            schema_version=schema_version,
            query=query.parameters,
            verdict=verdict.kind.value,
            syntactic_class=verdict.syntactic_class.value,
            witness=print_formula(verdict.witness) if verdict.witness is not None else None,
            verified=verdict.verified,
            counterexample=CounterexampleDto(**verdict.counterexample.describe()) if verdict.counterexample else None,
            reason=verdict.reason,
            report=verdict.report,
        )

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, exclude_none=True, indent=2)

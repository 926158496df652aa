from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from src.modules.definability.application.dto.verdict import CounterexampleDto, VerdictDto


class RunManifest(BaseModel):
    """
    Reproducible record of one ``check`` run.

    Everything except ``wall_time_seconds`` is a function of the inputs, so
    two runs on the same files and flags write the same body.
    """

    schema_version: str
    tool: str
    tool_version: str
    command: str = "check"
    inputs: dict[str, str]
    parameters: dict[str, Any]
    verdict: str
    exit_code: int
    witness: str | None = None
    counterexample: CounterexampleDto | None = None
    bounds_hit: list[str] = Field(default_factory=list)
    report: dict[str, Any] = Field(default_factory=dict)
    wall_time_seconds: float = 0.0

    @classmethod
    def from_verdict(
        cls,
        dto: VerdictDto,
        inputs: dict[str, str],
        exit_code: int,
        tool: str,
        tool_version: str,
        wall_time_seconds: float,
    ) -> "RunManifest":
        bound = dto.report.get("bound")
        return cls(
            schema_version=dto.schema_version,
            tool=tool,
            tool_version=tool_version,
            inputs=dict(sorted(inputs.items())),
            parameters=dto.query,
            verdict=dto.verdict,
            exit_code=exit_code,
            witness=dto.witness,
            counterexample=dto.counterexample,
            bounds_hit=[bound] if bound else [],
            report=dto.report,
            wall_time_seconds=round(wall_time_seconds, 6),
        )

    def body(self) -> dict[str, Any]:
        return self.model_dump(exclude={"wall_time_seconds"})

    def write(self, path: Path):
        path.write_text(self.model_dump_json(indent=2) + "\n", encoding="utf-8")

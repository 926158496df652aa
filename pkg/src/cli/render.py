from enum import Enum
from typing import Any

import typer
from pydantic import BaseModel, Field

from src.core.domain.errors import Error, ResourceExceeded
from src.modules.definability.application.dto.verdict import VerdictDto
from src.modules.definability.application.service.oracle import OracleResult
from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.definability.domain.entity.verdict import Verdict
from src.modules.formulas.application.service.printer import print_formula


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CommandReportDto(BaseModel):
    """JSON body of every command other than ``check``."""

    schema_version: str
    command: str
    status: str
    exit_code: int
    result: dict[str, Any] = Field(default_factory=dict)
    message: str | None = None

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True, indent=2)


def _headline(text: str, exit_code: int) -> str:
    color = {0: typer.colors.GREEN, 1: typer.colors.YELLOW}.get(exit_code, typer.colors.RED)
    return typer.style(text, fg=color, bold=True)


def oracle_summary(oracle: OracleResult) -> dict[str, Any]:
    summary = {"depth": oracle.depth, "atoms": oracle.atoms, "found": oracle.found}
    if oracle.witness is not None:
        summary["witness"] = print_formula(oracle.witness)
    return summary


class Printer:
    """
    Single writer for command output. Text goes to stdout with a coloured
    headline; JSON is one pydantic document per invocation. Logging stays on
    stderr so JSON output can be piped.
    """

    def __init__(self, output_format: OutputFormat, schema_version: str):
        self.output_format = output_format
        self.schema_version = schema_version

    @property
    def json(self) -> bool:
        return self.output_format == OutputFormat.JSON

    def verdict(
        self,
        query: DefinabilityQuery,
        verdict: Verdict,
        emit_witness: bool = False,
        oracle: OracleResult | None = None,
    ) -> VerdictDto:
        dto = VerdictDto.from_domain(query, verdict, self.schema_version)
        if oracle is not None:
            dto.oracle = oracle_summary(oracle)
        if self.json:
            typer.echo(dto.to_json())
        elif emit_witness:
            if verdict.witness is not None:
                typer.echo(print_formula(verdict.witness))
        else:
            lines = verdict.render().splitlines()
            typer.echo(_headline(lines[0], verdict.exit_code))
            for line in lines[1:]:
                typer.echo(line)
            if oracle is not None:
                found = print_formula(oracle.witness) if oracle.witness is not None else "none"
                typer.echo(f"oracle[depth={oracle.depth}, atoms={oracle.atoms}]: {found}")
        return dto

    def report(
        self,
        command: str,
        status: str,
        exit_code: int,
        text: str = "",
        result: dict[str, Any] | None = None,
    ) -> int:
        if self.json:
            dto = CommandReportDto(
                schema_version=self.schema_version,
                command=command,
                status=status,
                exit_code=exit_code,
                result=result or {},
            )
            typer.echo(dto.to_json())
        else:
            typer.echo(_headline(status, exit_code))
            if text:
                typer.echo(text)
        return exit_code

    def error(self, command: str, exc: Error):
        if isinstance(exc, ResourceExceeded):
            status, result = "resource-exceeded", {"report": exc.report}
        else:
            status, result = "error", {}
        if self.json:
            dto = CommandReportDto(
                schema_version=self.schema_version,
                command=command,
                status=status,
                exit_code=exc.exit_code,
                result=result,
                message=exc.message,
            )
            typer.echo(dto.to_json())
            return
        typer.echo(f"{typer.style(exc.__class__.__name__, fg=typer.colors.RED, bold=True)}: {exc.message}", err=True)
        for key, value in result.get("report", {}).items():
            typer.echo(f"  {key}: {value}", err=True)

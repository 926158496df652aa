from pydantic import BaseModel

from src.modules.congruences.domain.entity.congruence import Congruence
from src.modules.congruences.domain.entity.context import PropertyReport


class CongruenceDto(BaseModel):
    host: str
    blocks: list[list[str]]

    @classmethod
    def from_domain(cls, theta: Congruence) -> "CongruenceDto":
        display = theta.host.display
        return cls(host=theta.host.name, blocks=[[display(a) for a in block] for block in theta.blocks])


class PropertyReportDto(BaseModel):
    name: str
    holds: bool
    checked: int
    failure: str | None = None

    @classmethod
    def from_domain(cls, report: PropertyReport) -> "PropertyReportDto":
        return cls(
            name=report.name,
            holds=report.holds,
            checked=report.checked,
            failure=report.failure.render() if report.failure is not None else None,
        )

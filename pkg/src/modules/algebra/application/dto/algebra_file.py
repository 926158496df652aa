from pydantic import BaseModel, Field, model_validator

from src.modules.algebra.domain.entity.signature import OpSymbol, RelSymbol, Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure


class OperationTableDto(BaseModel):
    arity: int = Field(ge=0)
    table: list[int]


class RelationTableDto(BaseModel):
    arity: int = Field(ge=1)
    tuples: list[list[int]] = Field(default_factory=list)


class AlgebraFileDto(BaseModel):
    name: str
    size: int = Field(gt=0)
    elements: list[str] | None = None
    operations: dict[str, OperationTableDto] = Field(default_factory=dict)
    relations: dict[str, RelationTableDto] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_tables(self) -> "AlgebraFileDto":
        if self.elements is not None and len(self.elements) != self.size:
            raise ValueError(f"elements lists {len(self.elements)} names for size {self.size}")
        for symbol, op in self.operations.items():
            expected = self.size**op.arity
            if len(op.table) != expected:
                raise ValueError(f"operations.{symbol}.table has {len(op.table)} entries, expected {expected}")
            if any(not 0 <= value < self.size for value in op.table):
                raise ValueError(f"operations.{symbol}.table has entries outside 0..{self.size - 1}")
        for symbol, rel in self.relations.items():
            for row in rel.tuples:
                if len(row) != rel.arity or any(not 0 <= value < self.size for value in row):
                    raise ValueError(f"relations.{symbol} has a bad tuple {row}")
        return self

    def to_structure(self) -> FiniteStructure:
        return FiniteStructure(
            name=self.name,
            signature=Signature(
                operations=tuple(OpSymbol(name, op.arity) for name, op in self.operations.items()),
                relations=tuple(RelSymbol(name, rel.arity) for name, rel in self.relations.items()),
            ),
            size=self.size,
            tables={name: tuple(op.table) for name, op in self.operations.items()},
            relations={name: frozenset(tuple(row) for row in rel.tuples) for name, rel in self.relations.items()},
            elements=tuple(self.elements) if self.elements else None,
        )

    @classmethod
    def from_structure(cls, structure: FiniteStructure) -> "AlgebraFileDto":
        return cls(
            name=structure.name,
            size=structure.size,
            elements=list(structure.elements) if structure.elements else None,
            operations={
                op.name: OperationTableDto(arity=op.arity, table=list(structure.tables[op.name]))
                for op in structure.signature.operations
            },
            relations={
                rel.name: RelationTableDto(
                    arity=rel.arity, tuples=[list(row) for row in sorted(structure.relations.get(rel.name, ()))]
                )
                for rel in structure.signature.relations
            },
        )

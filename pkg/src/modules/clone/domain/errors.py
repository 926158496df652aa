from src.core.domain.errors import DomainError, ValidationError


class WrongArity(ValidationError): ...


class TargetNotInterpreted(ValidationError): ...


class EmptyClass(DomainError): ...

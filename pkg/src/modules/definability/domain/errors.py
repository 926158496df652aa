from src.core.domain.errors import DomainError, ValidationError


class QueryMismatch(ValidationError): ...


class PreconditionFailed(DomainError): ...

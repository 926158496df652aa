from src.core.domain.errors import DomainError, ValidationError


class NotInQuasivariety(DomainError): ...


class PairOutOfRange(ValidationError): ...


class SizeMismatch(ValidationError): ...

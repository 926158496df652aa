from src.core.domain.errors import DomainError, ValidationError


class NotAFunctionSymbol(ValidationError): ...


class NotADiscriminator(DomainError): ...


class NoMajorityTerm(DomainError): ...

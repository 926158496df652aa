from src.core.domain.errors import ValidationError


class SignatureMismatch(ValidationError): ...


class NotASublanguage(ValidationError): ...


class UnknownSymbol(ValidationError): ...


class InvalidStructure(ValidationError): ...


class VariableOutOfRange(ValidationError): ...


class UnknownAlgebra(ValidationError): ...

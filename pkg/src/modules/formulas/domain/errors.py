from src.core.domain.errors import ParseError, ValidationError


class FormulaSyntaxError(ParseError): ...


class UnassignedVariable(ValidationError): ...


class TargetMismatch(ValidationError): ...

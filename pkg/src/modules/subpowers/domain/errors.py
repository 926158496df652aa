from src.core.domain.errors import ValidationError


class NotASubuniverse(ValidationError): ...


class ElementOutOfRange(ValidationError): ...

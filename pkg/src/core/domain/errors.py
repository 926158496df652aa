from loguru import logger


class Error(Exception):
    MESSAGE = "Something went wrong"
    EXIT_CODE = 4

    def __init__(self, message=None, exit_code: int | None = None):
        self.message = message or self.MESSAGE
        self.exit_code = exit_code or self.EXIT_CODE
        super().__init__(self.message)
        logger.info(
            "[{class_name}] | {message} ",
            class_name=self.__class__.__name__,
            message=self.message,
            exit_code=self.exit_code,
        )


class DomainError(Error):
    EXIT_CODE = 2


class ValidationError(DomainError):
    EXIT_CODE = 2


class ParseError(ValidationError):
    MESSAGE = "Could not parse input"

    def __init__(self, message=None, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column or 0}: {message or self.MESSAGE}"
        super().__init__(message)


class NotSupportedError(DomainError):
    EXIT_CODE = 2


class ResourceExceeded(Error):
    MESSAGE = "Resource bound exceeded"
    EXIT_CODE = 3

    def __init__(self, message=None, report: dict | None = None):
        self.report = report or {}
        super().__init__(message)
        logger.warning("Bound hit: {report}", report=self.report)


class SynthesisError(Error):
    MESSAGE = "Synthesized witness failed verification"
    EXIT_CODE = 4

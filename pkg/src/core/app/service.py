from typing import Type

from loguru import logger

from src.core.domain.errors import Error, ResourceExceeded


class BaseService:
    """
    Shared plumbing for the application services: error raising in the
    ``(ErrorClass, message)`` style and uniform resource-bound reports.
    """

    NAME = "service"

    @staticmethod
    def _raise(error: tuple[Type[Error], str], **kwargs):
        _exception, msg = error
        raise _exception(msg.format(**kwargs) if kwargs else msg)

    def _exceed(self, bound: str, limit: int, reached: int, **extra) -> ResourceExceeded:
        report = {"service": self.NAME, "bound": bound, "limit": limit, "reached": reached, **extra}
        logger.warning("{service} stopped at {bound}={limit}", service=self.NAME, bound=bound, limit=limit)
        return ResourceExceeded(f"{bound} exceeded ({reached} > {limit})", report=report)

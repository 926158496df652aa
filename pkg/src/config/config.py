import sys

from logfire import loguru_handler, configure
from loguru import logger as loguru_logger
from pydantic import Field
from pydantic_settings import BaseSettings


class AppConfig(BaseSettings):
    APP_NAME: str = "Finite Definability Workbench"
    VERSION: str = "0.1.0"
    DEBUG: bool = Field(env="DEBUG", default=False)
    LOG_LEVEL: str = Field(env="LOG_LEVEL", default="WARNING")
    LOGFIRE_TOKEN: str | None = Field(env="LOGFIRE_TOKEN", default=None)
    LOGFIRE_APP_NAME: str = Field(env="LOGFIRE_APP_NAME", default="definability")
    JSON_SCHEMA_VERSION: str = "1.0"

    # search bounds
    MAX_PRODUCT_COORDS: int = Field(env="MAX_PRODUCT_COORDS", default=64)
    MAX_POLY_ARITY: int = Field(env="MAX_POLY_ARITY", default=3)
    ORACLE_DEPTH: int = Field(env="ORACLE_DEPTH", default=2)
    DEPTH_BUDGET: int = Field(env="DEPTH_BUDGET", default=12)
    MAX_TERM_ROWS: int = Field(env="MAX_TERM_ROWS", default=20000)
    MAX_SUBUNIVERSES: int = Field(env="MAX_SUBUNIVERSES", default=4096)
    MAX_CLOSURE_SIZE: int = Field(env="MAX_CLOSURE_SIZE", default=20000)
    MAX_PRODUCT_SIZE: int = Field(env="MAX_PRODUCT_SIZE", default=4096)
    MAX_EXISTENTIAL_VARIABLES: int = Field(env="MAX_EXISTENTIAL_VARIABLES", default=4)
    MAX_SELECTIONS: int = Field(env="MAX_SELECTIONS", default=4096)

    # congruence lattices
    LATTICE_MAX_UNIVERSE: int = Field(env="LATTICE_MAX_UNIVERSE", default=6)
    LATTICE_MAX_PRODUCT: int = Field(env="LATTICE_MAX_PRODUCT", default=36)

    MAX_INTERPOLATION_POINTS: int = Field(env="MAX_INTERPOLATION_POINTS", default=16)


settings = AppConfig()
send_to_logfire = bool(settings.LOGFIRE_TOKEN) and not settings.DEBUG and not "pytest" in sys.argv[0]
configure(
    send_to_logfire=send_to_logfire,
    token=settings.LOGFIRE_TOKEN if send_to_logfire else None,
    project_name=settings.LOGFIRE_APP_NAME,
    console=False,
)
loguru_logger.configure(
    handlers=[
        loguru_handler(),
        {"sink": sys.stderr, "level": "DEBUG" if settings.DEBUG else settings.LOG_LEVEL},
    ]
)

from enum import Enum

import pytest
from hypothesis import settings as hypothesis_settings

from src.config.config import AppConfig
from src.config.di import AppContainer
from src.modules.algebra.domain.builtin import bool2, demorgan_m, heyting3, stone3
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.algebra.domain.entity.structure import FiniteStructure

hypothesis_settings.register_profile("units", max_examples=50, deadline=None)
hypothesis_settings.load_profile("units")


class AnsiColorEnum(str, Enum):
    RED = "\033[31m"
    GREEN = "\033[32m"
    YELLOW = "\033[33m"
    MAGENTA = "\033[35m"
    RESET = "\033[0m"


class LogLevelEnum(str, Enum):
    SETUP = "[SETUP-PYTEST]"
    TEARDOWN = "[TEARDOWN-PYTEST]"
    SWEEP = "[SWEEP]"


class Printer:
    """
    Class to print messages with colors based on the log level.
    """

    @staticmethod
    def _printc(color: AnsiColorEnum, text: str, textt: str | None = None):
        print(f"\n{color.value}{text}{AnsiColorEnum.RESET.value} {textt or ''}")

    @classmethod
    def _printl(cls, level: LogLevelEnum, text: str):
        match level:
            case LogLevelEnum.SETUP:
                color = AnsiColorEnum.GREEN
            case LogLevelEnum.TEARDOWN:
                color = AnsiColorEnum.RED
            case LogLevelEnum.SWEEP:
                color = AnsiColorEnum.MAGENTA
            case _:
                color = AnsiColorEnum.YELLOW

        cls._printc(color, level.value, text)

    @classmethod
    def setup(cls, text: str):
        cls._printl(LogLevelEnum.SETUP, text)

    @classmethod
    def teardown(cls, text: str):
        cls._printl(LogLevelEnum.TEARDOWN, text)

    @classmethod
    def sweep(cls, text: str):
        """
        Print progress of a long acceptance sweep.

        e.g

        text: stone3 unary functions 27/27
        ->>
        [SWEEP] stone3 unary functions 27/27

        """
        cls._printl(LogLevelEnum.SWEEP, text)


@pytest.fixture(scope="session")
def container() -> AppContainer:
    Printer.setup("Building application container")
    return AppContainer()


@pytest.fixture(scope="session")
def app_settings() -> AppConfig:
    return AppConfig()


@pytest.fixture
def algebra_service(container):
    return container.algebra.service()


@pytest.fixture
def formula_service(container):
    return container.formulas.service()


@pytest.fixture
def subpower_service(container):
    return container.subpowers.service()


@pytest.fixture
def clone_service(container):
    return container.clone.service()


@pytest.fixture
def definability_service(container):
    return container.definability.service()


@pytest.fixture
def congruence_service(container):
    return container.congruences.service()


@pytest.fixture
def interpolation_service(container):
    return container.terminterp.service()


@pytest.fixture
def stone() -> FiniteStructure:
    return stone3()


@pytest.fixture
def heyting() -> FiniteStructure:
    return heyting3()


@pytest.fixture
def boolean() -> FiniteStructure:
    return bool2()


@pytest.fixture
def demorgan() -> FiniteStructure:
    return demorgan_m()


@pytest.fixture
def two_element_set() -> FiniteStructure:
    """Two elements, no operations: the smallest class without the Fraser-Horn property."""
    return FiniteStructure(name="set2", signature=Signature(), size=2, tables={}, elements=("0", "1"))


def unary(structure: FiniteStructure, name: str, values) -> FiniteStructure:
    """``structure`` expanded by a unary operation ``name`` given by its value list."""
    return structure.with_operation(name, 1, tuple(values))


def binary(structure: FiniteStructure, name: str, function) -> FiniteStructure:
    table = tuple(function(a, b) for a in structure.universe for b in structure.universe)
    return structure.with_operation(name, 2, table)

from dependency_injector import containers, providers

from src.modules.formulas.application.service.formula import FormulaService


class FormulasContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()

    service = providers.Factory(FormulaService)

from dependency_injector import containers, providers

from src.modules.congruences.application.service.congruences import CongruenceService


class CongruencesContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()
    api_config = providers.Dependency()
    subpowers_service = providers.Dependency()
    definability_service = providers.Dependency()
    formula_service = providers.Dependency()

    service = providers.Factory(
        CongruenceService,
        settings=api_config,
        subpowers=subpowers_service,
        definability=definability_service,
        formulas=formula_service,
    )

from dependency_injector import containers, providers

from src.modules.definability.application.service.definability import DefinabilityService


class DefinabilityContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()
    api_config = providers.Dependency()
    subpowers_service = providers.Dependency()
    clone_service = providers.Dependency()
    formula_service = providers.Dependency()

    service = providers.Factory(
        DefinabilityService,
        settings=api_config,
        subpowers=subpowers_service,
        clone=clone_service,
        formulas=formula_service,
    )

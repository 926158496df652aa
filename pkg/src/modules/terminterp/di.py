from dependency_injector import containers, providers

from src.modules.terminterp.application.service.interpolation import TermInterpolationService


class TermInterpContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()
    api_config = providers.Dependency()
    clone_service = providers.Dependency()
    definability_service = providers.Dependency()
    formula_service = providers.Dependency()

    service = providers.Factory(
        TermInterpolationService,
        settings=api_config,
        clone=clone_service,
        definability=definability_service,
        formulas=formula_service,
    )

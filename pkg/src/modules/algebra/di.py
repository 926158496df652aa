from dependency_injector import containers, providers

from src.modules.algebra.application.service.algebra import AlgebraService


class AlgebraContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()

    service = providers.Factory(AlgebraService)

from dependency_injector import containers, providers

from src.modules.clone.application.service.clone import CloneService


class CloneContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()
    api_config = providers.Dependency()

    service = providers.Factory(CloneService, settings=api_config)

from dependency_injector import containers, providers

from src.modules.subpowers.application.service.subpowers import SubpowerService


class SubpowersContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()
    api_config = providers.Dependency()

    service = providers.Factory(SubpowerService, settings=api_config)

from dependency_injector import containers, providers

from src.config.config import AppConfig
from src.modules.algebra.di import AlgebraContainer
from src.modules.clone.di import CloneContainer
from src.modules.congruences.di import CongruencesContainer
from src.modules.definability.di import DefinabilityContainer
from src.modules.formulas.di import FormulasContainer
from src.modules.subpowers.di import SubpowersContainer
from src.modules.terminterp.di import TermInterpContainer


class AppContainer(containers.DeclarativeContainer):
    container_config = providers.Configuration()
    raw_api_config = AppConfig()
    container_config.from_dict(raw_api_config.model_dump())

    api_config = providers.Singleton(AppConfig)

    ### ALGEBRA / FORMULAS ###
    algebra = providers.Container(AlgebraContainer, container_config=container_config)
    formulas = providers.Container(FormulasContainer, container_config=container_config)

    ### SUBPOWERS / CLONE ###
    subpowers = providers.Container(
        SubpowersContainer,
        container_config=container_config,
        api_config=api_config,
    )
    clone = providers.Container(
        CloneContainer,
        container_config=container_config,
        api_config=api_config,
    )

    ### DEFINABILITY ###
    definability = providers.Container(
        DefinabilityContainer,
        container_config=container_config,
        api_config=api_config,
        subpowers_service=subpowers.service,
        clone_service=clone.service,
        formula_service=formulas.service,
    )

    ### CONGRUENCES ###
    congruences = providers.Container(
        CongruencesContainer,
        container_config=container_config,
        api_config=api_config,
        subpowers_service=subpowers.service,
        definability_service=definability.service,
        formula_service=formulas.service,
    )

    ### TERM INTERPOLATION ###
    terminterp = providers.Container(
        TermInterpContainer,
        container_config=container_config,
        api_config=api_config,
        clone_service=clone.service,
        definability_service=definability.service,
        formula_service=formulas.service,
    )

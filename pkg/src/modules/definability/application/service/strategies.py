from abc import ABC, abstractmethod


class DefinabilityStrategy(ABC):
    @classmethod
    @abstractmethod
    def check(cls, service, query): ...


class OpenStrategy(DefinabilityStrategy):
    @classmethod
    def check(cls, service, query):
        return service.check_open(query)


class PositiveOpenStrategy(DefinabilityStrategy):
    @classmethod
    def check(cls, service, query):
        return service.check_positive_open(query)


class OpenHornStrategy(DefinabilityStrategy):
    @classmethod
    def check(cls, service, query):
        return service.check_open_horn(query)


class AtomicConjunctionStrategy(DefinabilityStrategy):
    @classmethod
    def check(cls, service, query):
        return service.check_atomic_conj(query)


class ExistentialStrategy(DefinabilityStrategy):
    @classmethod
    def check(cls, service, query):
        return service.check_existential(query)

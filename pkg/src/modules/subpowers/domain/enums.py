from enum import Enum


class MapKind(str, Enum):
    HOM = "hom"
    EMBEDDING = "emb"
    ISOMORPHISM = "iso"

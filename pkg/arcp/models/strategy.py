from dataclasses import dataclass
from typing import Callable, ClassVar

from arcp.config import Config

# Injectable byte generator: called with a byte count, returns that many bytes.
RandomSource = Callable[[int], bytes]


@dataclass(frozen=True)
class MintStrategy:
    label: ClassVar[str] = ''

    def to_dict(self):
        return {'strategy': self.label}


@dataclass(frozen=True)
class RandomUuid(MintStrategy):
    label: ClassVar[str] = 'uuid'


@dataclass(frozen=True)
class LocationUuid(MintStrategy):
    label: ClassVar[str] = 'location'
    url: str

    def to_dict(self):
        return {'strategy': self.label, 'url': self.url}


@dataclass(frozen=True)
class Hash(MintStrategy):
    label: ClassVar[str] = 'hash'
    alg_id: str = Config.HASH_ALG

    def to_dict(self):
        return {'strategy': self.label, 'alg_id': self.alg_id}


@dataclass(frozen=True)
class Name(MintStrategy):
    label: ClassVar[str] = 'name'
    name: str

    def to_dict(self):
        return {'strategy': self.label, 'name': self.name}


@dataclass(frozen=True)
class Auto(MintStrategy):
    """Prefer a declared identifier, else hash ZIP files and randomize directories"""
    label: ClassVar[str] = 'auto'


@dataclass(frozen=True)
class Declared(MintStrategy):
    """Base taken from the archive's own External-Identifier"""
    label: ClassVar[str] = 'declared'
    identifier: str

    def to_dict(self):
        return {'strategy': self.label, 'identifier': self.identifier}

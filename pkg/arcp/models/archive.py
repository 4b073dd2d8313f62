from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

from arcp.models.reference import EntryKey
from arcp.models.strategy import MintStrategy
from arcp.models.uri import ArcpUri

EXTERNAL_IDENTIFIER = 'External-Identifier'


@dataclass(frozen=True)
class BagInfo:
    """Labels from a BagIt bag-info.txt, in file order (labels may repeat)"""
    labels: Tuple[Tuple[str, str], ...] = ()

    def get_all(self, label):
        wanted = label.lower()
        return [value for name, value in self.labels if name.lower() == wanted]

    def get(self, label, default=None):
        values = self.get_all(label)
        return values[0] if values else default

    @property
    def external_identifier(self):
        return self.get(EXTERNAL_IDENTIFIER)

    def to_dict(self):
        return {
            'labels': [[name, value] for name, value in self.labels],
            'external_identifier': self.external_identifier
        }


@dataclass(frozen=True)
class Entry:
    key: EntryKey
    size: int
    uri: ArcpUri

    @property
    def is_directory(self):
        return self.key.is_directory

    def to_dict(self):
        return {
            'uri': str(self.uri),
            'size': self.size,
            'is_directory': self.is_directory
        }


@dataclass(frozen=True)
class ArchiveHandle:
    """Open archive bound to its base URI. Read-only once opened."""
    backend: object
    source: Path
    base: ArcpUri
    strategy_used: MintStrategy
    bag_info: Optional[BagInfo] = field(default=None, compare=False)

    @property
    def kind(self):
        return self.backend.kind

    def close(self):
        self.backend.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()

    def to_dict(self):
        return {
            'source': str(self.source),
            'backend': self.kind,
            'base': str(self.base),
            **self.strategy_used.to_dict()
        }

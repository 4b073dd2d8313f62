from dataclasses import dataclass
from typing import Optional, Tuple

from arcp.models.uri import ArcpUri


@dataclass(frozen=True)
class EntryKey:
    """Decoded location of an entry inside an archive.

    Segments never contain "/" or NUL and are never "." or "..";
    an empty key is the archive root.
    """
    segments: Tuple[str, ...] = ()
    is_directory: bool = True

    @property
    def is_root(self):
        return not self.segments

    @property
    def name(self):
        """Entry name with "/" separators, trailing "/" for directories"""
        joined = '/'.join(self.segments)
        if self.is_directory and joined:
            joined += '/'
        return joined

    def to_dict(self):
        return {
            'segments': list(self.segments),
            'is_directory': self.is_directory
        }


@dataclass(frozen=True)
class ResolvedReference:
    """Target of a resolved reference; uri is None for non-arcp targets"""
    text: str
    uri: Optional[ArcpUri] = None

    @property
    def is_arcp(self):
        return self.uri is not None

    def __str__(self):
        return self.text

    def to_dict(self):
        return {
            'uri': self.text,
            'is_arcp': self.is_arcp
        }

from arcp.models.archive import ArchiveHandle, BagInfo, Entry
from arcp.models.digest import FetchReport, FetchStatus, NiDigest
from arcp.models.reference import EntryKey, ResolvedReference
from arcp.models.strategy import (
    Auto, Declared, Hash, LocationUuid, MintStrategy, Name, RandomSource, RandomUuid
)
from arcp.models.uri import ArcpUri, Authority, NameAuthority, NiAuthority, UuidAuthority

__all__ = [
    'ArchiveHandle', 'BagInfo', 'Entry',
    'FetchReport', 'FetchStatus', 'NiDigest',
    'EntryKey', 'ResolvedReference',
    'Auto', 'Declared', 'Hash', 'LocationUuid', 'MintStrategy', 'Name', 'RandomSource', 'RandomUuid',
    'ArcpUri', 'Authority', 'NameAuthority', 'NiAuthority', 'UuidAuthority',
]

"""Archive and Package (arcp) URIs: mint, parse, resolve, and retrieve."""
from arcp.models import (
    ArcpUri, ArchiveHandle, Auto, BagInfo, Declared, Entry, EntryKey, FetchReport, FetchStatus,
    Hash, LocationUuid, Name, NameAuthority, NiAuthority, NiDigest, RandomUuid,
    ResolvedReference, UuidAuthority
)
from arcp.services import (
    ArchiveService, MintService, ResolutionService, UriService, WellKnownService
)
from arcp.utils.exceptions import (
    ArcpError, ArchiveError, MintError, ParseError, ResolutionError, WellKnownError
)

__version__ = '0.3.0'

parse = UriService.parse
serialize = UriService.serialize
normalize = UriService.normalize
is_arcp = UriService.is_arcp
uuid_of = UriService.uuid_of
hash_of = UriService.hash_of
name_of = UriService.name_of

mint = MintService.mint
mint_uuid_v4 = MintService.mint_uuid_v4
mint_from_location = MintService.mint_from_location
mint_from_bytes = MintService.mint_from_bytes
mint_from_digest = MintService.mint_from_digest
mint_from_name = MintService.mint_from_name

resolve_reference = ResolutionService.resolve_reference
to_entry_key = ResolutionService.to_entry_key
to_local_path = ResolutionService.to_local_path
from_entry_name = ResolutionService.from_entry_name

open_archive = ArchiveService.open_archive
list_entries = ArchiveService.list_entries
read_entry = ArchiveService.read_entry
parse_bag_info = ArchiveService.parse_bag_info
archive_digest = ArchiveService.archive_digest

to_ni_uri = WellKnownService.to_ni_uri
from_ni_uri = WellKnownService.from_ni_uri
well_known_url = WellKnownService.well_known_url
arcp_to_well_known = WellKnownService.arcp_to_well_known
fetch_and_verify = WellKnownService.fetch_and_verify

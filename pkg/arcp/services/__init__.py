from arcp.services.archive_service import ArchiveService
from arcp.services.mint_service import MintService
from arcp.services.resolution_service import ResolutionService
from arcp.services.uri_service import UriService
from arcp.services.wellknown_service import WellKnownService

__all__ = ['ArchiveService', 'MintService', 'ResolutionService', 'UriService', 'WellKnownService']

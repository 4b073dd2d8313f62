"""ni URIs, well-known retrieval URLs, and verified fetches from resolvers."""
import hmac
import logging
import os
import re
import tempfile
from pathlib import Path
from urllib.parse import urlsplit

import requests

from arcp.config import Config
from arcp.extensions import hash_registry, make_session
from arcp.models.digest import FetchReport, FetchStatus, NiDigest
from arcp.models.uri import NiAuthority
from arcp.utils.exceptions import WellKnownError, WellKnownErrorKind
from arcp.utils.helpers import b64url_decode, join_url

logger = logging.getLogger(__name__)

WELL_KNOWN_PREFIX = '.well-known/ni'
NI_URI_RE = re.compile(r'[Nn][Ii]://([^/?#]*)/([A-Za-z0-9-]+);([^?#]*)(\?[^#]*)?(#.*)?')
WELL_KNOWN_PATH_RE = re.compile(r'/\.well-known/ni/([A-Za-z0-9-]+)/([A-Za-z0-9_-]+)')


class WellKnownService:
    @staticmethod
    def to_ni_uri(digest):
        return digest.to_ni_uri()

    @staticmethod
    def from_ni_uri(text):
        """NiDigest from an ni URI; any authority and query are ignored"""
        match = NI_URI_RE.fullmatch(text or '')
        if not match:
            raise WellKnownError(WellKnownErrorKind.MALFORMED_NI_URI, f"Not an ni URI: {text!r}")
        alg_id, digest_text = match.group(2), match.group(3)
        try:
            return NiDigest(alg_id.lower(), b64url_decode(digest_text))
        except ValueError as e:
            raise WellKnownError(WellKnownErrorKind.MALFORMED_NI_URI, str(e)) from e

    @staticmethod
    def well_known_url(digest, resolver_base):
        """<resolver_base>/.well-known/ni/<alg>/<base64url digest>"""
        parts = urlsplit(resolver_base or '')
        if parts.scheme.lower() not in ('http', 'https') or not parts.netloc:
            raise WellKnownError(WellKnownErrorKind.BAD_RESOLVER_BASE,
                                 f"Resolver base must be an http(s) URL, got {resolver_base!r}")
        if parts.query or parts.fragment:
            raise WellKnownError(WellKnownErrorKind.BAD_RESOLVER_BASE,
                                 f"Resolver base must not carry a query or fragment: {resolver_base!r}")
        return join_url(resolver_base, WELL_KNOWN_PREFIX, digest.alg_id, digest.b64)

    @staticmethod
    def from_well_known_url(url):
        """NiDigest named by a well-known URL"""
        match = WELL_KNOWN_PATH_RE.search(urlsplit(url).path)
        if not match:
            raise WellKnownError(WellKnownErrorKind.MALFORMED_NI_URI, f"Not a well-known ni URL: {url!r}")
        try:
            return NiDigest(match.group(1).lower(), b64url_decode(match.group(2)))
        except ValueError as e:
            raise WellKnownError(WellKnownErrorKind.MALFORMED_NI_URI, str(e)) from e

    @staticmethod
    def digest_of_uri(uri):
        if not isinstance(uri.authority, NiAuthority):
            raise WellKnownError(WellKnownErrorKind.NOT_NI_AUTHORITY,
                                 f"{uri} is not hash-based (prefix {uri.authority.prefix!r})")
        return NiDigest(uri.authority.alg_id, uri.authority.digest)

    @staticmethod
    def arcp_to_well_known(uri, resolver_base):
        return WellKnownService.well_known_url(WellKnownService.digest_of_uri(uri), resolver_base)

    @staticmethod
    def fetch_and_verify(digest, resolver_base, destination, session=None, config_class=Config):
        """Download from the resolver's well-known path, keeping the file only if its digest matches"""
        algorithm = hash_registry.get(digest.alg_id)
        if algorithm is None:
            raise WellKnownError(WellKnownErrorKind.UNSUPPORTED_ALGORITHM,
                                 f"Cannot verify {digest.alg_id!r} digests")
        url = WellKnownService.well_known_url(digest, resolver_base)
        destination = Path(destination)
        own_session = session is None
        session = session or make_session(config_class)

        fd, part_name = tempfile.mkstemp(prefix=f".{destination.name}.", suffix='.part',
                                         dir=destination.parent)
        part = Path(part_name)
        hasher = algorithm.new()
        bytes_read = 0
        try:
            try:
                with os.fdopen(fd, 'wb') as out, session.get(
                        url, stream=True, timeout=config_class.HTTP_TIMEOUT) as response:
                    if response.history:
                        logger.debug(f"Followed {len(response.history)} redirects to {response.url}")
                    if response.status_code in (404, 410):
                        return FetchReport(url, FetchStatus.NOT_FOUND, detail=f"HTTP {response.status_code}")
                    if not response.ok:
                        return FetchReport(url, FetchStatus.TRANSPORT_ERROR,
                                           detail=f"HTTP {response.status_code}")
                    for chunk in response.iter_content(chunk_size=config_class.CHUNK_SIZE):
                        out.write(chunk)
                        hasher.update(chunk)
                        bytes_read += len(chunk)
            except requests.RequestException as e:
                logger.warning(f"Fetching {url} failed: {e}")
                return FetchReport(url, FetchStatus.TRANSPORT_ERROR, bytes_read, detail=str(e))

            computed = NiDigest(algorithm.alg_id, hasher.digest())
            if not hmac.compare_digest(computed.digest, digest.digest):
                logger.warning(f"Checksum mismatch for {url}: got {computed.b64}")
                return FetchReport(url, FetchStatus.CHECKSUM_MISMATCH, bytes_read, computed,
                                   detail=f"expected {digest.b64}")

            os.replace(part, destination)
            logger.info(f"Verified {bytes_read} bytes from {url} into {destination}")
            return FetchReport(url, FetchStatus.VERIFIED, bytes_read, computed, str(destination))
        finally:
            part.unlink(missing_ok=True)
            if own_session:
                session.close()

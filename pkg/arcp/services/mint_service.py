import io
import logging
import secrets
import uuid

from arcp.config import Config
from arcp.extensions import hash_registry
from arcp.models.digest import NiDigest
from arcp.models.strategy import Hash, LocationUuid, Name, RandomUuid
from arcp.models.uri import ArcpUri, NameAuthority, NiAuthority, UuidAuthority
from arcp.utils.exceptions import MintError, MintErrorKind
from arcp.utils.hashing import digest_stream
from arcp.utils.helpers import hex_decode
from arcp.utils.validators import validate_alg_id, validate_name

logger = logging.getLogger(__name__)


class MintService:
    @staticmethod
    def mint_uuid_v4(rng=secrets.token_bytes):
        """Root arcp URI for a fresh random UUIDv4"""
        try:
            raw = rng(16)
        except Exception as e:
            raise MintError(MintErrorKind.GENERATION, f"Random source failed: {e}") from e
        if raw is None or len(raw) < 16:
            raise MintError(MintErrorKind.GENERATION, "Random source yielded fewer than 16 bytes")
        # version= stamps the version nibble and the RFC 4122 variant bits
        return ArcpUri(UuidAuthority(uuid.UUID(bytes=bytes(raw[:16]), version=4)))

    @staticmethod
    def mint_from_location(url):
        """Root arcp URI for the UUIDv5 of a URL in the standard URL namespace"""
        if not isinstance(url, str) or not url:
            raise MintError(MintErrorKind.BAD_INPUT, "Location URL must be a non-empty string")
        return ArcpUri(UuidAuthority(uuid.uuid5(uuid.NAMESPACE_URL, url)))

    @staticmethod
    def digest_of(content, alg_id=Config.HASH_ALG, chunk_size=Config.CHUNK_SIZE):
        """Streaming digest of a binary stream (or bytes) as an NiDigest"""
        algorithm = hash_registry.get(alg_id)
        if algorithm is None:
            raise MintError(MintErrorKind.UNKNOWN_ALGORITHM, f"Hash algorithm {alg_id!r} is not registered")
        if isinstance(content, (bytes, bytearray, memoryview)):
            content = io.BytesIO(content)
        hasher = algorithm.new()
        try:
            size = digest_stream(hasher, content, chunk_size)
        except OSError as e:
            raise MintError(MintErrorKind.IO, f"Failed reading content: {e}") from e
        logger.debug(f"Digested {size} bytes with {algorithm.alg_id}")
        return NiDigest(algorithm.alg_id, hasher.digest())

    @staticmethod
    def mint_from_bytes(content, alg_id=Config.HASH_ALG):
        """Root arcp URI naming content by its hash"""
        digest = MintService.digest_of(content, alg_id)
        return ArcpUri(NiAuthority(digest.alg_id, digest.digest))

    @staticmethod
    def mint_from_digest(alg_id, digest_hex):
        """Root arcp URI for an already computed hex digest"""
        if not validate_alg_id(alg_id):
            raise MintError(MintErrorKind.BAD_INPUT, f"Invalid hash algorithm {alg_id!r}")
        try:
            digest = hex_decode(digest_hex)
        except ValueError as e:
            raise MintError(MintErrorKind.BAD_INPUT, str(e)) from e
        expected = hash_registry.digest_size(alg_id)
        if expected is not None and len(digest) != expected:
            raise MintError(MintErrorKind.BAD_INPUT,
                            f"{alg_id} digest must be {expected} bytes, got {len(digest)}")
        return ArcpUri(NiAuthority(alg_id.lower(), digest))

    @staticmethod
    def mint_from_name(name):
        """Root arcp URI for an application name"""
        if not validate_name(name):
            raise MintError(MintErrorKind.BAD_INPUT, f"Invalid application name {name!r}")
        return ArcpUri(NameAuthority(name.lower()))

    @staticmethod
    def mint(strategy, content=None, rng=secrets.token_bytes):
        """Mint a base URI for any strategy; Hash needs the content stream"""
        if isinstance(strategy, RandomUuid):
            return MintService.mint_uuid_v4(rng)
        if isinstance(strategy, LocationUuid):
            return MintService.mint_from_location(strategy.url)
        if isinstance(strategy, Name):
            return MintService.mint_from_name(strategy.name)
        if isinstance(strategy, Hash):
            if content is None:
                raise MintError(MintErrorKind.BAD_INPUT, "Hash strategy needs content to digest")
            return MintService.mint_from_bytes(content, strategy.alg_id)
        raise MintError(MintErrorKind.BAD_INPUT, f"Cannot mint with strategy {strategy!r}")

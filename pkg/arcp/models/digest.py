from dataclasses import dataclass
from enum import Enum
from typing import Optional

from arcp.utils.helpers import b64url_encode, hex_decode


@dataclass(frozen=True)
class NiDigest:
    alg_id: str
    digest: bytes

    @classmethod
    def from_hex(cls, alg_id, digest_hex):
        return cls(alg_id.lower(), hex_decode(digest_hex))

    @property
    def hex(self):
        return self.digest.hex()

    @property
    def b64(self):
        return b64url_encode(self.digest)

    def to_ni_uri(self):
        return f"ni:///{self.alg_id};{self.b64}"

    def to_dict(self):
        return {
            'alg_id': self.alg_id,
            'hex': self.hex,
            'base64url': self.b64,
            'ni': self.to_ni_uri()
        }


class FetchStatus(Enum):
    VERIFIED = 'Verified'
    CHECKSUM_MISMATCH = 'ChecksumMismatch'
    NOT_FOUND = 'NotFound'
    TRANSPORT_ERROR = 'TransportError'


@dataclass(frozen=True)
class FetchReport:
    url: str
    status: FetchStatus
    bytes_read: int = 0
    computed_digest: Optional[NiDigest] = None
    destination: Optional[str] = None
    detail: Optional[str] = None

    @property
    def verified(self):
        return self.status is FetchStatus.VERIFIED

    def to_dict(self):
        return {
            'url': self.url,
            'status': self.status.value,
            'bytes_read': self.bytes_read,
            'computed_digest': self.computed_digest.to_ni_uri() if self.computed_digest else None,
            'destination': self.destination,
            'detail': self.detail
        }

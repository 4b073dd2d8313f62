"""arcp identifier data model.

An arcp URI has the shape ``arcp://<prefix>,<namespace><path>[?query][#fragment]``
where the prefix selects how the namespace identifies an archive.
"""
from dataclasses import dataclass, replace
from typing import ClassVar, Optional
from uuid import UUID

from arcp.utils.helpers import b64url_encode

SCHEME = 'arcp'


@dataclass(frozen=True)
class Authority:
    prefix: ClassVar[str] = ''

    @property
    def namespace(self):
        raise NotImplementedError

    def __str__(self):
        return f"{self.prefix},{self.namespace}"

    def to_dict(self):
        return {
            'prefix': self.prefix,
            'namespace': self.namespace
        }


@dataclass(frozen=True)
class UuidAuthority(Authority):
    prefix: ClassVar[str] = 'uuid'
    uuid: UUID

    @property
    def namespace(self):
        return str(self.uuid)

    def to_dict(self):
        data = super().to_dict()
        data['uuid_version'] = self.uuid.version
        return data


@dataclass(frozen=True)
class NiAuthority(Authority):
    """Hash authority; digest bytes compare exactly (base64url is case-significant)"""
    prefix: ClassVar[str] = 'ni'
    alg_id: str
    digest: bytes

    @property
    def namespace(self):
        return f"{self.alg_id};{b64url_encode(self.digest)}"

    def to_dict(self):
        data = super().to_dict()
        data['alg_id'] = self.alg_id
        data['digest_hex'] = self.digest.hex()
        return data


@dataclass(frozen=True)
class NameAuthority(Authority):
    prefix: ClassVar[str] = 'name'
    name: str

    @property
    def namespace(self):
        return self.name


@dataclass(frozen=True)
class ArcpUri:
    authority: Authority
    path: str = '/'
    query: Optional[str] = None
    fragment: Optional[str] = None

    @property
    def is_root(self):
        return self.path == '/' and self.query is None and self.fragment is None

    def root(self):
        """Base URI of the archive this URI points into"""
        return ArcpUri(self.authority)

    def with_path(self, path, query=None, fragment=None):
        return replace(self, path=path, query=query, fragment=fragment)

    def without_fragment(self):
        return replace(self, fragment=None)

    def serialize(self):
        text = f"{SCHEME}://{self.authority}{self.path}"
        if self.query is not None:
            text += f"?{self.query}"
        if self.fragment is not None:
            text += f"#{self.fragment}"
        return text

    def __str__(self):
        return self.serialize()

    def to_dict(self):
        data = {'uri': self.serialize()}
        data.update(self.authority.to_dict())
        data['path'] = self.path
        data['query'] = self.query
        data['fragment'] = self.fragment
        return data

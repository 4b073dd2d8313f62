from enum import Enum


class ParseErrorKind(Enum):
    NOT_ARCP_SCHEME = 'NotArcpScheme'
    BAD_PREFIX = 'BadPrefix'
    BAD_UUID = 'BadUuid'
    BAD_NI_AUTHORITY = 'BadNiAuthority'
    BAD_NAME = 'BadName'
    BAD_PATH = 'BadPath'
    EMPTY = 'Empty'


class MintErrorKind(Enum):
    BAD_INPUT = 'BadInput'
    UNKNOWN_ALGORITHM = 'UnknownAlgorithm'
    GENERATION = 'Generation'
    IO = 'Io'


class ResolutionErrorKind(Enum):
    TRAVERSAL = 'Traversal'
    BAD_PERCENT_ESCAPE = 'BadPercentEscape'
    NOT_ARCP_BASE = 'NotArcpBase'
    ENCODED_SLASH = 'EncodedSlash'
    INVALID_SEGMENT = 'InvalidSegment'
    MALFORMED_REFERENCE = 'MalformedReference'


class ArchiveErrorKind(Enum):
    NOT_FOUND = 'NotFound'
    UNREADABLE = 'Unreadable'
    CORRUPT_ARCHIVE = 'CorruptArchive'
    AUTHORITY_MISMATCH = 'AuthorityMismatch'
    ENTRY_NOT_FOUND = 'EntryNotFound'
    IS_DIRECTORY = 'IsDirectory'
    UNSUPPORTED = 'Unsupported'
    DECLARED_IDENTIFIER = 'DeclaredIdentifier'
    BAD_BAG_INFO = 'BadBagInfo'
    INVALID_BAG = 'InvalidBag'


class WellKnownErrorKind(Enum):
    NOT_NI_AUTHORITY = 'NotNiAuthority'
    MALFORMED_NI_URI = 'MalformedNiUri'
    BAD_RESOLVER_BASE = 'BadResolverBase'
    UNSUPPORTED_ALGORITHM = 'UnsupportedAlgorithm'


class ArcpError(Exception):
    """Base class for every error raised by the arcp toolkit"""

    def __init__(self, kind, detail):
        super().__init__(f"{kind.value}: {detail}")
        self.kind = kind
        self.detail = detail

    def to_dict(self):
        return {
            'error': self.kind.value,
            'detail': self.detail
        }


class ParseError(ArcpError):
    """Raised when a string is not a valid arcp URI"""

    def __init__(self, kind, detail, offset=0):
        super().__init__(kind, detail)
        self.offset = offset

    def to_dict(self):
        record = super().to_dict()
        record['offset'] = self.offset
        return record


class MintError(ArcpError):
    pass


class ResolutionError(ArcpError):
    pass


class ArchiveError(ArcpError):
    pass


class WellKnownError(ArcpError):
    pass

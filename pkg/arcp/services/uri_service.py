import re
from uuid import UUID

from arcp.extensions import hash_registry
from arcp.models.uri import ArcpUri, NameAuthority, NiAuthority, UuidAuthority, SCHEME
from arcp.utils.exceptions import ParseError, ParseErrorKind
from arcp.utils.helpers import b64url_decode
from arcp.utils.validators import validate_alg_id, validate_name, validate_uuid_text

SCHEME_RE = re.compile(r'[A-Za-z][A-Za-z0-9+.\-]*(?=:)')
AUTHORITY_END_RE = re.compile(r'[/?#]')
# First character that may not appear unescaped, or a broken percent-escape.
BAD_PATH_CHAR_RE = re.compile(r"[^A-Za-z0-9\-._~!$&'()*+,;=:@/%]|%(?![0-9A-Fa-f]{2})")
BAD_QUERY_CHAR_RE = re.compile(r"[^A-Za-z0-9\-._~!$&'()*+,;=:@/?%]|%(?![0-9A-Fa-f]{2})")


def _byte_offset(text, index):
    return len(text[:index].encode('utf-8', 'surrogatepass'))


def _fail(kind, detail, text, index):
    return ParseError(kind, detail, _byte_offset(text, index))


class UriService:
    @staticmethod
    def parse(value):
        """Parse arcp URI text (str or UTF-8 bytes) into an ArcpUri"""
        if value is None or len(value) == 0:
            raise ParseError(ParseErrorKind.EMPTY, "Empty input", 0)
        if isinstance(value, (bytes, bytearray)):
            raw = bytes(value)
            try:
                text = raw.decode('utf-8')
            except UnicodeDecodeError as e:
                if raw[:5].lower() != b'arcp:':
                    raise ParseError(ParseErrorKind.NOT_ARCP_SCHEME, "Input is not an arcp URI", 0) from e
                raise ParseError(ParseErrorKind.BAD_PATH, "Input is not valid UTF-8", e.start) from e
        else:
            text = str(value)

        scheme = SCHEME_RE.match(text)
        if not scheme or scheme.group().lower() != SCHEME:
            raise _fail(ParseErrorKind.NOT_ARCP_SCHEME, "URI scheme is not arcp", text, 0)

        start = scheme.end() + 1
        if not text.startswith('//', start):
            raise _fail(ParseErrorKind.BAD_PREFIX, "Missing //prefix,namespace authority", text, start)
        start += 2

        end_match = AUTHORITY_END_RE.search(text, start)
        end = end_match.start() if end_match else len(text)
        authority = UriService._parse_authority(text, start, end)

        fragment = None
        hash_pos = text.find('#', end)
        if hash_pos >= 0:
            fragment = text[hash_pos + 1:]
            UriService._check_chars(BAD_QUERY_CHAR_RE, text, hash_pos + 1, len(text), 'fragment')
            body_end = hash_pos
        else:
            body_end = len(text)

        query = None
        query_pos = text.find('?', end, body_end)
        if query_pos >= 0:
            query = text[query_pos + 1:body_end]
            UriService._check_chars(BAD_QUERY_CHAR_RE, text, query_pos + 1, body_end, 'query')
            path_end = query_pos
        else:
            path_end = body_end

        UriService._check_chars(BAD_PATH_CHAR_RE, text, end, path_end, 'path')
        path = text[end:path_end] or '/'

        return ArcpUri(authority, path, query, fragment)

    @staticmethod
    def _parse_authority(text, start, end):
        authority = text[start:end]
        comma = authority.find(',')
        if comma < 0:
            raise _fail(ParseErrorKind.BAD_PREFIX, "Authority lacks a prefix label", text, start)

        prefix = authority[:comma].lower()
        namespace = authority[comma + 1:]
        ns_start = start + comma + 1

        if prefix == UuidAuthority.prefix:
            if not validate_uuid_text(namespace):
                raise _fail(ParseErrorKind.BAD_UUID, f"Invalid UUID {namespace!r}", text, ns_start)
            return UuidAuthority(UUID(namespace))

        if prefix == NiAuthority.prefix:
            alg_id, sep, digest_text = namespace.partition(';')
            if not sep or not validate_alg_id(alg_id):
                raise _fail(ParseErrorKind.BAD_NI_AUTHORITY, f"Expected <alg>;<digest>, got {namespace!r}",
                            text, ns_start)
            try:
                digest = b64url_decode(digest_text)
            except ValueError as e:
                raise _fail(ParseErrorKind.BAD_NI_AUTHORITY, str(e), text, ns_start + len(alg_id) + 1) from e
            alg_id = alg_id.lower()
            expected = hash_registry.digest_size(alg_id)
            if expected is not None and len(digest) != expected:
                raise _fail(ParseErrorKind.BAD_NI_AUTHORITY,
                            f"{alg_id} digest must be {expected} bytes, got {len(digest)}",
                            text, ns_start + len(alg_id) + 1)
            return NiAuthority(alg_id, digest)

        if prefix == NameAuthority.prefix:
            if not validate_name(namespace):
                raise _fail(ParseErrorKind.BAD_NAME, f"Invalid name {namespace!r}", text, ns_start)
            return NameAuthority(namespace.lower())

        raise _fail(ParseErrorKind.BAD_PREFIX, f"Unknown prefix {prefix!r}", text, start)

    @staticmethod
    def _check_chars(pattern, text, start, stop, component):
        bad = pattern.search(text, start, stop)
        if bad:
            raise _fail(ParseErrorKind.BAD_PATH,
                        f"Illegal character {text[bad.start()]!r} in {component}", text, bad.start())

    @staticmethod
    def serialize(uri):
        return uri.serialize()

    @staticmethod
    def normalize(value):
        return UriService.parse(value).serialize()

    @staticmethod
    def is_arcp(value):
        try:
            UriService.parse(value)
        except ParseError:
            return False
        return True

    @staticmethod
    def uuid_of(uri):
        return uri.authority.uuid if isinstance(uri.authority, UuidAuthority) else None

    @staticmethod
    def hash_of(uri):
        if isinstance(uri.authority, NiAuthority):
            return uri.authority.alg_id, uri.authority.digest
        return None

    @staticmethod
    def name_of(uri):
        return uri.authority.name if isinstance(uri.authority, NameAuthority) else None

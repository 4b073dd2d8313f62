"""Relative reference resolution and arcp path to archive entry mapping."""
import logging
import os
import re
from pathlib import Path

from arcp.models.reference import EntryKey, ResolvedReference
from arcp.models.uri import SCHEME
from arcp.services.uri_service import UriService
from arcp.utils.exceptions import ParseError, ResolutionError, ResolutionErrorKind
from arcp.utils.helpers import decode_segment, encode_segment

logger = logging.getLogger(__name__)

# Splits any URI reference into scheme, authority, path, query, fragment.
URI_REFERENCE_RE = re.compile(r'^(?:([^:/?#]+):)?(?://([^/?#]*))?([^?#]*)(?:\?([^#]*))?(?:#(.*))?$', re.DOTALL)
ENCODED_SLASH_RE = re.compile(r'%2[Ff]')


def remove_dot_segments(path):
    """Dot-segment removal exactly as the generic URI syntax defines it"""
    output = []
    while path:
        if path.startswith('../'):
            path = path[3:]
        elif path.startswith('./'):
            path = path[2:]
        elif path.startswith('/./'):
            path = path[2:]
        elif path == '/.':
            path = '/'
        elif path.startswith('/../'):
            path = path[3:]
            if output:
                output.pop()
        elif path == '/..':
            path = '/'
            if output:
                output.pop()
        elif path in ('.', '..'):
            path = ''
        else:
            start = 1 if path.startswith('/') else 0
            slash = path.find('/', start)
            if slash < 0:
                slash = len(path)
            output.append(path[:slash])
            path = path[slash:]
    return ''.join(output)


def _merge(base_path, ref_path):
    return base_path[:base_path.rfind('/') + 1] + ref_path


def _compose(scheme, authority, path, query, fragment):
    text = f"{scheme}:"
    if authority is not None:
        text += f"//{authority}"
    text += path
    if query is not None:
        text += f"?{query}"
    if fragment is not None:
        text += f"#{fragment}"
    return text


class ResolutionService:
    @staticmethod
    def resolve_reference(base, reference):
        """Resolve a URI reference against an arcp base URI"""
        match = URI_REFERENCE_RE.match(reference)
        scheme, authority, path, query, fragment = match.groups()

        if scheme is not None:
            if scheme.lower() != SCHEME:
                return ResolvedReference(reference)
            target = _compose(SCHEME, authority, remove_dot_segments(path), query, fragment)
        elif authority is not None:
            target = _compose(SCHEME, authority, remove_dot_segments(path), query, fragment)
        else:
            base_authority = str(base.authority)
            if path == '':
                target_path = base.path
                target_query = query if query is not None else base.query
            else:
                if path.startswith('/'):
                    target_path = remove_dot_segments(path)
                else:
                    target_path = remove_dot_segments(_merge(base.path, path))
                target_query = query
            target = _compose(SCHEME, base_authority, target_path, target_query, fragment)

        try:
            uri = UriService.parse(target)
        except ParseError as e:
            raise ResolutionError(ResolutionErrorKind.MALFORMED_REFERENCE,
                                  f"Reference {reference!r} does not resolve to a valid arcp URI: {e.detail}") from e
        return ResolvedReference(uri.serialize(), uri)

    @staticmethod
    def to_entry_key(uri):
        """Decoded entry key for an arcp URI path, refusing to climb above the root"""
        raw_segments = uri.path[1:].split('/')
        is_directory = uri.path.endswith('/') or raw_segments[-1] in ('.', '..')
        if raw_segments[-1] == '':
            raw_segments.pop()

        stack = []
        for raw in raw_segments:
            if raw == '..':
                if not stack:
                    raise ResolutionError(ResolutionErrorKind.TRAVERSAL, f"Path {uri.path!r} escapes the archive root")
                stack.pop()
            elif raw == '.':
                continue
            elif raw == '':
                raise ResolutionError(ResolutionErrorKind.INVALID_SEGMENT, f"Empty segment in path {uri.path!r}")
            else:
                stack.append(raw)

        segments = []
        for raw in stack:
            if ENCODED_SLASH_RE.search(raw):
                raise ResolutionError(ResolutionErrorKind.ENCODED_SLASH, f"Encoded slash in segment {raw!r}")
            try:
                segment = decode_segment(raw)
            except (ValueError, UnicodeDecodeError) as e:
                raise ResolutionError(ResolutionErrorKind.BAD_PERCENT_ESCAPE, str(e)) from e
            if segment in ('.', '..'):
                raise ResolutionError(ResolutionErrorKind.TRAVERSAL, f"Encoded dot segment {raw!r}")
            if '\x00' in segment:
                raise ResolutionError(ResolutionErrorKind.INVALID_SEGMENT, f"NUL in segment {raw!r}")
            segments.append(segment)

        return EntryKey(tuple(segments), is_directory or not segments)

    @staticmethod
    def to_local_path(key, extraction_root):
        """Filesystem path for an entry key, guaranteed to stay under extraction_root"""
        root = Path(extraction_root)
        separators = {sep for sep in (os.sep, os.altsep) if sep}
        for segment in key.segments:
            if segment in ('', '.', '..') or '\x00' in segment or separators & set(segment):
                raise ResolutionError(ResolutionErrorKind.INVALID_SEGMENT,
                                      f"Segment {segment!r} is not a valid file name here")

        candidate = root.joinpath(*key.segments)
        real_root = root.resolve()
        real_candidate = candidate.resolve()
        if real_candidate != real_root and real_root not in real_candidate.parents:
            logger.warning(f"Refusing path {candidate} resolving outside {real_root}")
            raise ResolutionError(ResolutionErrorKind.TRAVERSAL,
                                  f"{candidate} resolves to {real_candidate}, outside {real_root}")
        return candidate

    @staticmethod
    def from_entry_name(base, entry_name, is_directory=False):
        """Absolute arcp URI for an archive entry name with "/" separators"""
        if base.path != '/':
            raise ResolutionError(ResolutionErrorKind.NOT_ARCP_BASE, f"Base {base} is not an archive root")
        if '\x00' in entry_name:
            raise ResolutionError(ResolutionErrorKind.INVALID_SEGMENT, f"NUL in entry name {entry_name!r}")

        if entry_name.endswith('/'):
            is_directory = True
            entry_name = entry_name[:-1]
        if not entry_name:
            return base.with_path('/')

        encoded = []
        for segment in entry_name.split('/'):
            if segment == '':
                raise ResolutionError(ResolutionErrorKind.INVALID_SEGMENT, f"Empty segment in {entry_name!r}")
            if segment in ('.', '..'):
                raise ResolutionError(ResolutionErrorKind.TRAVERSAL, f"Dot segment in {entry_name!r}")
            encoded.append(encode_segment(segment))

        path = '/' + '/'.join(encoded)
        if is_directory:
            path += '/'
        return base.with_path(path)

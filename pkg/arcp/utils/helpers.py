import base64
import binascii
import re
from urllib.parse import quote, unquote

B64URL_RE = re.compile(r'[A-Za-z0-9_-]+')
PERCENT_ESCAPE_RE = re.compile(r'%(?![0-9A-Fa-f]{2})')
HEX_RE = re.compile(r'(?:[0-9A-Fa-f]{2})+')

# Characters left alone when encoding a path segment: unreserved (always
# kept by quote) plus sub-delims and ":@".
SEGMENT_SAFE = "!$&'()*+,;=:@"


def b64url_encode(data):
    """Unpadded base64url text for raw bytes"""
    return base64.urlsafe_b64encode(data).decode('ascii').rstrip('=')


def b64url_decode(text):
    """Decode unpadded base64url, accepting only the canonical encoding.

    Raises ValueError for padding, foreign characters, impossible lengths
    or non-zero trailing bits.
    """
    if not text or not B64URL_RE.fullmatch(text) or len(text) % 4 == 1:
        raise ValueError(f"Not unpadded base64url: {text!r}")
    try:
        data = base64.urlsafe_b64decode(text + '=' * (-len(text) % 4))
    except binascii.Error as e:
        raise ValueError(str(e)) from e
    if b64url_encode(data) != text:
        raise ValueError(f"Non-canonical base64url: {text!r}")
    return data


def hex_decode(text):
    """Bytes for an even-length hex string (either case)"""
    if not HEX_RE.fullmatch(text or ''):
        raise ValueError(f"Malformed hex digest: {text!r}")
    return bytes.fromhex(text)


def encode_segment(segment):
    """Percent-encode one path segment, uppercase hex escapes"""
    return quote(segment, safe=SEGMENT_SAFE, encoding='utf-8', errors='strict')


def decode_segment(segment):
    """Percent-decode one path segment.

    Raises ValueError on truncated or non-hex escapes and on escapes that
    do not decode to UTF-8.
    """
    if PERCENT_ESCAPE_RE.search(segment):
        raise ValueError(f"Bad percent-escape in {segment!r}")
    return unquote(segment, encoding='utf-8', errors='strict')


def join_url(base, *parts):
    """Join URL parts with exactly one slash at each joint"""
    url = base.rstrip('/')
    for part in parts:
        url = f"{url}/{part.strip('/')}"
    return url

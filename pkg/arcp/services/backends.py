"""Archive backends. Each backend exposes member names with "/" separators."""
import io
import logging
import re
import zipfile
import zlib
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

from arcp.services.resolution_service import ResolutionService
from arcp.utils.exceptions import ArchiveError, ArchiveErrorKind

logger = logging.getLogger(__name__)

ZIP_MAGIC = (b'PK\x03\x04', b'PK\x05\x06', b'PK\x07\x08')
BAG_INFO = 'bag-info.txt'
DRIVE_RE = re.compile(r'[A-Za-z]:')
# Raised by zipfile for damaged, truncated or encrypted member data.
ZIP_DATA_ERRORS = (zipfile.BadZipFile, zlib.error, EOFError, RuntimeError, NotImplementedError)


@dataclass(frozen=True)
class Member:
    name: str
    size: int
    is_directory: bool


def unsafe_member_reason(name):
    """Why an archive member name cannot be mapped safely, or None"""
    if '\x00' in name:
        return 'NUL byte'
    if '\\' in name:
        return 'backslash separator'
    if name.startswith('/'):
        return 'absolute name'
    if DRIVE_RE.match(name):
        return 'drive letter'
    for segment in name.rstrip('/').split('/'):
        if segment in ('', '.', '..'):
            return f"segment {segment!r}"
    return None


def is_zip_file(path):
    with open(path, 'rb') as f:
        return f.read(4) in ZIP_MAGIC


class ZipEntryStream(io.RawIOBase):
    """Read-only member stream; damaged member data surfaces as CorruptArchive"""

    def __init__(self, stream, name):
        super().__init__()
        self._stream = stream
        self.name = name

    def readable(self):
        return True

    def read(self, size=-1):
        try:
            return self._stream.read(size)
        except ZIP_DATA_ERRORS as e:
            raise ArchiveError(ArchiveErrorKind.CORRUPT_ARCHIVE, f"{self.name}: {e}") from e

    def readinto(self, buffer):
        data = self.read(len(buffer))
        buffer[:len(data)] = data
        return len(data)

    def readall(self):
        return self.read(-1)

    def close(self):
        if not self.closed:
            self._stream.close()
        super().close()


class ArchiveBackend(ABC):
    kind = ''

    def __init__(self, source):
        self.source = Path(source)

    @abstractmethod
    def members(self):
        """Members in any order"""

    @abstractmethod
    def open(self, key):
        """Binary stream for a file entry key"""

    @abstractmethod
    def read_bag_info(self):
        """Raw bag-info.txt bytes, or None when the archive is not a bag"""

    def close(self):
        pass


class ZipBackend(ArchiveBackend):
    kind = 'zip'

    def __init__(self, source):
        super().__init__(source)
        try:
            self._zip = zipfile.ZipFile(self.source)
        except zipfile.BadZipFile as e:
            raise ArchiveError(ArchiveErrorKind.CORRUPT_ARCHIVE, f"{self.source}: {e}") from e
        except OSError as e:
            raise ArchiveError(ArchiveErrorKind.UNREADABLE, f"{self.source}: {e}") from e

        self._entries = {}
        self._dirs = set()
        for info in self._zip.infolist():
            reason = unsafe_member_reason(info.filename)
            if reason:
                logger.warning(f"Rejecting ZIP entry {info.filename!r} in {self.source}: {reason}")
                continue
            name = info.filename.rstrip('/')
            if name in self._entries:
                logger.warning(f"Duplicate ZIP entry {name!r} in {self.source}; last occurrence wins")
            self._entries[name] = info
            parts = name.split('/')
            for depth in range(1, len(parts)):
                self._dirs.add('/'.join(parts[:depth]))
            if info.is_dir():
                self._dirs.add(name)

    def members(self):
        return [
            Member(name, 0 if info.is_dir() else info.file_size, info.is_dir())
            for name, info in self._entries.items()
        ]

    def open(self, key):
        name = '/'.join(key.segments)
        info = self._entries.get(name)
        # an explicit file member wins over a directory implied by deeper names
        if info is not None and not info.is_dir() and not key.is_directory:
            try:
                return ZipEntryStream(self._zip.open(info), name)
            except ZIP_DATA_ERRORS as e:
                raise ArchiveError(ArchiveErrorKind.CORRUPT_ARCHIVE, f"{name}: {e}") from e
        if key.is_root or name in self._dirs:
            raise ArchiveError(ArchiveErrorKind.IS_DIRECTORY, f"{key.name or '/'} is a directory")
        raise ArchiveError(ArchiveErrorKind.ENTRY_NOT_FOUND, f"No entry {key.name!r} in {self.source}")

    def read_bag_info(self):
        candidates = [BAG_INFO]
        tops = {name.split('/', 1)[0] for name in self._entries}
        if len(tops) == 1:
            (top,) = tops
            if top in self._dirs:
                candidates.append(f"{top}/{BAG_INFO}")
        for name in candidates:
            info = self._entries.get(name)
            if info is not None and not info.is_dir():
                try:
                    return self._zip.read(info)
                except ZIP_DATA_ERRORS as e:
                    raise ArchiveError(ArchiveErrorKind.CORRUPT_ARCHIVE, f"{name}: {e}") from e
        return None

    def close(self):
        self._zip.close()


class DirectoryBackend(ArchiveBackend):
    kind = 'directory'

    def __init__(self, source):
        super().__init__(source)
        if not self.source.is_dir():
            raise ArchiveError(ArchiveErrorKind.UNREADABLE, f"{self.source} is not a readable directory")
        self._root = self.source.resolve()

    def members(self):
        members = []
        pending = [self.source]
        while pending:
            directory = pending.pop()
            try:
                children = sorted(directory.iterdir())
            except OSError as e:
                raise ArchiveError(ArchiveErrorKind.UNREADABLE, f"{directory}: {e}") from e
            for child in children:
                real = child.resolve()
                if real != self._root and self._root not in real.parents:
                    logger.warning(f"Skipping {child}: resolves outside {self._root}")
                    continue
                name = child.relative_to(self.source).as_posix()
                if child.is_dir():
                    members.append(Member(name, 0, True))
                    if not child.is_symlink():
                        pending.append(child)
                elif child.is_file():
                    members.append(Member(name, child.stat().st_size, False))
        return members

    def open(self, key):
        path = ResolutionService.to_local_path(key, self.source)
        if path.is_dir():
            raise ArchiveError(ArchiveErrorKind.IS_DIRECTORY, f"{key.name or '/'} is a directory")
        if key.is_directory or not path.is_file():
            raise ArchiveError(ArchiveErrorKind.ENTRY_NOT_FOUND, f"No entry {key.name!r} in {self.source}")
        return open(path, 'rb')

    def read_bag_info(self):
        path = self.source / BAG_INFO
        return path.read_bytes() if path.is_file() else None


def open_backend(source):
    """Pick a backend by content: directory tree or ZIP magic bytes"""
    source = Path(source)
    if not source.exists():
        raise ArchiveError(ArchiveErrorKind.NOT_FOUND, f"{source} does not exist")
    if source.is_dir():
        return DirectoryBackend(source)
    try:
        if is_zip_file(source):
            return ZipBackend(source)
    except OSError as e:
        raise ArchiveError(ArchiveErrorKind.UNREADABLE, f"{source}: {e}") from e
    raise ArchiveError(ArchiveErrorKind.UNSUPPORTED, f"{source} is neither a directory nor a ZIP file")

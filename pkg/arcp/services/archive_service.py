import logging
import os
import re
import secrets
import shutil
import tempfile
from pathlib import Path

import bagit

from arcp.config import Config
from arcp.models.archive import ArchiveHandle, BagInfo, Entry
from arcp.models.strategy import Auto, Declared, Hash, RandomUuid
from arcp.services.backends import open_backend
from arcp.services.mint_service import MintService
from arcp.services.resolution_service import ResolutionService
from arcp.services.uri_service import UriService
from arcp.utils.exceptions import (
    ArchiveError, ArchiveErrorKind, ParseError, ResolutionError
)

logger = logging.getLogger(__name__)

LINE_BREAK_RE = re.compile(r'\r\n|\r|\n')


class ArchiveService:
    @staticmethod
    def open_archive(path, strategy=Auto(), rng=secrets.token_bytes):
        """Open a ZIP file or directory and bind it to an arcp base URI"""
        source = Path(path)
        backend = open_backend(source)
        try:
            bag_info = ArchiveService._load_bag_info(backend, strict=isinstance(strategy, Auto))
            base, used = ArchiveService._choose_base(backend, strategy, bag_info, rng)
        except Exception:
            backend.close()
            raise

        logger.info(f"Opened {backend.kind} archive {source} as {base} ({used.label})")
        return ArchiveHandle(backend, source, base, used, bag_info)

    @staticmethod
    def _load_bag_info(backend, strict):
        raw = backend.read_bag_info()
        if raw is None:
            return None
        try:
            return ArchiveService.parse_bag_info(raw)
        except ArchiveError as e:
            if strict:
                raise
            logger.warning(f"Ignoring unreadable bag-info.txt in {backend.source}: {e.detail}")
            return None

    @staticmethod
    def _choose_base(backend, strategy, bag_info, rng):
        if isinstance(strategy, Auto):
            base = ArchiveService.declared_base(bag_info)
            if base is not None:
                return base, Declared(bag_info.external_identifier)
            strategy = Hash() if backend.kind == 'zip' else RandomUuid()

        if isinstance(strategy, Hash):
            if backend.kind != 'zip':
                raise ArchiveError(ArchiveErrorKind.UNSUPPORTED,
                                   f"{backend.source} is a directory; only archive files can be hashed")
            with open(backend.source, 'rb') as f:
                return MintService.mint_from_bytes(f, strategy.alg_id), strategy
        return MintService.mint(strategy, rng=rng), strategy

    @staticmethod
    def declared_base(bag_info):
        """arcp base self-declared by External-Identifier, or None.

        Identifiers in other schemes (urn:uuid: and the like) are reported
        but never adopted: a base must be hierarchical.
        """
        declared = bag_info.external_identifier if bag_info else None
        if not declared:
            return None
        if declared[:5].lower() != 'arcp:':
            logger.warning(f"External-Identifier {declared!r} is not an arcp URI; not adopted as base")
            return None
        return ArchiveService._declared_base(declared)

    @staticmethod
    def read_bag_info(path):
        """BagInfo of a bag directory or zipped bag, None when it has no bag-info.txt"""
        backend = open_backend(path)
        try:
            return ArchiveService._load_bag_info(backend, strict=True)
        finally:
            backend.close()

    @staticmethod
    def _declared_base(declared):
        try:
            base = UriService.parse(declared)
        except ParseError as e:
            raise ArchiveError(ArchiveErrorKind.DECLARED_IDENTIFIER,
                               f"External-Identifier {declared!r} is not a valid arcp URI: {e.detail}") from e
        if not base.is_root:
            raise ArchiveError(ArchiveErrorKind.DECLARED_IDENTIFIER,
                               f"External-Identifier {declared!r} must name the archive root")
        return base

    @staticmethod
    def list_entries(handle):
        """Entries with absolute arcp URIs, ordered by key segments"""
        entries = []
        for member in handle.backend.members():
            try:
                uri = ResolutionService.from_entry_name(handle.base, member.name, member.is_directory)
                key = ResolutionService.to_entry_key(uri)
            except ResolutionError as e:
                logger.warning(f"Skipping entry {member.name!r}: {e.detail}")
                continue
            entries.append(Entry(key, member.size, uri))
        entries.sort(key=lambda entry: entry.key.segments)
        return entries

    @staticmethod
    def read_entry(handle, uri):
        """Binary stream of one file entry; the caller closes it"""
        if isinstance(uri, str):
            uri = UriService.parse(uri)
        if uri.authority != handle.base.authority:
            raise ArchiveError(ArchiveErrorKind.AUTHORITY_MISMATCH,
                               f"{uri} does not belong to archive {handle.base}")
        key = ResolutionService.to_entry_key(uri)
        return handle.backend.open(key)

    @staticmethod
    def parse_bag_info(text):
        """Parse bag-info.txt; indented lines continue the previous value"""
        if isinstance(text, (bytes, bytearray)):
            try:
                text = bytes(text).decode('utf-8-sig')
            except UnicodeDecodeError as e:
                raise ArchiveError(ArchiveErrorKind.BAD_BAG_INFO, f"bag-info.txt is not UTF-8: {e}") from e

        labels = []
        for lineno, line in enumerate(LINE_BREAK_RE.split(text), 1):
            if not line.strip():
                continue
            if line[0] in ' \t':
                if not labels:
                    raise ArchiveError(ArchiveErrorKind.BAD_BAG_INFO,
                                       f"Line {lineno}: continuation before any label")
                label, value = labels[-1]
                continued = line.strip()
                labels[-1] = (label, f"{value} {continued}" if value else continued)
                continue
            label, sep, value = line.partition(':')
            if not sep or not label.strip():
                raise ArchiveError(ArchiveErrorKind.BAD_BAG_INFO, f"Line {lineno}: expected 'Label: value'")
            labels.append((label.strip(), value.strip()))
        return BagInfo(tuple(labels))

    @staticmethod
    def archive_digest(handle, alg_id=Config.HASH_ALG):
        """Digest of the archive file bytes, as used by hash minting"""
        if handle.kind != 'zip':
            raise ArchiveError(ArchiveErrorKind.UNSUPPORTED,
                               f"{handle.source} has no canonical byte stream to digest")
        with open(handle.source, 'rb') as f:
            return MintService.digest_of(f, alg_id)

    @staticmethod
    def extract(handle, extraction_root):
        """Extract every entry under extraction_root; returns written file paths"""
        root = Path(extraction_root)
        root.mkdir(parents=True, exist_ok=True)
        written = []
        for entry in ArchiveService.list_entries(handle):
            target = ResolutionService.to_local_path(entry.key, root)
            if entry.is_directory:
                target.mkdir(parents=True, exist_ok=True)
                continue
            target.parent.mkdir(parents=True, exist_ok=True)
            # parents may have been created above; check again before writing
            target = ResolutionService.to_local_path(entry.key, root)
            ArchiveService._write_entry(handle, entry, target)
            written.append(target)
        logger.info(f"Extracted {len(written)} files from {handle.source} to {root}")
        return written

    @staticmethod
    def _write_entry(handle, entry, target):
        """Copy one entry next to target, then move it into place; nothing partial is left behind"""
        fd, part_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix='.part', dir=target.parent)
        try:
            with os.fdopen(fd, 'wb') as dst, ArchiveService.read_entry(handle, entry.uri) as src:
                shutil.copyfileobj(src, dst, Config.CHUNK_SIZE)
            os.replace(part_name, target)
        except BaseException:
            Path(part_name).unlink(missing_ok=True)
            raise

    @staticmethod
    def validate_bag(path, fast=False):
        """Full BagIt validation of a bag directory; returns its BagInfo"""
        source = Path(path)
        if not source.is_dir():
            raise ArchiveError(ArchiveErrorKind.UNSUPPORTED, f"{source} is not a bag directory")
        try:
            bag = bagit.Bag(str(source))
            bag.validate(fast=fast)
        except bagit.BagError as e:
            raise ArchiveError(ArchiveErrorKind.INVALID_BAG, f"{source}: {e}") from e
        raw = (source / 'bag-info.txt').read_bytes() if (source / 'bag-info.txt').is_file() else b''
        return ArchiveService.parse_bag_info(raw)

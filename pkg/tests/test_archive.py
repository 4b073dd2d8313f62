import logging
import os
import random
import warnings
from uuid import UUID

import pytest

from conftest import DECLARED_UUID, DESCRIPTION_TTL, SURVEY_CSV, mark_encrypted

from arcp.models.strategy import Auto, Declared, Hash, LocationUuid, Name, RandomUuid
from arcp.services.archive_service import ArchiveService
from arcp.services.mint_service import MintService
from arcp.services.uri_service import UriService
from arcp.utils.exceptions import ArchiveError, ArchiveErrorKind, ResolutionError, ResolutionErrorKind

UUID_TEXT = 'c6179148-3cde-4435-8e66-304453f89d59'
BASE = f"arcp://uuid,{UUID_TEXT}/"


def fixed_uuid(size):
    return UUID(UUID_TEXT).bytes


def open_fixed(path):
    return ArchiveService.open_archive(path, RandomUuid(), rng=fixed_uuid)


def read_all(handle, uri):
    with ArchiveService.read_entry(handle, uri) as stream:
        return stream.read()


def test_list_entries_zip(survey_zip):
    """Test listing a ZIP as absolute arcp URIs"""
    with open_fixed(survey_zip) as handle:
        assert str(handle.base) == BASE
        entries = ArchiveService.list_entries(handle)

    assert [str(entry.uri) for entry in entries] == [
        f"{BASE}data/survey.csv",
        f"{BASE}metadata/description.ttl",
    ]
    assert [entry.size for entry in entries] == [len(SURVEY_CSV), len(DESCRIPTION_TTL)]
    assert not any(entry.is_directory for entry in entries)


def test_read_entry_zip(survey_zip):
    """Test reading entries by URI string or parsed URI"""
    with open_fixed(survey_zip) as handle:
        assert read_all(handle, f"{BASE}data/survey.csv") == SURVEY_CSV
        uri = UriService.parse(f"{BASE}metadata/description.ttl")
        assert read_all(handle, uri) == DESCRIPTION_TTL
        for entry in ArchiveService.list_entries(handle):
            assert len(read_all(handle, entry.uri)) == entry.size


def test_list_entries_empty_zip(zip_factory):
    """Test that an empty ZIP lists nothing"""
    with open_fixed(zip_factory('empty.zip', [])) as handle:
        assert ArchiveService.list_entries(handle) == []


def test_entry_names_are_percent_encoded(zip_factory):
    """Test names with spaces and non-ASCII characters"""
    path = zip_factory('names.zip', [('my project/café.txt', b'hi')])
    with open_fixed(path) as handle:
        (entry,) = ArchiveService.list_entries(handle)
        assert str(entry.uri) == f"{BASE}my%20project/caf%C3%A9.txt"
        assert read_all(handle, entry.uri) == b'hi'


def test_directory_entries(zip_factory):
    """Test explicit directory entries and reads of directories"""
    path = zip_factory('dirs.zip', [('data/', None), ('data/survey.csv', SURVEY_CSV),
                                    ('metadata/description.ttl', DESCRIPTION_TTL)])
    with open_fixed(path) as handle:
        entries = ArchiveService.list_entries(handle)
        assert [str(entry.uri) for entry in entries] == [
            f"{BASE}data/",
            f"{BASE}data/survey.csv",
            f"{BASE}metadata/description.ttl",
        ]
        assert entries[0].is_directory and entries[0].size == 0

        for uri in [f"{BASE}data/", f"{BASE}data", f"{BASE}metadata/", BASE]:
            with pytest.raises(ArchiveError) as exc_info:
                ArchiveService.read_entry(handle, uri)
            assert exc_info.value.kind == ArchiveErrorKind.IS_DIRECTORY


def test_read_entry_missing(survey_zip):
    """Test unknown entries and a file addressed as a directory"""
    with open_fixed(survey_zip) as handle:
        for uri in [f"{BASE}nope.txt", f"{BASE}data/survey.csv/"]:
            with pytest.raises(ArchiveError) as exc_info:
                ArchiveService.read_entry(handle, uri)
            assert exc_info.value.kind == ArchiveErrorKind.ENTRY_NOT_FOUND


def test_read_entry_authority_mismatch(survey_zip):
    """Test that URIs of another archive are refused"""
    with open_fixed(survey_zip) as handle:
        with pytest.raises(ArchiveError) as exc_info:
            ArchiveService.read_entry(handle, f"arcp://uuid,{DECLARED_UUID}/data/survey.csv")
        assert exc_info.value.kind == ArchiveErrorKind.AUTHORITY_MISMATCH


def test_read_entry_traversal(survey_zip):
    """Test that a URI climbing above the root never reaches the backend"""
    with open_fixed(survey_zip) as handle:
        with pytest.raises(ResolutionError) as exc_info:
            ArchiveService.read_entry(handle, f"{BASE}../../etc/passwd")
        assert exc_info.value.kind == ResolutionErrorKind.TRAVERSAL


def test_hash_base_is_stable(survey_zip):
    """Test that the hash base depends only on the file bytes"""
    expected = MintService.mint_from_bytes(survey_zip.read_bytes())
    with ArchiveService.open_archive(survey_zip, Hash()) as first, \
            ArchiveService.open_archive(survey_zip, Hash()) as second:
        assert first.base == second.base == expected
        assert ArchiveService.archive_digest(first).b64 == expected.authority.namespace.split(';')[1]


def test_auto_strategy_zip_uses_hash(survey_zip):
    """Test the default base for a ZIP without a declared identifier"""
    with ArchiveService.open_archive(survey_zip) as handle:
        assert handle.strategy_used == Hash()
        assert UriService.hash_of(handle.base) is not None
        assert handle.bag_info is None


def test_auto_strategy_directory_uses_random_uuid(tmp_path):
    """Test the default base for a plain directory"""
    (tmp_path / 'readme.txt').write_text('hello')
    with ArchiveService.open_archive(tmp_path) as handle:
        assert handle.strategy_used == RandomUuid()
        assert UriService.uuid_of(handle.base).version == 4
        assert [str(e.uri) for e in ArchiveService.list_entries(handle)] == [f"{handle.base}readme.txt"]


def test_location_and_name_strategies(survey_zip):
    """Test the other explicit minting strategies"""
    url = 'http://example.com/download/archive13.zip'
    with ArchiveService.open_archive(survey_zip, LocationUuid(url)) as handle:
        assert str(handle.base) == 'arcp://uuid,d9f0b57d-0504-5e9a-abae-f5f2b8c49b94/'
    with ArchiveService.open_archive(survey_zip, Name('com.example.survey')) as handle:
        assert str(handle.base) == 'arcp://name,com.example.survey/'
        assert read_all(handle, 'arcp://name,com.example.survey/data/survey.csv') == SURVEY_CSV


def test_hash_strategy_needs_a_file(tmp_path):
    """Test that directories cannot be hash-identified"""
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.open_archive(tmp_path, Hash())
    assert exc_info.value.kind == ArchiveErrorKind.UNSUPPORTED


def test_declared_bag_directory(declared_bag):
    """Test adopting External-Identifier from a bag directory"""
    with ArchiveService.open_archive(declared_bag) as handle:
        assert str(handle.base) == f"arcp://uuid,{DECLARED_UUID}/"
        assert handle.strategy_used == Declared(f"arcp://uuid,{DECLARED_UUID}/")
        uris = [str(entry.uri) for entry in ArchiveService.list_entries(handle)]
        assert f"{handle.base}bag-info.txt" in uris
        assert f"{handle.base}data/" in uris
        assert f"{handle.base}data/workflow/packed.cwl" in uris
        assert read_all(handle, f"{handle.base}data/survey.csv") == SURVEY_CSV


def test_declared_identifier_on_continuation_line(folded_bag):
    """Test a folded External-Identifier value"""
    with ArchiveService.open_archive(folded_bag) as handle:
        assert str(handle.base) == f"arcp://uuid,{DECLARED_UUID}/"
        assert handle.bag_info.get('Bagging-Date') == '2018-08-21'


def test_declared_identifier_in_zipped_bag(zip_factory):
    """Test a bag zipped with a single top-level folder"""
    path = zip_factory('bag.zip', [
        ('revsort-run-1/bagit.txt', b'BagIt-Version: 0.97\n'),
        ('revsort-run-1/bag-info.txt', f"External-Identifier: arcp://uuid,{DECLARED_UUID}/\n".encode()),
        ('revsort-run-1/data/survey.csv', SURVEY_CSV),
    ])
    with ArchiveService.open_archive(path) as handle:
        assert str(handle.base) == f"arcp://uuid,{DECLARED_UUID}/"
        assert read_all(handle, f"{handle.base}revsort-run-1/data/survey.csv") == SURVEY_CSV


def test_explicit_strategy_overrides_declared(declared_bag):
    """Test that an explicit strategy wins over the bag's identifier"""
    with ArchiveService.open_archive(declared_bag, RandomUuid(), rng=fixed_uuid) as handle:
        assert str(handle.base) == BASE
        assert handle.bag_info.external_identifier == f"arcp://uuid,{DECLARED_UUID}/"


def test_non_arcp_identifier_is_not_adopted(zip_factory, caplog):
    """Test that urn:uuid identifiers are reported but not used as base"""
    identifier = f"urn:uuid:{DECLARED_UUID}"
    path = zip_factory('urn.zip', [('bag-info.txt', f"External-Identifier: {identifier}\n".encode())])
    with caplog.at_level(logging.WARNING, logger='arcp'):
        with ArchiveService.open_archive(path) as handle:
            assert handle.strategy_used == Hash()
            assert handle.bag_info.external_identifier == identifier
    assert 'not an arcp URI' in caplog.text


@pytest.mark.parametrize('identifier', ['arcp://uuid,nope/', f"arcp://uuid,{DECLARED_UUID}/data/"])
def test_bad_declared_identifier(zip_factory, identifier):
    """Test that an unusable arcp identifier is an error under auto"""
    path = zip_factory('bad-id.zip', [('bag-info.txt', f"External-Identifier: {identifier}\n".encode())])
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.open_archive(path)
    assert exc_info.value.kind == ArchiveErrorKind.DECLARED_IDENTIFIER


def test_broken_bag_info(zip_factory):
    """Test that broken bag-info.txt fails auto but not explicit strategies"""
    path = zip_factory('broken.zip', [('bag-info.txt', b'no colon here\n'), ('a.txt', b'a')])
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.open_archive(path)
    assert exc_info.value.kind == ArchiveErrorKind.BAD_BAG_INFO

    with ArchiveService.open_archive(path, RandomUuid(), rng=fixed_uuid) as handle:
        assert handle.bag_info is None


def test_open_archive_errors(tmp_path):
    """Test missing, unsupported and corrupt inputs"""
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.open_archive(tmp_path / 'missing.zip')
    assert exc_info.value.kind == ArchiveErrorKind.NOT_FOUND

    notes = tmp_path / 'notes.txt'
    notes.write_text('just text')
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.open_archive(notes)
    assert exc_info.value.kind == ArchiveErrorKind.UNSUPPORTED

    corrupt = tmp_path / 'corrupt.zip'
    corrupt.write_bytes(b'PK\x03\x04' + b'\x00garbage' * 10)
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.open_archive(corrupt)
    assert exc_info.value.kind == ArchiveErrorKind.CORRUPT_ARCHIVE


def test_hostile_zip_members_are_skipped(zip_factory, caplog):
    """Test that unsafe member names never become entries"""
    path = zip_factory('hostile.zip', [
        ('../evil.txt', b'evil'),
        ('/abs.txt', b'abs'),
        ('a\\b.txt', b'backslash'),
        ('C:/win.txt', b'drive'),
        ('ok/./x.txt', b'dot'),
        ('good.txt', b'good'),
    ])
    with caplog.at_level(logging.WARNING, logger='arcp'):
        with open_fixed(path) as handle:
            entries = ArchiveService.list_entries(handle)
            assert [str(entry.uri) for entry in entries] == [f"{BASE}good.txt"]
    assert caplog.text.count('Rejecting ZIP entry') == 5


def test_duplicate_zip_members_last_wins(zip_factory, caplog):
    """Test duplicate names resolve to the last occurrence"""
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        path = zip_factory('dupes.zip', [('a.txt', b'first'), ('a.txt', b'second')])
    with caplog.at_level(logging.WARNING, logger='arcp'):
        with open_fixed(path) as handle:
            assert len(ArchiveService.list_entries(handle)) == 1
            assert read_all(handle, f"{BASE}a.txt") == b'second'
    assert 'Duplicate ZIP entry' in caplog.text


def test_directory_symlink_escape(tmp_path):
    """Test that links out of a directory archive are neither listed nor readable"""
    root = tmp_path / 'archive'
    root.mkdir()
    (root / 'inside.txt').write_text('inside')
    (tmp_path / 'secret.txt').write_text('secret')
    try:
        os.symlink(tmp_path / 'secret.txt', root / 'link.txt')
    except (OSError, NotImplementedError):
        pytest.skip('symlinks unavailable')

    with open_fixed(root) as handle:
        assert [str(e.uri) for e in ArchiveService.list_entries(handle)] == [f"{BASE}inside.txt"]
        with pytest.raises(ResolutionError) as exc_info:
            ArchiveService.read_entry(handle, f"{BASE}link.txt")
        assert exc_info.value.kind == ResolutionErrorKind.TRAVERSAL


def test_archive_digest_only_for_files(tmp_path):
    """Test that directories have no archive digest"""
    with open_fixed(tmp_path) as handle:
        with pytest.raises(ArchiveError) as exc_info:
            ArchiveService.archive_digest(handle)
        assert exc_info.value.kind == ArchiveErrorKind.UNSUPPORTED


def test_parse_bag_info():
    """Test label parsing, folding and lookups"""
    info = ArchiveService.parse_bag_info(
        'Source-Organization: Example University\r\n'
        'Contact-Name: Ada\r\n'
        'Contact-Name: Grace\r\n'
        'External-Description: A long\r\n'
        '   description value\r\n'
        'External-Identifier:\r\n'
        '\tarcp://uuid,d47d3d43-4830-44f0-aa32-4cda74849c63/\r\n'
        '\r\n'
    )
    assert info.get('source-organization') == 'Example University'
    assert info.get_all('Contact-Name') == ['Ada', 'Grace']
    assert info.get('External-Description') == 'A long description value'
    assert info.external_identifier == f"arcp://uuid,{DECLARED_UUID}/"
    assert info.get('Missing', 'none') == 'none'


def test_parse_bag_info_bytes_with_bom():
    """Test UTF-8 input with a byte order mark"""
    info = ArchiveService.parse_bag_info('\ufeffContact-Name: Zoë\n'.encode('utf-8'))
    assert info.labels == (('Contact-Name', 'Zoë'),)


@pytest.mark.parametrize('text', ['  orphan continuation\n', 'Label without colon\n', ': no label\n', b'\xff\xfe'])
def test_parse_bag_info_rejects(text):
    """Test malformed bag-info.txt"""
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.parse_bag_info(text)
    assert exc_info.value.kind == ArchiveErrorKind.BAD_BAG_INFO


def test_extract(survey_zip, tmp_path):
    """Test extraction below a destination folder"""
    destination = tmp_path / 'out'
    with open_fixed(survey_zip) as handle:
        written = ArchiveService.extract(handle, destination)
    assert sorted(written) == sorted([destination / 'data' / 'survey.csv',
                                      destination / 'metadata' / 'description.ttl'])
    assert (destination / 'data' / 'survey.csv').read_bytes() == SURVEY_CSV


def test_extract_hostile_zip_stays_inside(zip_factory, tmp_path):
    """Test that hostile members are not written anywhere"""
    path = zip_factory('hostile.zip', [('../evil.txt', b'evil'), ('good.txt', b'good')])
    destination = tmp_path / 'out'
    with open_fixed(path) as handle:
        written = ArchiveService.extract(handle, destination)
    assert written == [destination / 'good.txt']
    assert not (tmp_path / 'evil.txt').exists()


def test_damaged_entry_is_corrupt_archive(damaged_zip):
    """Test that a failed CRC check surfaces as CorruptArchive"""
    with open_fixed(damaged_zip) as handle:
        assert read_all(handle, f"{BASE}data/good.csv") == SURVEY_CSV
        with pytest.raises(ArchiveError) as exc_info:
            read_all(handle, f"{BASE}data/x.bin")
    assert exc_info.value.kind == ArchiveErrorKind.CORRUPT_ARCHIVE
    assert 'CRC' in exc_info.value.detail


def test_encrypted_entry_is_corrupt_archive(zip_factory):
    """Test that entries needing a password are refused"""
    path = mark_encrypted(zip_factory('locked.zip', [('secret.txt', b'secret')]))
    with open_fixed(path) as handle:
        with pytest.raises(ArchiveError) as exc_info:
            read_all(handle, f"{BASE}secret.txt")
    assert exc_info.value.kind == ArchiveErrorKind.CORRUPT_ARCHIVE


def test_extract_damaged_entry_leaves_nothing_partial(damaged_zip, tmp_path):
    """Test that extraction stops at a damaged entry without leaving its bytes behind"""
    destination = tmp_path / 'out'
    with open_fixed(damaged_zip) as handle:
        with pytest.raises(ArchiveError) as exc_info:
            ArchiveService.extract(handle, destination)
    assert exc_info.value.kind == ArchiveErrorKind.CORRUPT_ARCHIVE
    assert [path.name for path in (destination / 'data').iterdir()] == ['good.csv']


def test_file_and_implied_directory_share_a_name(zip_factory):
    """Test that an explicit file stays readable when deeper names imply a folder of the same name"""
    path = zip_factory('clash.zip', [('a', b'hello'), ('a/b', b'x')])
    with open_fixed(path) as handle:
        entries = ArchiveService.list_entries(handle)
        assert [(str(entry.uri), entry.size, entry.is_directory) for entry in entries] == [
            (f"{BASE}a", 5, False),
            (f"{BASE}a/b", 1, False)
        ]
        for entry in entries:
            assert len(read_all(handle, entry.uri)) == entry.size
        with pytest.raises(ArchiveError) as exc_info:
            read_all(handle, f"{BASE}a/")
    assert exc_info.value.kind == ArchiveErrorKind.IS_DIRECTORY


def test_validate_bag(declared_bag):
    """Test full BagIt validation"""
    info = ArchiveService.validate_bag(declared_bag)
    assert info.external_identifier == f"arcp://uuid,{DECLARED_UUID}/"

    (declared_bag / 'data' / 'survey.csv').write_bytes(b'tampered\n')
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.validate_bag(declared_bag)
    assert exc_info.value.kind == ArchiveErrorKind.INVALID_BAG


def test_validate_bag_needs_directory(survey_zip):
    """Test that only bag directories are validated"""
    with pytest.raises(ArchiveError) as exc_info:
        ArchiveService.validate_bag(survey_zip)
    assert exc_info.value.kind == ArchiveErrorKind.UNSUPPORTED


def test_handle_record(survey_zip):
    """Test the handle to_dict record"""
    with open_fixed(survey_zip) as handle:
        assert handle.to_dict() == {
            'source': str(survey_zip),
            'backend': 'zip',
            'base': BASE,
            'strategy': 'uuid'
        }


def test_random_zips_round_trip(zip_factory):
    """Test listing and reading back generated archives"""
    rng = random.Random(13)
    for number in range(20):
        members = {}
        for index in range(rng.randrange(1, 12)):
            folder = rng.choice(['', 'data/', 'metadata/', 'data/raw/', 'my project/'])
            members[f"{folder}file-{index}.bin"] = rng.randbytes(rng.randrange(0, 4096))
        path = zip_factory(f"random-{number}.zip", list(members.items()))

        with ArchiveService.open_archive(path) as handle:
            entries = ArchiveService.list_entries(handle)
            assert len(entries) == len(members)
            for entry in entries:
                assert read_all(handle, entry.uri) == members[entry.key.name]

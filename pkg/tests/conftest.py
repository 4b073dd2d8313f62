import base64
import hashlib
import logging
import threading
import zipfile

import bagit
import pytest
from click.testing import CliRunner
from flask import Flask, Response, abort, redirect
from werkzeug.serving import make_server

from arcp.cli import LOG_HANDLER_NAME, cli

SURVEY_CSV = b"a,b\n1,2\n"
DESCRIPTION_TTL = b"<> a <http://example.com/Survey> .\n"
DECLARED_UUID = 'd47d3d43-4830-44f0-aa32-4cda74849c63'
DAMAGED_PAYLOAD = b'0123456789abcdef' * 8


def write_zip(path, members):
    """members: (name, bytes) pairs; bytes None writes a directory entry"""
    with zipfile.ZipFile(path, 'w') as zf:
        for name, data in members:
            if data is None:
                zf.writestr(zipfile.ZipInfo(name), b'')
            else:
                zf.writestr(name, data)
    return path


def damage_zip(path, payload):
    """Flip one byte inside the stored data of the member holding payload"""
    raw = bytearray(path.read_bytes())
    raw[raw.index(payload) + len(payload) // 2] ^= 0x01
    path.write_bytes(bytes(raw))
    return path


def mark_encrypted(path):
    """Set the encryption flag of a single-member ZIP in both headers"""
    raw = bytearray(path.read_bytes())
    raw[6] |= 0x01
    raw[raw.index(b'PK\x01\x02') + 8] |= 0x01
    path.write_bytes(bytes(raw))
    return path


def create_resolver_app(objects):
    """Minimal well-known ni resolver serving bytes from a dict"""
    app = Flask(__name__)

    @app.route('/.well-known/ni/<alg>/<digest>')
    def well_known(alg, digest):
        body = objects.get((alg, digest))
        if body is None:
            abort(404)
        return Response(body, mimetype='application/octet-stream')

    @app.route('/hop/<int:hops>/<path:rest>')
    def hop(hops, rest):
        if hops:
            return redirect(f"/hop/{hops - 1}/{rest}")
        return redirect(f"/{rest}")

    @app.route('/broken/<path:rest>')
    def broken(rest):
        abort(500)

    return app


class Resolver:
    def __init__(self, base, objects):
        self.base = base
        self.objects = objects

    def publish(self, content, body=None):
        """Serve body (default content) under the sha-256 of content"""
        digest = base64.urlsafe_b64encode(hashlib.sha256(content).digest()).rstrip(b'=').decode()
        self.objects[('sha-256', digest)] = content if body is None else body
        return digest


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep the caller's environment out of the tests"""
    for name in ('ARCP_ENV', 'ARCP_RESOLVER_BASE', 'ARCP_OUTPUT_FORMAT', 'ARCP_HASH_ALG'):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr('arcp.config.Config.RESOLVER_BASE', None)
    monkeypatch.setattr('arcp.config.Config.OUTPUT_FORMAT', 'plain')
    monkeypatch.setenv('NO_PROXY', '127.0.0.1,localhost')
    monkeypatch.setenv('no_proxy', '127.0.0.1,localhost')
    yield
    # the CLI binds its log handler to the stderr of the invocation
    logger = logging.getLogger('arcp')
    for handler in list(logger.handlers):
        if handler.get_name() == LOG_HANDLER_NAME:
            logger.removeHandler(handler)
    logger.setLevel(logging.NOTSET)


@pytest.fixture
def zip_factory(tmp_path):
    """Build ZIP files under tmp_path"""
    def make(name, members):
        return write_zip(tmp_path / name, members)
    return make


@pytest.fixture
def survey_zip(zip_factory):
    """Small research object: one metadata file and one data file"""
    return zip_factory('archive13.zip', [
        ('metadata/description.ttl', DESCRIPTION_TTL),
        ('data/survey.csv', SURVEY_CSV)
    ])


@pytest.fixture
def damaged_zip(zip_factory):
    """ZIP whose second member fails its CRC check"""
    path = zip_factory('damaged.zip', [
        ('data/good.csv', SURVEY_CSV),
        ('data/x.bin', DAMAGED_PAYLOAD)
    ])
    return damage_zip(path, DAMAGED_PAYLOAD)


@pytest.fixture
def declared_bag(tmp_path):
    """Valid BagIt bag declaring its own arcp base"""
    bag_dir = tmp_path / 'revsort-run-1'
    (bag_dir / 'workflow').mkdir(parents=True)
    (bag_dir / 'workflow' / 'packed.cwl').write_text('cwlVersion: v1.0\n')
    (bag_dir / 'survey.csv').write_bytes(SURVEY_CSV)
    bagit.make_bag(str(bag_dir), bag_info={
        'External-Identifier': f"arcp://uuid,{DECLARED_UUID}/"
    })
    return bag_dir


@pytest.fixture
def folded_bag(tmp_path):
    """Bag directory whose External-Identifier value is folded onto a continuation line"""
    bag_dir = tmp_path / 'folded'
    (bag_dir / 'data').mkdir(parents=True)
    (bag_dir / 'data' / 'survey.csv').write_bytes(SURVEY_CSV)
    (bag_dir / 'bagit.txt').write_text('BagIt-Version: 0.97\nTag-File-Character-Encoding: UTF-8\n')
    (bag_dir / 'bag-info.txt').write_text(
        'BagIt-Profile-Identifier: https://w3id.org/ro/bagit/profile\n'
        'Bagging-Date: 2018-08-21\n'
        'External-Identifier:\n'
        f"  arcp://uuid,{DECLARED_UUID}/\n"
        'Payload-Oxum: 8.1\n'
    )
    return bag_dir


@pytest.fixture
def resolver():
    """Well-known resolver listening on a loopback port"""
    objects = {}
    server = make_server('127.0.0.1', 0, create_resolver_app(objects), threaded=True)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()

    store = Resolver(f"http://127.0.0.1:{server.server_port}", objects)
    yield store

    server.shutdown()
    thread.join(timeout=5)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner):
    """Run the arcp CLI with arguments"""
    def run(*args, **kwargs):
        return runner.invoke(cli, [str(arg) for arg in args], **kwargs)
    return run

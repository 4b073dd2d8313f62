import requests

from arcp.config import Config
from arcp.utils.hashing import HashRegistry

hash_registry = HashRegistry()
hash_registry.register('sha-256', 'sha256', 32)


def make_session(config_class=Config):
    """New HTTP session per fetch; sessions are not shared between tasks"""
    session = requests.Session()
    session.max_redirects = config_class.MAX_REDIRECTS
    session.verify = config_class.VERIFY_TLS
    session.headers['Accept'] = '*/*'
    return session

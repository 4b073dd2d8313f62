import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


class Config:
    RESOLVER_BASE_ENV = 'ARCP_RESOLVER_BASE'
    RESOLVER_BASE = os.environ.get(RESOLVER_BASE_ENV) or None
    OUTPUT_FORMAT = os.environ.get('ARCP_OUTPUT_FORMAT') or 'plain'
    HASH_ALG = os.environ.get('ARCP_HASH_ALG') or 'sha-256'
    LOG_LEVEL = os.environ.get('ARCP_LOG_LEVEL') or 'WARNING'

    # HTTP retrieval from well-known resolvers
    HTTP_TIMEOUT = float(os.environ.get('ARCP_HTTP_TIMEOUT') or 30)
    VERIFY_TLS = os.environ.get('ARCP_VERIFY_TLS', 'true').lower() in ['true', 'on', '1']
    MAX_REDIRECTS = 5

    CHUNK_SIZE = 64 * 1024


class DevelopmentConfig(Config):
    LOG_LEVEL = 'DEBUG'


class TestingConfig(Config):
    TESTING = True
    RESOLVER_BASE = None
    HTTP_TIMEOUT = 5.0
    CHUNK_SIZE = 4 * 1024


config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'default': Config
}


def get_config(name=None):
    """Config class for name, else for ARCP_ENV; None when the name is unknown"""
    return config.get(name or os.environ.get('ARCP_ENV') or 'default')

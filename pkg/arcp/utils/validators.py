from marshmallow import Schema, fields, validate, ValidationError
import re

from arcp.extensions import hash_registry

# Reverse-domain application names: ASCII letters, digits, hyphen, dots between labels.
NAME_RE = re.compile(r'[A-Za-z0-9-]+(?:\.[A-Za-z0-9-]+)*')
ALG_ID_RE = re.compile(r'[A-Za-z0-9-]+')
UUID_RE = re.compile(r'[0-9A-Fa-f]{8}-[0-9A-Fa-f]{4}-[0-9A-Fa-f]{4}-[0-9A-Fa-f]{4}-[0-9A-Fa-f]{12}')


class CliConfigSchema(Schema):
    output_format = fields.Str(load_default='plain', validate=validate.OneOf(['json', 'plain']))
    resolver_base = fields.Url(
        load_default=None, allow_none=True, require_tld=False, schemes={'http', 'https'}
    )
    hash_alg = fields.Str(load_default='sha-256', validate=hash_registry.is_registered)


def validate_cli_config(data):
    """Validate CLI settings; returns the loaded dict and None, or None and messages"""
    schema = CliConfigSchema()
    try:
        return schema.load(data), None
    except ValidationError as err:
        return None, err.messages


def validate_name(name):
    """Validate an application name for the name prefix"""
    return isinstance(name, str) and NAME_RE.fullmatch(name) is not None


def validate_alg_id(alg_id):
    """Validate an ni hash algorithm token"""
    return isinstance(alg_id, str) and ALG_ID_RE.fullmatch(alg_id) is not None


def validate_uuid_text(text):
    """Validate hyphenated 8-4-4-4-12 hex"""
    return isinstance(text, str) and UUID_RE.fullmatch(text) is not None

import logging
import sys
from dataclasses import dataclass
from typing import Optional

import click

from arcp import __version__
from arcp.config import Config, get_config
from arcp.utils.output import emit_record
from arcp.utils.validators import validate_cli_config

LOG_HANDLER_NAME = 'arcp-cli'


@dataclass(frozen=True)
class CliConfig:
    output_format: str = 'plain'
    resolver_base: Optional[str] = None
    hash_alg: str = 'sha-256'
    config_class: type = Config


def configure_logging(verbose, config_class=Config):
    """Log to stderr so stdout stays parseable"""
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.getLevelName(config_class.LOG_LEVEL.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    logger = logging.getLogger('arcp')
    for handler in list(logger.handlers):
        if handler.get_name() == LOG_HANDLER_NAME:
            logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(LOG_HANDLER_NAME)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(level)


def load_settings(output_format=None, resolver_base=None, config_class=Config):
    settings, errors = validate_cli_config({
        'output_format': output_format or config_class.OUTPUT_FORMAT,
        'resolver_base': resolver_base,
        'hash_alg': config_class.HASH_ALG
    })
    if errors:
        details = '; '.join(f"{field}: {', '.join(messages)}" for field, messages in errors.items())
        raise click.UsageError(f"Invalid settings: {details}")
    return CliConfig(config_class=config_class, **settings)


class ArcpGroup(click.Group):
    """Command group that also reports usage errors as records under --json"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            if ctx.params.get('as_json'):
                emit_record({'error': 'UsageError', 'detail': e.format_message()})
            raise


@click.group(cls=ArcpGroup)
@click.option('--json', 'as_json', is_flag=True, help='Emit one JSON record per line.')
@click.option('-v', '--verbose', count=True, help='Log progress to stderr (repeat for debug).')
@click.version_option(__version__, prog_name='arcp')
@click.pass_context
def cli(ctx, as_json, verbose):
    """Mint, inspect, resolve and retrieve arcp URIs."""
    config_class = get_config()
    if config_class is None:
        raise click.UsageError('ARCP_ENV must be one of development, testing or default')
    configure_logging(verbose, config_class)
    ctx.obj = load_settings('json' if as_json else None, config_class=config_class)


from arcp.cli import archive_commands, uri_commands, wellknown_commands  # noqa: E402,F401

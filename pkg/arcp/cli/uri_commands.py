from pathlib import Path

import click

from arcp.cli import cli
from arcp.config import Config
from arcp.models.uri import NiAuthority
from arcp.services.mint_service import MintService
from arcp.services.resolution_service import ResolutionService
from arcp.services.uri_service import UriService
from arcp.services.wellknown_service import WellKnownService
from arcp.utils.decorators import handle_exceptions
from arcp.utils.output import emit


@cli.command()
@click.option('--uuid', 'use_uuid', is_flag=True, help='Random UUIDv4 base.')
@click.option('--location', metavar='URL', help='UUIDv5 of the archive URL.')
@click.option('--hash', 'hash_file', metavar='FILE', type=click.Path(dir_okay=False, path_type=Path),
              help='Hash of the archive file bytes.')
@click.option('--name', metavar='NAME', help='Application or package name.')
@click.option('--alg', default=None, help='Hash algorithm for --hash.')
@click.option('--path', 'entry_path', metavar='P', help='Entry path appended to the base.')
@click.pass_obj
@handle_exceptions
def mint(settings, use_uuid, location, hash_file, name, alg, entry_path):
    """Mint an arcp URI."""
    chosen = [use_uuid, location is not None, hash_file is not None, name is not None]
    if sum(chosen) != 1:
        raise click.UsageError('Use exactly one of --uuid, --location, --hash or --name')

    if use_uuid:
        base = MintService.mint_uuid_v4()
    elif location is not None:
        base = MintService.mint_from_location(location)
    elif hash_file is not None:
        with open(hash_file, 'rb') as f:
            base = MintService.mint_from_bytes(f, alg or settings.hash_alg)
    else:
        base = MintService.mint_from_name(name)

    uri = ResolutionService.from_entry_name(base, entry_path) if entry_path else base
    emit({'uri': str(uri)}, str(uri))


@cli.command('parse')
@click.argument('uri')
@click.option('--resolver', envvar=Config.RESOLVER_BASE_ENV, metavar='URL',
              help='Resolver base for the well-known form of hash URIs.')
@click.pass_obj
@handle_exceptions
def parse_uri(settings, uri, resolver):
    """Show the components of an arcp URI."""
    parsed = UriService.parse(uri)
    record = parsed.to_dict()
    if isinstance(parsed.authority, NiAuthority):
        digest = WellKnownService.digest_of_uri(parsed)
        record['ni'] = WellKnownService.to_ni_uri(digest)
        resolver = resolver or settings.config_class.RESOLVER_BASE
        if resolver:
            record['well_known'] = WellKnownService.well_known_url(digest, resolver)
    plain = '\n'.join(f"{key}: {value}" for key, value in record.items() if value is not None)
    emit(record, plain)


@cli.command()
@click.argument('base')
@click.argument('reference')
@click.pass_obj
@handle_exceptions
def resolve(settings, base, reference):
    """Resolve REFERENCE against the arcp BASE URI."""
    resolved = ResolutionService.resolve_reference(UriService.parse(base), reference)
    emit(resolved.to_dict(), resolved.text)

import shutil
from pathlib import Path

import click

from arcp.cli import cli
from arcp.models.strategy import Auto, Hash, LocationUuid, Name, RandomUuid
from arcp.services.archive_service import ArchiveService
from arcp.utils.decorators import handle_exceptions
from arcp.utils.output import emit

STRATEGIES = ['auto', 'uuid', 'hash', 'location', 'name']


def archive_options(f):
    """--strategy and its arguments, shared by the archive commands"""
    f = click.option('--name', 'app_name', metavar='NAME', help='Name for --strategy name.')(f)
    f = click.option('--location', metavar='URL', help='Archive URL; implies --strategy location.')(f)
    f = click.option('--strategy', type=click.Choice(STRATEGIES), default=None,
                     help='How to choose the base URI (default auto).')(f)
    return f


def make_strategy(settings, strategy, location, app_name):
    if strategy is None:
        strategy = 'location' if location is not None else 'auto'
    if strategy == 'location':
        if not location:
            raise click.UsageError('--strategy location needs --location URL')
        return LocationUuid(location)
    if strategy == 'name':
        if not app_name:
            raise click.UsageError('--strategy name needs --name NAME')
        return Name(app_name)
    if strategy == 'uuid':
        return RandomUuid()
    if strategy == 'hash':
        return Hash(settings.hash_alg)
    return Auto()


@cli.command()
@click.argument('archive', type=click.Path(path_type=Path))
@archive_options
@click.pass_obj
@handle_exceptions
def ls(settings, archive, strategy, location, app_name):
    """List entries of ARCHIVE as absolute arcp URIs."""
    chosen = make_strategy(settings, strategy, location, app_name)
    with ArchiveService.open_archive(archive, chosen) as handle:
        for entry in ArchiveService.list_entries(handle):
            flag = 'd' if entry.is_directory else '-'
            emit(entry.to_dict(), f"{entry.uri}\t{entry.size}\t{flag}")


@cli.command()
@click.argument('archive', type=click.Path(path_type=Path))
@click.argument('uri')
@archive_options
@click.pass_obj
@handle_exceptions
def cat(settings, archive, uri, strategy, location, app_name):
    """Write the bytes of entry URI in ARCHIVE to standard output."""
    chosen = make_strategy(settings, strategy, location, app_name)
    with ArchiveService.open_archive(archive, chosen) as handle:
        with ArchiveService.read_entry(handle, uri) as stream:
            shutil.copyfileobj(stream, click.get_binary_stream('stdout'), settings.config_class.CHUNK_SIZE)


@cli.command()
@click.argument('archive', type=click.Path(path_type=Path))
@click.argument('destination', type=click.Path(file_okay=False, path_type=Path))
@archive_options
@click.pass_obj
@handle_exceptions
def extract(settings, archive, destination, strategy, location, app_name):
    """Safely extract ARCHIVE below DESTINATION."""
    chosen = make_strategy(settings, strategy, location, app_name)
    with ArchiveService.open_archive(archive, chosen) as handle:
        for path in ArchiveService.extract(handle, destination):
            emit({'base': str(handle.base), 'path': str(path)}, str(path))


@cli.command()
@click.argument('bag', type=click.Path(path_type=Path))
@click.option('--validate', is_flag=True, help='Also verify manifests and Payload-Oxum.')
@click.pass_obj
@handle_exceptions
def bag(settings, bag, validate):
    """Print the arcp base a BagIt bag declares, or "none"."""
    if validate:
        bag_info = ArchiveService.validate_bag(bag)
    else:
        bag_info = ArchiveService.read_bag_info(bag)
    base = ArchiveService.declared_base(bag_info)
    record = {
        'base': str(base) if base else None,
        'external_identifier': bag_info.external_identifier if bag_info else None
    }
    if validate:
        record['valid'] = True
    emit(record, str(base) if base else 'none')

from pathlib import Path

import click

from arcp.cli import cli, load_settings
from arcp.config import Config
from arcp.services.uri_service import UriService
from arcp.services.wellknown_service import WellKnownService
from arcp.utils.decorators import handle_exceptions
from arcp.utils.output import emit

resolver_option = click.option(
    '--resolver', envvar=Config.RESOLVER_BASE_ENV, metavar='URL',
    help=f"Resolver base URL (default ${Config.RESOLVER_BASE_ENV})."
)


def resolver_base(settings, resolver):
    """Flag, then environment, then configured default"""
    resolver = resolver or settings.config_class.RESOLVER_BASE
    if not resolver:
        raise click.UsageError(f"No resolver: pass --resolver or set {Config.RESOLVER_BASE_ENV}")
    return load_settings(settings.output_format, resolver, settings.config_class).resolver_base


def target_digest(target):
    """Digest named by an ni URI or a hash-based arcp URI"""
    if target[:3].lower() == 'ni:':
        return WellKnownService.from_ni_uri(target)
    return WellKnownService.digest_of_uri(UriService.parse(target))


@cli.command()
@click.argument('target')
@resolver_option
@click.pass_obj
@handle_exceptions
def locate(settings, target, resolver):
    """Print the well-known URL for a hash-based arcp or ni URI."""
    digest = target_digest(target)
    url = WellKnownService.well_known_url(digest, resolver_base(settings, resolver))
    emit({'url': url, 'ni': digest.to_ni_uri()}, url)


@cli.command()
@click.argument('target')
@resolver_option
@click.option('--out', 'out_file', required=True, metavar='FILE',
              type=click.Path(dir_okay=False, path_type=Path), help='Where to store the verified archive.')
@click.pass_obj
@handle_exceptions
def get(settings, target, resolver, out_file):
    """Download a hash-identified archive and verify its checksum."""
    digest = target_digest(target)
    report = WellKnownService.fetch_and_verify(digest, resolver_base(settings, resolver), out_file,
                                              config_class=settings.config_class)
    emit(report.to_dict(), f"{report.status.value}\t{report.destination or report.url}")
    if not report.verified:
        click.get_current_context().exit(1)

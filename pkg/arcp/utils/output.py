import json

import click


def is_json():
    ctx = click.get_current_context(silent=True)
    settings = ctx.find_root().obj if ctx else None
    return bool(settings and settings.output_format == 'json')


def emit_record(record):
    click.echo(json.dumps(record, ensure_ascii=False))


def emit(record, plain):
    """One json record per line in json mode, otherwise the plain text"""
    if is_json():
        emit_record(record)
    elif plain is not None:
        click.echo(plain)


def emit_error(record):
    if is_json():
        emit_record(record)
    else:
        click.echo(f"Error: {record['error']}: {record['detail']}", err=True)

import functools
import logging

import click

from arcp.utils.exceptions import ArcpError
from arcp.utils.output import emit_error

logger = logging.getLogger(__name__)


def handle_exceptions(f):
    """Report library and I/O failures as error records with exit status 1"""
    @functools.wraps(f)
    def decorated_function(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ArcpError as e:
            logger.debug(f"{f.__name__} failed", exc_info=True)
            emit_error(e.to_dict())
        except OSError as e:
            logger.debug(f"{f.__name__} failed", exc_info=True)
            emit_error({'error': 'IOError', 'detail': str(e)})
        click.get_current_context().exit(1)
    return decorated_function

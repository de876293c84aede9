# The qunit command group; one module per subcommand.

import click

from qunit import __version__
from qunit.config import get_settings
from qunit.errors import QunitError

from ._common import CommandError, configure_logging
from .basis import basis
from .characters import characters
from .classify import classify
from .dims import dims
from .entangle import entangle
from .ladder import ladder
from .oracle import oracle
from .partitions import partitions
from .project import project
from .verify import verify

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


@click.group(context_settings={'help_option_names': ['-h', '--help']})
@click.version_option(__version__, prog_name='qunit')
@click.option(
  '--log-level',
  type=click.Choice(LOG_LEVELS, case_sensitive=False),
  default=None,
  help='Overrides QUNIT_LOG_LEVEL.',
)
def cli(log_level: str | None):
  """Schur-Weyl sectors and maximally entangled bases of N identical n-level particles."""
  try:
    level = log_level or get_settings().log_level
  except QunitError as e:
    raise CommandError(str(e), e.exit_code) from e
  configure_logging(level)


cli.add_command(partitions)
cli.add_command(dims)
cli.add_command(characters)
cli.add_command(basis)
cli.add_command(entangle)
cli.add_command(verify)
cli.add_command(project)
cli.add_command(classify)
cli.add_command(ladder)
cli.add_command(oracle)

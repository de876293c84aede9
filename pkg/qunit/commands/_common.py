"""Options, error translation and rendering shared by every subcommand."""

import functools
import io
import logging
from pathlib import Path

import click
import pandas as pd
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from qunit.config import get_settings
from qunit.errors import DomainError, QunitError
from qunit.models import Document
from qunit.services.tableaux import Partition, parse_partition

logger = logging.getLogger(__name__)

FORMATS = ('json', 'csv', 'pretty')
PRETTY_WIDTH = 120


class CommandError(click.ClickException):
  """ClickException carrying the exit code of the QunitError behind it."""

  def __init__(self, message: str, exit_code: int):
    super().__init__(message)
    self.exit_code = exit_code


def handle_errors(command):
  """Turn QunitError into a CommandError with the matching exit code."""

  @functools.wraps(command)
  def wrapper(*args, **kwargs):
    try:
      return command(*args, **kwargs)
    except QunitError as e:
      logger.debug(f'{type(e).__name__} in {command.__name__}: {e}')
      raise CommandError(str(e), e.exit_code) from e

  return wrapper


def configure_logging(level: str) -> None:
  """Send log records to stderr through rich; stdout stays reserved for output."""
  handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=False)
  logging.basicConfig(level=level.upper(), format='%(message)s', handlers=[handler], force=True)


class PartitionParamType(click.ParamType):
  """--lambda 2,1 -> Partition((2, 1))."""

  name = 'partition'

  def convert(self, value, param, ctx) -> Partition:
    """Parse the option text, failing with a usage error."""
    if isinstance(value, Partition):
      return value
    try:
      return parse_partition(value)
    except DomainError as e:
      self.fail(str(e), param, ctx)


PARTITION = PartitionParamType()


def output_options(command):
  """--tol, --format and --output, shared by every subcommand."""
  command = click.option(
    '--output',
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help='Write the output to this file instead of stdout.',
  )(command)
  command = click.option(
    '--format',
    'fmt',
    type=click.Choice(FORMATS),
    default='json',
    show_default=True,
    help='json is canonical; csv and pretty are tabular views.',
  )(command)
  command = click.option(
    '--tol',
    type=click.FloatRange(min=0, min_open=True),
    default=None,
    help='Verdict tolerance (default: QUNIT_VERDICT_TOL).',
  )(command)
  return command


def resolve_tol(tol: float | None) -> float:
  """The --tol value, or QUNIT_VERDICT_TOL when it was not given."""
  return get_settings().verdict_tol if tol is None else tol


def _pretty(document: Document) -> str:
  rows = document.table_rows()
  table = Table(title=document.title())
  for column in rows[0] if rows else []:
    table.add_column(column)
  for row in rows:
    table.add_row(*(str(value) for value in row.values()))
  console = Console(file=io.StringIO(), width=PRETTY_WIDTH)
  console.print(table)
  return console.file.getvalue()


def render(document: Document, fmt: str) -> str:
  """Render a document as json, csv or a pretty table."""
  if fmt == 'json':
    return document.model_dump_json(indent=2, exclude_none=True) + '\n'
  if fmt == 'csv':
    return pd.DataFrame(document.table_rows()).to_csv(index=False)
  return _pretty(document)


def emit(document: Document, fmt: str, output: Path | None) -> None:
  """Render and write to --output (parent directories created) or stdout."""
  text = render(document, fmt)
  if output is None:
    click.echo(text, nl=False)
    return
  output.parent.mkdir(parents=True, exist_ok=True)
  output.write_text(text)
  logger.info(f'Wrote {fmt} output to {output}')


def particles_option(command):
  """Required --N option, passed as particles."""
  option = click.option('--N', 'particles', type=int, required=True, help='Number of particles N.')
  return option(command)


def levels_option(command):
  """Required --n option, passed as levels."""
  option = click.option('--n', 'levels', type=int, required=True, help='Levels per particle n.')
  return option(command)

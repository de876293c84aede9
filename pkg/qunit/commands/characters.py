"""characters: the character table of S_N."""

from pathlib import Path

import click
from pydantic import BaseModel

from qunit.models import Document
from qunit.services.symmetry import character_table

from ._common import emit, handle_errors, output_options, particles_option


class ClassEntry(BaseModel):
  """A conjugacy class by cycle type, with its size."""

  cycle_type: str
  size: int


class CharacterRow(BaseModel):
  """Characters of one irrep, in class order."""

  partition: str
  values: list[int]


class CharactersDocument(Document):
  """chi^lambda with partitions as rows and conjugacy classes as columns."""

  N: int
  classes: list[ClassEntry]
  rows: list[CharacterRow]

  def title(self) -> str:
    """Name of the table."""
    return f'Character table of S_{self.N}'

  def table_rows(self):
    """One row per partition, one column per class."""
    return [
      {'partition': row.partition}
      | {cls.cycle_type: value for cls, value in zip(self.classes, row.values)}
      for row in self.rows
    ]


@click.command()
@particles_option
@output_options
@handle_errors
def characters(particles: int, tol: float | None, fmt: str, output: Path | None):
  """Print chi^lambda(mu) for every partition lambda and cycle type mu."""
  table = character_table(particles)
  document = CharactersDocument(
    N=particles,
    classes=[ClassEntry(cycle_type=str(c.cycle_type), size=c.size) for c in table.classes],
    rows=[
      CharacterRow(partition=str(p), values=list(values))
      for p, values in zip(table.partitions, table.values)
    ],
  )
  emit(document, fmt, output)

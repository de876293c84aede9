"""partitions: every lambda of N with f^lambda, checked against sum (f^lambda)^2 == N!."""

from math import factorial
from pathlib import Path

import click
from pydantic import BaseModel

from qunit.models import Document
from qunit.services.tableaux import conjugate_partition, enumerate_partitions, hook_length_dim

from ._common import emit, handle_errors, output_options, particles_option


class PartitionRow(BaseModel):
  """One irrep of S_N."""

  partition: str
  frequency: int
  conjugate: str


class PartitionsDocument(Document):
  """All partitions of N in reverse-lexicographic order."""

  N: int
  partitions: list[PartitionRow]
  sum_of_squares: int
  group_order: int
  holds: bool

  def title(self) -> str:
    """Name of the table."""
    return f'Partitions of N={self.N}'

  def table_rows(self):
    """One row per partition."""
    return [row.model_dump() for row in self.partitions]


@click.command()
@particles_option
@output_options
@handle_errors
def partitions(particles: int, tol: float | None, fmt: str, output: Path | None):
  """List partitions of N; exits 1 if the squared dimensions do not sum to N!."""
  rows = [
    PartitionRow(
      partition=str(p), frequency=hook_length_dim(p), conjugate=str(conjugate_partition(p))
    )
    for p in enumerate_partitions(particles)
  ]
  total = sum(row.frequency**2 for row in rows)
  document = PartitionsDocument(
    N=particles,
    partitions=rows,
    sum_of_squares=total,
    group_order=factorial(particles),
    holds=total == factorial(particles),
  )
  emit(document, fmt, output)
  if not document.holds:
    click.get_current_context().exit(1)

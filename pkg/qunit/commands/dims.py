"""dims: the Schur-Weyl dimension table for N particles with n levels."""

from pathlib import Path

import click
from pydantic import BaseModel

from qunit.models import Document
from qunit.services.tableaux import schur_weyl_identity

from ._common import emit, handle_errors, levels_option, output_options, particles_option


class DimsRow(BaseModel):
  """f^lambda, dim T^lambda and their product for one partition."""

  partition: str
  frequency: int
  weyl_dim: int
  product: int


class DimsDocument(Document):
  """Rows of f^lambda * dim T^lambda and their total against n^N."""

  N: int
  n: int
  rows: list[DimsRow]
  total: int
  expected: int
  holds: bool

  def title(self) -> str:
    """Space and the computed total."""
    return f'Schur-Weyl dimensions, N={self.N}, n={self.n} (total {self.total})'

  def table_rows(self):
    """The per-partition rows as they are."""
    return [row.model_dump() for row in self.rows]


@click.command()
@particles_option
@levels_option
@output_options
@handle_errors
def dims(particles: int, levels: int, tol: float | None, fmt: str, output: Path | None):
  """Dimension table; exits 1 if the total differs from n^N."""
  summary = schur_weyl_identity(particles, levels)
  document = DimsDocument(
    N=particles,
    n=levels,
    rows=[
      DimsRow(
        partition=str(term.partition),
        frequency=term.frequency,
        weyl_dim=term.weyl_dim,
        product=term.product,
      )
      for term in summary.terms
    ],
    total=summary.total,
    expected=summary.expected,
    holds=summary.holds,
  )
  emit(document, fmt, output)
  if not document.holds:
    click.get_current_context().exit(1)

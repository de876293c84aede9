"""oracle: compare the fast verifier with brute force on seeded random states."""

from pathlib import Path

import click

from qunit.models import Document, Real, round_float
from qunit.services.hilbert import SpaceSpec
from qunit.services.oracle import compare_with_oracle

from ._common import (
  emit,
  handle_errors,
  levels_option,
  output_options,
  particles_option,
  resolve_tol,
)


class OracleDocument(Document):
  """Outcome of the seeded comparison against the brute-force references."""

  N: int
  n: int
  samples: int
  seed: int
  tolerance: Real
  max_entropy_gap: Real
  mismatches: list[int]
  agrees: bool

  def title(self) -> str:
    """Space under test."""
    return f'Oracle comparison, N={self.N}, n={self.n}'

  def table_rows(self):
    """A single summary row; mismatches are counted."""
    row = self.model_dump(exclude={'mismatches'})
    row['tolerance'] = round_float(self.tolerance)
    row['max_entropy_gap'] = round_float(self.max_entropy_gap)
    row['mismatches'] = len(self.mismatches)
    return [row]


@click.command()
@particles_option
@levels_option
@click.option('--samples', type=click.IntRange(min=1), default=100, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True, help='Seed for default_rng.')
@output_options
@handle_errors
def oracle(
  particles: int,
  levels: int,
  samples: int,
  seed: int,
  tol: float | None,
  fmt: str,
  output: Path | None,
):
  """Exits 1 if any verdict or entropy disagrees with the brute-force partial trace."""
  space = SpaceSpec(levels=levels, particles=particles)
  tol = resolve_tol(tol)
  comparison = compare_with_oracle(space, samples, seed, tol)
  document = OracleDocument(
    N=particles,
    n=levels,
    samples=comparison.samples,
    seed=seed,
    tolerance=tol,
    max_entropy_gap=comparison.max_entropy_gap,
    mismatches=comparison.verdict_mismatches,
    agrees=comparison.agrees,
  )
  emit(document, fmt, output)
  if not document.agrees:
    click.get_current_context().exit(1)

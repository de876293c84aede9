"""project: isotypic sector weights of states, or of density-matrix eigenspaces, read from JSON."""

from pathlib import Path

import click
from pydantic import BaseModel

from qunit.errors import DomainError
from qunit.models import Document, ParsedDensity, Real, parse_input, round_float
from qunit.services.symmetry import density_sector_weights, sector_membership, sector_weights
from qunit.services.tableaux import Partition

from ._common import PARTITION, emit, handle_errors, output_options


class WeightEntry(BaseModel):
  """Weight of one state or eigenspace in the sector of partition."""

  partition: str
  weight: Real


class ProjectEntry(BaseModel):
  """Sector weights of one input state."""

  label: str
  weights: list[WeightEntry]


class ProjectDocument(Document):
  """Per-state weights; over all partitions they sum to 1."""

  entries: list[ProjectEntry]

  def title(self) -> str:
    """Name of the table."""
    return 'Sector weights'

  def table_rows(self):
    """One row per (state, partition)."""
    return [
      {'label': entry.label, 'partition': w.partition, 'weight': round_float(w.weight)}
      for entry in self.entries
      for w in entry.weights
    ]


class ComponentEntry(BaseModel):
  """One eigenspace of the density matrix with its averaged sector weights."""

  eigenvalue: Real
  multiplicity: int
  weights: list[WeightEntry]


class MixtureDocument(Document):
  """Eigenspaces of a density matrix in descending eigenvalue order.

  total_weights holds Tr(P_lambda rho), the weight of the whole ensemble.
  """

  n: int
  N: int
  components: list[ComponentEntry]
  total_weights: list[WeightEntry]

  def title(self) -> str:
    """Space of the density matrix."""
    return f'Sector weights of a density matrix (n={self.n}, N={self.N})'

  def table_rows(self):
    """Rows per (component, partition), then the totals."""
    rows = [
      {
        'component': str(index),
        'eigenvalue': round_float(component.eigenvalue),
        'multiplicity': component.multiplicity,
        'partition': w.partition,
        'weight': round_float(w.weight),
      }
      for index, component in enumerate(self.components)
      for w in component.weights
    ]
    rows.extend(
      {
        'component': 'total',
        'eigenvalue': 1.0,
        'multiplicity': sum(c.multiplicity for c in self.components),
        'partition': w.partition,
        'weight': round_float(w.weight),
      }
      for w in self.total_weights
    )
    return rows


def _check_size(partition: Partition | None, N: int) -> None:
  if partition is not None and partition.size != N:
    raise DomainError(f'--lambda {partition} does not partition N={N}')


def _weight_entries(
  weights: dict[Partition, float], partition: Partition | None
) -> list[WeightEntry]:
  return [
    WeightEntry(partition=str(p), weight=w)
    for p, w in weights.items()
    if partition is None or p == partition
  ]


def _mixture_document(parsed: ParsedDensity, partition: Partition | None) -> MixtureDocument:
  _check_size(partition, parsed.space.particles)
  decomposition = density_sector_weights(parsed.rho, parsed.space)
  return MixtureDocument(
    n=parsed.space.levels,
    N=parsed.space.particles,
    components=[
      ComponentEntry(
        eigenvalue=component.eigenvalue,
        multiplicity=component.multiplicity,
        weights=_weight_entries(component.weights, partition),
      )
      for component in decomposition.components
    ],
    total_weights=_weight_entries(decomposition.total_weights, partition),
  )


@click.command()
@click.argument('source', type=click.File('rb'))
@click.option('--lambda', 'partition', type=PARTITION, default=None, help='Only this sector.')
@output_options
@handle_errors
def project(
  source, partition: Partition | None, tol: float | None, fmt: str, output: Path | None
):
  """Weights of the state(s) in SOURCE in each symmetry sector ('-' reads stdin).

  A document of the form {"density": {"n", "N", "re", "im"}} is split into the
  eigenspaces of the density matrix, each classified by sector.
  """
  parsed = parse_input(source.read())
  if isinstance(parsed, ParsedDensity):
    emit(_mixture_document(parsed, partition), fmt, output)
    return

  entries = []
  for label, psi in parsed.states:
    _check_size(partition, psi.space.particles)
    if partition is None:
      weights = sector_weights(psi)
    else:
      weights = {partition: sector_membership(psi, partition)}
    entries.append(ProjectEntry(label=label, weights=_weight_entries(weights, None)))
  emit(ProjectDocument(entries=entries), fmt, output)

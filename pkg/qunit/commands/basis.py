"""basis: coupled |j,m;d> tables for qubits, isotypic sector bases for any n."""

import logging
from pathlib import Path

import click

from qunit.errors import DomainError
from qunit.models import Document, LabeledState, labeled_state, state_rows
from qunit.services.hilbert import SpaceSpec
from qunit.services.symmetry import Convention, coupled_basis, sector_basis, sector_copies
from qunit.services.tableaux import Partition, enumerate_partitions

from ._common import (
  PARTITION,
  emit,
  handle_errors,
  levels_option,
  output_options,
  particles_option,
)

logger = logging.getLogger(__name__)


class BasisDocument(Document):
  """Orthonormal basis states; readable back by verify and project."""

  N: int
  n: int
  convention: str | None = None
  states: list[LabeledState]

  def title(self) -> str:
    """Basis size and space."""
    return f'Basis, N={self.N}, n={self.n} ({len(self.states)} states)'

  def table_rows(self):
    """One row per nonzero amplitude."""
    return state_rows(self.states)


def _coupled_states(
  particles: int, levels: int, convention: Convention, partition: Partition | None
) -> list[LabeledState]:
  states = []
  for label, vector in coupled_basis(particles, convention, levels=levels).items():
    hosting = label.partition(particles)
    if partition is not None and hosting != partition:
      continue
    states.append(labeled_state(str(label), vector, partition=str(hosting)))
  return states


def _sector_states(space: SpaceSpec, partitions: list[Partition], copies: bool):
  states = []
  for partition in partitions:
    bases = sector_copies(partition, space) if copies else [sector_basis(partition, space)]
    for sector in bases:
      prefix = str(partition)
      if sector.copy_index is not None:
        prefix += f' copy {sector.copy_index}'
      states.extend(
        labeled_state(f'{prefix} #{i}', vector, partition=str(partition))
        for i, vector in enumerate(sector.vectors, start=1)
      )
  return states


@click.command()
@particles_option
@levels_option
@click.option('--lambda', 'partition', type=PARTITION, default=None, help='Restrict to one sector.')
@click.option(
  '--convention',
  type=click.Choice([c.value for c in Convention]),
  default=None,
  help='Coupled-basis convention (qubits only; default sequential-coupling).',
)
@click.option(
  '--copies',
  is_flag=True,
  default=False,
  help='Split the sector into Young symmetrizer images, one per standard tableau.',
)
@output_options
@handle_errors
def basis(
  particles: int,
  levels: int,
  partition: Partition | None,
  convention: str | None,
  copies: bool,
  tol: float | None,
  fmt: str,
  output: Path | None,
):
  """Emit basis vectors per symmetry sector.

  Qubits without --copies get the coupled |j,m;d> basis; otherwise each sector
  comes from Gram-Schmidt over projected product words.
  """
  space = SpaceSpec(levels=levels, particles=particles)
  if partition is not None and partition.size != particles:
    raise DomainError(f'--lambda {partition} does not partition N={particles}')
  if copies and partition is None:
    raise DomainError('--copies needs --lambda')

  if (convention is not None or (levels == 2 and particles >= 2)) and not copies:
    chosen = Convention(convention or Convention.SEQUENTIAL)
    states = _coupled_states(particles, levels, chosen, partition)
    document = BasisDocument(N=particles, n=levels, convention=chosen.value, states=states)
  else:
    partitions = [partition] if partition is not None else enumerate_partitions(particles)
    states = _sector_states(space, partitions, copies)
    document = BasisDocument(N=particles, n=levels, states=states)
  logger.debug(f'basis for {space}: {len(states)} states')
  emit(document, fmt, output)

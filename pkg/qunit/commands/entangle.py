"""entangle: build a maximally entangled candidate basis and verify every state."""

import logging
from enum import Enum
from pathlib import Path

import click
import numpy as np
from pydantic import BaseModel

from qunit.errors import UnsupportedError
from qunit.models import Document, LabeledState, Real, labeled_state, state_rows
from qunit.services.entangle import (
  ghz_basis,
  ghz_labels,
  paper_pair_basis,
  verify_entanglement,
  word_pair_basis,
)
from qunit.services.hilbert import SpaceSpec, StateVector, gram_matrix
from qunit.services.symmetry import Convention

from ._common import (
  emit,
  handle_errors,
  levels_option,
  output_options,
  particles_option,
  resolve_tol,
)

logger = logging.getLogger(__name__)


class Method(str, Enum):
  """Constructions accepted by --method."""

  PAPER_PAIRS = 'paper-pairs'
  GHZ = 'ghz'
  WORD_PAIRS = 'word-pairs'


class EntangleSummary(BaseModel):
  """Gram and entropy summary over the whole family."""

  count: int
  maximal_count: int
  max_overlap: Real
  min_entropy: Real
  max_entropy: Real


class EntangleDocument(Document):
  """A generated family with per-state reports."""

  N: int
  n: int
  method: Method
  summary: EntangleSummary
  states: list[LabeledState]

  def title(self) -> str:
    """Method, space and how many states are maximal."""
    return (
      f'{self.method.value} basis, N={self.N}, n={self.n}: '
      f'{self.summary.maximal_count}/{self.summary.count} maximal'
    )

  def table_rows(self):
    """One row per nonzero amplitude."""
    return state_rows(self.states)


def _ghz_label(k: int, offsets: tuple[int, ...]) -> str:
  return f'k={k}; shifts=' + ','.join(str(a) for a in (0, *offsets))


def _family(
  space: SpaceSpec, method: Method, convention: Convention
) -> list[tuple[str, StateVector]]:
  if method is Method.GHZ:
    return [
      (_ghz_label(k, offsets), vector)
      for (k, offsets), vector in zip(ghz_labels(space), ghz_basis(space))
    ]
  if method is Method.WORD_PAIRS:
    return [(state.description, state.vector) for state in word_pair_basis(space)]
  if space.levels != 2:
    raise UnsupportedError(f'paper-pairs is defined for qubits only, got n={space.levels}')
  paired = paper_pair_basis(space.particles, convention)
  return [(state.description, state.vector) for state in paired]


@click.command()
@particles_option
@levels_option
@click.option(
  '--method',
  type=click.Choice([m.value for m in Method]),
  default=Method.GHZ.value,
  show_default=True,
)
@click.option(
  '--convention',
  type=click.Choice([c.value for c in Convention]),
  default=Convention.SEQUENTIAL.value,
  show_default=True,
  help='Coupled-basis convention used by paper-pairs.',
)
@click.option(
  '--bipartitions', is_flag=True, default=False, help='Also report bipartition entropies.'
)
@output_options
@handle_errors
def entangle(
  particles: int,
  levels: int,
  method: str,
  convention: str,
  bipartitions: bool,
  tol: float | None,
  fmt: str,
  output: Path | None,
):
  """Emit the family with a verification report per state and a Gram summary."""
  space = SpaceSpec(levels=levels, particles=particles)
  chosen = Method(method)
  tol = resolve_tol(tol)
  family = _family(space, chosen, Convention(convention))

  reports = [
    verify_entanglement(vector, tol, include_bipartitions=bipartitions) for _, vector in family
  ]
  gram = gram_matrix([vector for _, vector in family])
  off_diagonal = np.abs(gram - np.diag(np.diag(gram)))
  summary = EntangleSummary(
    count=len(family),
    maximal_count=sum(report.maximal for report in reports),
    max_overlap=float(off_diagonal.max()) if len(family) > 1 else 0.0,
    min_entropy=min(report.min_entropy for report in reports),
    max_entropy=max(report.max_entropy for report in reports),
  )
  logger.info(f'{chosen.value} on {space}: {summary.maximal_count}/{summary.count} maximal')
  document = EntangleDocument(
    N=particles,
    n=levels,
    method=chosen,
    summary=summary,
    states=[
      labeled_state(label, vector, report) for (label, vector), report in zip(family, reports)
    ],
  )
  emit(document, fmt, output)

"""classify: split H^N into symmetry sectors and verify conjugation-paired candidates."""

from pathlib import Path

import click
from pydantic import BaseModel

from qunit.models import Document, Real, round_float
from qunit.services.entangle import classify_all
from qunit.services.hilbert import SpaceSpec

from ._common import (
  emit,
  handle_errors,
  levels_option,
  output_options,
  particles_option,
  resolve_tol,
)


class CandidateEntry(BaseModel):
  """Verdict for one conjugation eigenvector."""

  phase: int
  maximal: bool
  min_entropy: Real
  max_entropy: Real
  rdm_deviation: Real


class SectorEntry(BaseModel):
  """One isotypic component and its paired candidates."""

  partition: str
  frequency: int
  weyl_dim: int
  dimension: int
  basis_size: int
  candidates: list[CandidateEntry]


class ClassifyDocument(Document):
  """Decomposition of H^N by permutation symmetry."""

  N: int
  n: int
  total_dimension: int
  sectors: list[SectorEntry]

  def title(self) -> str:
    """Space and total dimension."""
    return f'Symmetry classification, N={self.N}, n={self.n} (total {self.total_dimension})'

  def table_rows(self):
    """One summary row per sector."""
    return [
      {
        'partition': sector.partition,
        'dimension': sector.dimension,
        'candidates': len(sector.candidates),
        'even': sum(c.phase == 1 for c in sector.candidates),
        'maximal': sum(c.maximal for c in sector.candidates),
        'best_min_entropy': round_float(
          max((c.min_entropy for c in sector.candidates), default=0.0)
        ),
      }
      for sector in self.sectors
    ]


@click.command()
@particles_option
@levels_option
@output_options
@handle_errors
def classify(particles: int, levels: int, tol: float | None, fmt: str, output: Path | None):
  """Per sector: dimension, orthonormal basis size and conjugation-eigenstate verdicts."""
  report = classify_all(SpaceSpec(levels=levels, particles=particles), resolve_tol(tol))
  document = ClassifyDocument(
    N=particles,
    n=levels,
    total_dimension=report.total_dimension,
    sectors=[
      SectorEntry(
        partition=str(sector.partition),
        frequency=sector.frequency,
        weyl_dim=sector.weyl_dim,
        dimension=sector.dimension,
        basis_size=sector.basis.dimension,
        candidates=[
          CandidateEntry(
            phase=candidate.phase,
            maximal=candidate.report.maximal,
            min_entropy=candidate.report.min_entropy,
            max_entropy=candidate.report.max_entropy,
            rdm_deviation=candidate.report.rdm_deviation,
          )
          for candidate in sector.candidates
        ],
      )
      for sector in report.sectors
    ],
  )
  emit(document, fmt, output)

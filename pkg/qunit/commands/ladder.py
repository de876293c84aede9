"""ladder: mean single-particle entropy along every |j,m;d> manifold of N qubits."""

from pathlib import Path

import click
from pydantic import BaseModel

from qunit.models import Document, Real, round_float
from qunit.services.entangle import (
  LADDER_TOL,
  coupled_manifolds,
  ladder_check,
  manifold_profile,
  verify_entanglement,
)
from qunit.services.symmetry import Convention

from ._common import emit, handle_errors, output_options, particles_option, resolve_tol


class PointEntry(BaseModel):
  """One |j,m;d> state: its m, mean entropy and maximality verdict."""

  m: str
  entropy: Real
  maximal: bool


class ManifoldEntry(BaseModel):
  """One (j, d) ladder; ladder_ok means symmetric in m and non-increasing in |m|."""

  j: str
  d: int
  points: list[PointEntry]
  ladder_ok: bool


class LadderDocument(Document):
  """Every manifold of the coupled basis with the tolerances used."""

  N: int
  convention: str
  tolerance: Real
  ladder_tolerance: Real
  manifolds: list[ManifoldEntry]

  def title(self) -> str:
    """Particle count and convention."""
    return f'Entropy ladders, N={self.N} ({self.convention})'

  def table_rows(self):
    """One row per point of every ladder."""
    return [
      {
        'j': manifold.j,
        'd': manifold.d,
        'm': point.m,
        'entropy': round_float(point.entropy),
        'maximal': point.maximal,
        'ladder_ok': manifold.ladder_ok,
      }
      for manifold in self.manifolds
      for point in manifold.points
    ]


@click.command()
@particles_option
@click.option(
  '--convention',
  type=click.Choice([c.value for c in Convention]),
  default=Convention.SEQUENTIAL.value,
  show_default=True,
)
@click.option(
  '--ladder-tol',
  type=click.FloatRange(min=0, min_open=True),
  default=LADDER_TOL,
  show_default=True,
  help='Slack for the m -> -m symmetry and |m| monotonicity of each ladder.',
)
@output_options
@handle_errors
def ladder(
  particles: int,
  convention: str,
  ladder_tol: float,
  tol: float | None,
  fmt: str,
  output: Path | None,
):
  """Entropy profile per manifold, the symmetric j = N/2 ladder first.

  --tol is the maximality verdict tolerance of each point; --ladder-tol only
  decides ladder_ok.
  """
  tol = resolve_tol(tol)
  manifolds = []
  for (_, d), states in coupled_manifolds(particles, Convention(convention)).items():
    profile = manifold_profile(states)
    manifolds.append(
      ManifoldEntry(
        j=str(states[0][0].j),
        d=d,
        points=[
          PointEntry(
            m=str(point.m),
            entropy=point.entropy,
            maximal=verify_entanglement(vector, tol).maximal,
          )
          for point, (_, vector) in zip(profile, states)
        ],
        ladder_ok=ladder_check(profile, ladder_tol),
      )
    )
  document = LadderDocument(
    N=particles,
    convention=convention,
    tolerance=tol,
    ladder_tolerance=ladder_tol,
    manifolds=manifolds,
  )
  emit(document, fmt, output)

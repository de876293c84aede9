"""Maximally entangled bases from conjugate pairing, and their verification.

A state is called maximally entangled when every single-particle reduced
density matrix equals I/n. The verdict compares matrix entries against I/n;
entropies are reported alongside but are not used to decide.
"""

import cmath
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from math import sqrt

import numpy as np

from qunit.config import get_settings
from qunit.errors import BoundsError, DegeneratePairError, DomainError
from qunit.services.hilbert import (
  BasisWord,
  SpaceSpec,
  StateVector,
  bipartition_entropies,
  conjugate_state,
  conjugate_word,
  inner_product,
  single_particle_rdms,
  von_neumann_entropy,
)
from qunit.services.symmetry import (
  Convention,
  CoupledLabel,
  SectorBasis,
  coupled_basis,
  isotypic_projector,
  orthonormalize,
)
from qunit.services.tableaux import (
  Partition,
  enumerate_partitions,
  hook_length_dim,
  weyl_dim,
)

logger = logging.getLogger(__name__)

MAX_PAIR_PARTICLES = 6
NORMALIZATION_TOL = 1e-9
PARALLEL_TOL = 1e-10
LADDER_TOL = 1e-9


class Provenance(str, Enum):
  """How a paired state was produced."""

  COUPLED = 'coupled-pairing'
  WORD = 'word-pairing'
  UNPAIRED = 'unpaired'


@dataclass(frozen=True)
class PairedState:
  """A normalized combination of a state with its conjugate partner."""

  source: CoupledLabel | BasisWord | None
  phase: complex
  vector: StateVector
  provenance: Provenance
  description: str = ''


def _check_normalized(psi: StateVector) -> None:
  norm = psi.norm()
  if abs(norm - 1) > NORMALIZATION_TOL:
    raise DomainError(f'State must be normalized, got norm {norm:.12g}')


def _word_text(word: BasisWord) -> str:
  return '|' + ''.join(str(letter) for letter in word) + '>'


def _sign(phase: complex) -> str:
  return '+' if phase == 1 else '-' if phase == -1 else f'+ ({phase:.6g})'


def pair_conjugates(
  psi: StateVector,
  phase: complex = 1,
  source: CoupledLabel | BasisWord | None = None,
  provenance: Provenance = Provenance.COUPLED,
) -> PairedState:
  """normalize(psi + phase * conjugate_state(psi)).

  Raises:
      DegeneratePairError: psi is parallel to its own conjugate, so one phase
          cancels it and the other returns psi unchanged.
  """
  if abs(abs(phase) - 1) > 1e-12:
    raise DomainError(f'Phase must have modulus 1, got {phase}')
  _check_normalized(psi)
  partner = conjugate_state(psi)
  overlap = inner_product(psi, partner)
  if abs(overlap) > 1 - PARALLEL_TOL:
    raise DegeneratePairError(
      f'State is its own conjugate up to phase (overlap {overlap:.6g}); pairing is degenerate'
    )
  vector = (psi + partner * phase).normalized()
  if isinstance(source, tuple):
    mirrored = conjugate_word(source, psi.space.levels)
    description = f'{_word_text(source)} {_sign(phase)} {_word_text(mirrored)}'
  elif source is not None:
    description = f'{source} {_sign(phase)} conj{source}'
  else:
    description = ''
  return PairedState(source, complex(phase), vector, provenance, description)


def paper_pair_basis(N: int, convention: Convention = Convention.SEQUENTIAL) -> list[PairedState]:
  """2^N states |j,m;d> +/- |j,-m;d> for m > 0, plus every |j,0;d> unpaired."""
  if not 2 <= N <= MAX_PAIR_PARTICLES:
    raise BoundsError(f'N={N} is outside the supported range 2..{MAX_PAIR_PARTICLES}')
  basis = coupled_basis(N, convention)
  states = []
  for label, vector in basis.items():
    if label.two_m < 0:
      continue
    if label.two_m == 0:
      states.append(PairedState(label, 1, vector, Provenance.UNPAIRED, str(label)))
      continue
    partner = label.partner()
    for phase in (1, -1):
      combined = (vector + basis[partner] * phase).normalized()
      states.append(
        PairedState(
          label, complex(phase), combined, Provenance.COUPLED, f'{label} {_sign(phase)} {partner}'
        )
      )
  logger.debug(f'Paired basis for N={N} ({Convention(convention).value}): {len(states)} states')
  return states


def ghz_labels(space: SpaceSpec) -> list[tuple[int, tuple[int, ...]]]:
  """(k, offsets) for each ghz_basis element, in the same order."""
  n = space.levels
  return [
    (k, offsets) for offsets in product(range(n), repeat=space.particles - 1) for k in range(n)
  ]


def ghz_basis(space: SpaceSpec) -> list[StateVector]:
  """(1/sqrt n) sum_l w^(k l) |l, l+a_2, ..., l+a_N>, w = exp(2 pi i / n), shifts mod n.

  Level shifts are cyclic rather than reversals so that every orbit has n
  elements, and the signs are n-th roots of unity so the n^N states are
  orthogonal for every n.
  """
  n = space.levels
  omega = cmath.exp(2j * cmath.pi / n)
  states = []
  for k, offsets in ghz_labels(space):
    amplitudes = {
      tuple((level + a) % n + 1 for a in (0, *offsets)): omega ** (k * level) / sqrt(n)
      for level in range(n)
    }
    states.append(StateVector.from_words(space, amplitudes))
  logger.debug(f'GHZ basis for {space}: {len(states)} states')
  return states


def word_pair_basis(space: SpaceSpec) -> list[PairedState]:
  """Product words paired with their level-reversed partners; self-conjugate words stay alone."""
  states = []
  for word in space.words():
    partner = conjugate_word(word, space.levels)
    if word == partner:
      states.append(
        PairedState(
          word,
          1,
          StateVector.basis_state(space, word),
          Provenance.UNPAIRED,
          _word_text(word),
        )
      )
    elif word < partner:
      psi = StateVector.basis_state(space, word)
      states.extend(
        pair_conjugates(psi, phase, source=word, provenance=Provenance.WORD) for phase in (1, -1)
      )
  return states


@dataclass(frozen=True)
class EntanglementReport:
  """Single-particle reduced density matrix summary of one state."""

  per_particle_entropy: tuple[float, ...]
  per_particle_spectrum: tuple[tuple[float, ...], ...]
  per_particle_deviation: tuple[float, ...]
  maximal: bool
  tolerance_used: float
  bipartitions: tuple[tuple[tuple[int, ...], float], ...] | None = None

  @property
  def min_entropy(self) -> float:
    """Smallest single-particle entropy."""
    return min(self.per_particle_entropy)

  @property
  def max_entropy(self) -> float:
    """Largest single-particle entropy."""
    return max(self.per_particle_entropy)

  @property
  def rdm_deviation(self) -> float:
    """Worst max-abs deviation of a single-particle RDM from I/n."""
    return max(self.per_particle_deviation)


def verify_entanglement(
  psi: StateVector, tol: float | None = None, include_bipartitions: bool = False
) -> EntanglementReport:
  """Maximal iff every single-particle RDM is within tol of I/n entrywise."""
  tol = get_settings().verdict_tol if tol is None else tol
  if tol <= 0:
    raise DomainError(f'Tolerance must be positive, got {tol}')
  if psi.space.particles < 2:
    raise DomainError('Entanglement needs at least two particles')
  _check_normalized(psi)
  psi = psi.normalized()
  rdms = single_particle_rdms(psi)
  deviations = tuple(rho.deviation_from_maximally_mixed() for rho in rdms)
  return EntanglementReport(
    per_particle_entropy=tuple(von_neumann_entropy(rho) for rho in rdms),
    per_particle_spectrum=tuple(
      tuple(float(p) for p in sorted(rho.eigenvalues, reverse=True)) for rho in rdms
    ),
    per_particle_deviation=deviations,
    maximal=all(d < tol for d in deviations),
    tolerance_used=tol,
    bipartitions=tuple(bipartition_entropies(psi)) if include_bipartitions else None,
  )


@dataclass(frozen=True)
class LadderPoint:
  """Mean single-particle entropy of the state with weight m."""

  m: Fraction
  entropy: float


def manifold_profile(manifold: Sequence[tuple[CoupledLabel, StateVector]]) -> list[LadderPoint]:
  """Entropy along one (j, d) ladder, m descending."""
  if not manifold:
    raise DomainError('Manifold is empty')
  keys = {label.manifold for label, _ in manifold}
  if len(keys) > 1:
    raise DomainError(f'Manifold mixes (2j, d) sectors {sorted(keys)}')
  points = []
  for label, vector in manifold:
    entropies = [von_neumann_entropy(rho) for rho in single_particle_rdms(vector)]
    points.append(LadderPoint(label.m, float(np.mean(entropies))))
  return sorted(points, key=lambda point: point.m, reverse=True)


def coupled_manifolds(
  N: int, convention: Convention = Convention.SEQUENTIAL
) -> dict[tuple[int, int], list[tuple[CoupledLabel, StateVector]]]:
  """coupled_basis grouped into (2j, d) ladders."""
  manifolds: dict[tuple[int, int], list[tuple[CoupledLabel, StateVector]]] = {}
  for label, vector in coupled_basis(N, convention).items():
    manifolds.setdefault(label.manifold, []).append((label, vector))
  return manifolds


def dicke_manifold(N: int) -> list[tuple[CoupledLabel, StateVector]]:
  """The fully symmetric j = N/2 ladder."""
  return coupled_manifolds(N)[(N, 1)]


def ladder_check(profile: Sequence[LadderPoint], tol: float = LADDER_TOL) -> bool:
  """True when entropies are symmetric under m -> -m and do not grow with |m|."""
  by_m = {point.m: point.entropy for point in profile}
  symmetric = all(abs(e - by_m.get(-m, float('inf'))) <= tol for m, e in by_m.items())
  outward = [by_m[m] for m in sorted(by_m, key=abs)]
  monotone = all(b <= a + tol for a, b in zip(outward, outward[1:]))
  return symmetric and monotone


@dataclass(frozen=True)
class SectorCandidate:
  """A conjugation eigenvector (phase +1 or -1) inside one isotypic component."""

  phase: int
  vector: StateVector
  report: EntanglementReport


@dataclass(frozen=True)
class SectorReport:
  """One lambda of the decomposition with its basis and paired candidates."""

  partition: Partition
  frequency: int
  weyl_dim: int
  basis: SectorBasis
  candidates: tuple[SectorCandidate, ...]

  @property
  def dimension(self) -> int:
    """f^lambda * dim T^lambda."""
    return self.frequency * self.weyl_dim


@dataclass(frozen=True)
class DecompositionReport:
  """classify_all output for one space."""

  space: SpaceSpec
  sectors: tuple[SectorReport, ...]

  @property
  def total_dimension(self) -> int:
    """Sum of sector dimensions; equals n^N."""
    return sum(sector.dimension for sector in self.sectors)


def _conjugate_rows(matrix: np.ndarray, space: SpaceSpec) -> np.ndarray:
  """C @ matrix, C being level reversal on every particle."""
  tensor = matrix.reshape(space.shape + (matrix.shape[1],))
  return np.flip(tensor, axis=tuple(range(space.particles))).reshape(matrix.shape)


def classify_all(space: SpaceSpec, tol: float | None = None) -> DecompositionReport:
  """Split H^N into isotypic components and verify conjugation-paired candidates in each.

  Level reversal commutes with every particle permutation, so each component
  splits into its +1 and -1 conjugation eigenspaces. Candidates are
  Gram-Schmidt over P|w> + phase * C P|w>, i.e. pair_conjugates applied to
  projected product words.
  """
  sectors = []
  for partition in enumerate_partitions(space.particles):
    frequency = hook_length_dim(partition)
    dim_t = weyl_dim(partition, space.levels)
    dimension = frequency * dim_t
    if dimension == 0:
      sectors.append(SectorReport(partition, frequency, dim_t, SectorBasis(partition, ()), ()))
      continue
    projector = isotypic_projector(partition, space)
    basis_vectors = orthonormalize(list(projector.T), limit=dimension)
    basis = SectorBasis(partition, tuple(StateVector(space, v) for v in basis_vectors))

    flipped = _conjugate_rows(projector, space)
    # tr(C P) = dim(+1 eigenspace) - dim(-1 eigenspace)
    even = int(round((dimension + np.trace(flipped)) / 2))
    candidates = []
    for phase, count in ((1, even), (-1, dimension - even)):
      for vector in orthonormalize(list((projector + phase * flipped).T), limit=count):
        psi = StateVector(space, vector)
        candidates.append(SectorCandidate(phase, psi, verify_entanglement(psi, tol)))
    logger.debug(f'{space} sector {partition}: dimension {dimension}, {len(candidates)} candidates')
    sectors.append(SectorReport(partition, frequency, dim_t, basis, tuple(candidates)))
  return DecompositionReport(space, tuple(sectors))

"""Action of S_N on H^N: characters, projectors, symmetrizers and the |j,m;d> basis.

Permutation operators U(sigma) come from ``hilbert.permutation_index``. Dense
operators are only built for N <= 6 and n^N <= 729; larger spaces go through
the apply-only entry points.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import pairwise, permutations, product
from math import factorial, prod, sqrt

import numpy as np
from scipy.linalg import eigh
from sympy import Rational
from sympy.physics.wigner import clebsch_gordan

from qunit.errors import BoundsError, DomainError, UnsupportedError
from qunit.services.hilbert import (
  DensityMatrix,
  Permutation,
  SpaceSpec,
  StateVector,
  cycle_type,
  permutation_index,
  permutation_sign,
)
from qunit.services.tableaux import (
  Partition,
  StandardTableau,
  enumerate_partitions,
  enumerate_standard_tableaux,
  hook_length_dim,
  weyl_dim,
)

logger = logging.getLogger(__name__)

MAX_CHARACTER_SIZE = 8
MAX_DENSE_PARTICLES = 6
MAX_DENSE_DIMENSION = 3**6
MAX_APPLY_PARTICLES = 8
MAX_COUPLED_PARTICLES = 8
GRAM_SCHMIDT_CUTOFF = 1e-9
EIGENVALUE_CUTOFF = 1e-12
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class ConjugacyClass:
  """Permutations of one cycle type."""

  cycle_type: Partition
  size: int

  def __str__(self) -> str:
    return str(self.cycle_type)


def conjugacy_classes(N: int) -> list[ConjugacyClass]:
  """Classes of S_N in partition order; size N! / z_mu with z_mu = prod i^m_i m_i!."""
  classes = []
  for mu in enumerate_partitions(N):
    z = prod(i ** mu.parts.count(i) * factorial(mu.parts.count(i)) for i in set(mu.parts))
    classes.append(ConjugacyClass(cycle_type=mu, size=factorial(N) // z))
  return classes


@lru_cache(maxsize=None)
def _murnaghan_nakayama(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
  # Rim hooks are removed on the beta-set: a hook of length r moves one bead from b to b - r,
  # and its height is the number of beads jumped over.
  if not cycles:
    return 1
  r, rest = cycles[0], cycles[1:]
  k = len(shape)
  beta = [part + k - 1 - i for i, part in enumerate(shape)]
  occupied = set(beta)
  total = 0
  for b in beta:
    target = b - r
    if target < 0 or target in occupied:
      continue
    height = sum(1 for c in beta if target < c < b)
    moved = sorted((occupied - {b}) | {target}, reverse=True)
    smaller = tuple(x - (k - 1 - i) for i, x in enumerate(moved))
    total += (-1) ** height * _murnaghan_nakayama(tuple(p for p in smaller if p), rest)
  return total


def character(partition: Partition, cls: ConjugacyClass | Partition) -> int:
  """chi^lambda on a conjugacy class, by the Murnaghan-Nakayama rule."""
  mu = cls.cycle_type if isinstance(cls, ConjugacyClass) else cls
  if partition.size != mu.size:
    raise DomainError(f'Partition {partition} and class {mu} belong to different S_N')
  if partition.size > MAX_CHARACTER_SIZE:
    raise BoundsError(f'N={partition.size} exceeds the character limit {MAX_CHARACTER_SIZE}')
  return _murnaghan_nakayama(partition.parts, mu.parts)


@dataclass(frozen=True)
class CharacterTable:
  """chi^lambda(class) with partitions as rows and classes as columns."""

  partitions: tuple[Partition, ...]
  classes: tuple[ConjugacyClass, ...]
  values: tuple[tuple[int, ...], ...]


def character_table(N: int) -> CharacterTable:
  """chi^lambda on every class of S_N."""
  partitions = tuple(enumerate_partitions(N))
  classes = tuple(conjugacy_classes(N))
  values = tuple(tuple(character(p, c) for c in classes) for p in partitions)
  return CharacterTable(partitions=partitions, classes=classes, values=values)


def _check_dense(space: SpaceSpec) -> None:
  if space.particles > MAX_DENSE_PARTICLES or space.dim > MAX_DENSE_DIMENSION:
    raise BoundsError(
      f'Dense operators need N <= {MAX_DENSE_PARTICLES} and n^N <= {MAX_DENSE_DIMENSION}, '
      f'got {space}; use the apply-only form'
    )


def _check_partition(partition: Partition, space: SpaceSpec) -> None:
  if partition.size != space.particles:
    raise DomainError(f'Partition {partition} does not partition N={space.particles}')


def _class_coefficients(partition: Partition) -> dict[tuple[int, ...], float]:
  """f^lambda / N! * chi^lambda per cycle type."""
  scale = hook_length_dim(partition) / factorial(partition.size)
  return {
    cls.cycle_type.parts: scale * character(partition, cls)
    for cls in conjugacy_classes(partition.size)
  }


def _all_permutations(N: int) -> Iterable[Permutation]:
  return permutations(range(1, N + 1))


def isotypic_projector(partition: Partition, space: SpaceSpec) -> np.ndarray:
  """P_lambda = f^lambda / N! * sum_sigma chi^lambda(sigma) U(sigma), as a dense real matrix."""
  _check_partition(partition, space)
  _check_dense(space)
  coefficients = _class_coefficients(partition)
  projector = np.zeros((space.dim, space.dim))
  rows = np.arange(space.dim)
  for sigma in _all_permutations(space.particles):
    weight = coefficients[cycle_type(sigma)]
    if weight:
      projector[rows, permutation_index(sigma, space)] += weight
  logger.debug(f'Built isotypic projector {partition} on {space}')
  return projector


def _class_sums(psi: StateVector) -> dict[tuple[int, ...], np.ndarray]:
  """sum over sigma in each class of U(sigma) psi."""
  space = psi.space
  sums: dict[tuple[int, ...], np.ndarray] = {}
  for sigma in _all_permutations(space.particles):
    key = cycle_type(sigma)
    moved = psi.amplitudes[permutation_index(sigma, space)]
    sums[key] = sums[key] + moved if key in sums else moved.copy()
  return sums


def _project_from_class_sums(
  partition: Partition, sums: dict[tuple[int, ...], np.ndarray], space: SpaceSpec
) -> StateVector:
  coefficients = _class_coefficients(partition)
  out = np.zeros(space.dim, dtype=complex)
  for key, vector in sums.items():
    out += coefficients[key] * vector
  return StateVector(space, out)


def apply_isotypic_projector(partition: Partition, psi: StateVector) -> StateVector:
  """P_lambda psi without building the matrix (N <= 8)."""
  _check_partition(partition, psi.space)
  if psi.space.particles > MAX_APPLY_PARTICLES:
    raise BoundsError(f'N={psi.space.particles} exceeds the apply limit {MAX_APPLY_PARTICLES}')
  return _project_from_class_sums(partition, _class_sums(psi), psi.space)


def sector_membership(psi: StateVector, partition: Partition) -> float:
  """||P_lambda psi||^2; for a normalized psi the weights over all lambda sum to 1."""
  return apply_isotypic_projector(partition, psi).norm() ** 2


def sector_weights(psi: StateVector) -> dict[Partition, float]:
  """Membership weight of psi in every isotypic component."""
  if psi.space.particles > MAX_APPLY_PARTICLES:
    raise BoundsError(f'N={psi.space.particles} exceeds the apply limit {MAX_APPLY_PARTICLES}')
  sums = _class_sums(psi)
  return {
    p: _project_from_class_sums(p, sums, psi.space).norm() ** 2
    for p in enumerate_partitions(psi.space.particles)
  }


@dataclass(frozen=True)
class MixtureComponent:
  """One eigenspace of a density matrix and its sector weights.

  Weights are averaged over an orthonormal basis of the eigenspace, which makes
  them independent of how degenerate eigenvectors are chosen.
  """

  eigenvalue: float
  multiplicity: int
  weights: dict[Partition, float]


@dataclass(frozen=True)
class MixtureDecomposition:
  """Eigenspaces in descending eigenvalue order, plus Tr(P_lambda rho) per lambda."""

  components: tuple[MixtureComponent, ...]
  total_weights: dict[Partition, float]


def density_sector_weights(
  rho: DensityMatrix, space: SpaceSpec, cutoff: float = EIGENVALUE_CUTOFF
) -> MixtureDecomposition:
  """Split rho into eigenspaces and classify each by isotypic sector.

  Eigenvalues at or below cutoff are dropped; eigenvalues closer than
  DEGENERACY_TOL are grouped into one component.

  Raises:
      DomainError: rho does not act on the n^N-dimensional space.
      BoundsError: the space is too large for a dense eigendecomposition.
      NumericalValidityError: rho is not a valid density matrix.
  """
  if rho.dim != space.dim:
    raise DomainError(f'Density matrix has dimension {rho.dim}, but {space} needs {space.dim}')
  _check_dense(space)
  rho.validate()
  eigenvalues, eigenvectors = eigh(rho.entries)
  order = np.argsort(eigenvalues)[::-1]
  groups: list[list[int]] = []
  for i in order:
    if eigenvalues[i] <= cutoff:
      break
    if groups and eigenvalues[groups[-1][0]] - eigenvalues[i] <= DEGENERACY_TOL:
      groups[-1].append(int(i))
    else:
      groups.append([int(i)])

  partitions = enumerate_partitions(space.particles)
  components = []
  total = dict.fromkeys(partitions, 0.0)
  for group in groups:
    eigenvalue = float(np.mean(eigenvalues[group]))
    weights = dict.fromkeys(partitions, 0.0)
    for i in group:
      for p, w in sector_weights(StateVector(space, eigenvectors[:, i])).items():
        weights[p] += w / len(group)
    for p, w in weights.items():
      total[p] += eigenvalue * len(group) * w
    components.append(MixtureComponent(eigenvalue, len(group), weights))
  logger.debug(f'Density matrix on {space}: {len(components)} eigenspaces above {cutoff}')
  return MixtureDecomposition(tuple(components), total)


def _line_group(lines: Sequence[Sequence[int]], N: int) -> list[Permutation]:
  """Permutations that only shuffle entries within each line (row or column)."""
  group = []
  for shuffles in product(*(permutations(line) for line in lines)):
    images = list(range(1, N + 1))
    for line, shuffled in zip(lines, shuffles):
      for source, target in zip(line, shuffled):
        images[source - 1] = target
    group.append(tuple(images))
  return group


def _operator_sum(terms: Iterable[tuple[Permutation, int]], space: SpaceSpec) -> np.ndarray:
  matrix = np.zeros((space.dim, space.dim))
  rows = np.arange(space.dim)
  for sigma, weight in terms:
    matrix[rows, permutation_index(sigma, space)] += weight
  return matrix


def young_symmetrizer(tableau: StandardTableau, space: SpaceSpec) -> np.ndarray:
  """c_t = (sum over row group U(sigma)) (sum over column group sign(tau) U(tau))."""
  N = space.particles
  _check_partition(tableau.shape, space)
  _check_dense(space)
  rows = _operator_sum(((s, 1) for s in _line_group(tableau.rows, N)), space)
  columns = _operator_sum(
    ((t, permutation_sign(t)) for t in _line_group(tableau.columns, N)), space
  )
  return rows @ columns


def orthonormalize(
  candidates: Iterable[np.ndarray], limit: int | None = None, cutoff: float = GRAM_SCHMIDT_CUTOFF
) -> list[np.ndarray]:
  """Modified Gram-Schmidt (two passes) keeping candidates in order; stops after limit vectors."""
  basis: list[np.ndarray] = []
  for candidate in candidates:
    if limit is not None and len(basis) >= limit:
      break
    vector = np.array(candidate, dtype=complex)
    for _ in range(2):
      for q in basis:
        vector -= np.vdot(q, vector) * q
    norm = np.linalg.norm(vector)
    if norm > cutoff:
      basis.append(vector / norm)
  return basis


@dataclass(frozen=True)
class SectorBasis:
  """Orthonormal vectors spanning an isotypic component, or one copy of T^lambda in it."""

  partition: Partition
  vectors: tuple[StateVector, ...]
  copy_index: int | None = None

  @property
  def dimension(self) -> int:
    """Number of vectors."""
    return len(self.vectors)


def sector_dimension(partition: Partition, n: int) -> int:
  """f^lambda * dim T^lambda, the dimension of the isotypic component."""
  return hook_length_dim(partition) * weyl_dim(partition, n)


def sector_basis(partition: Partition, space: SpaceSpec) -> SectorBasis:
  """Gram-Schmidt over P_lambda|w> in word order."""
  projector = isotypic_projector(partition, space)
  expected = sector_dimension(partition, space.levels)
  columns = (projector[:, i] for i in range(space.dim))
  vectors = orthonormalize(columns, limit=expected)
  if len(vectors) != expected:
    logger.warning(
      f'Sector {partition} on {space}: found {len(vectors)} vectors, expected {expected}'
    )
  return SectorBasis(partition, tuple(StateVector(space, v) for v in vectors))


def sector_copies(partition: Partition, space: SpaceSpec) -> list[SectorBasis]:
  """One SectorBasis per standard tableau: the image of its Young symmetrizer."""
  copies = []
  for index, tableau in enumerate(enumerate_standard_tableaux(partition)):
    symmetrizer = young_symmetrizer(tableau, space)
    columns = (symmetrizer[:, i] for i in range(space.dim))
    vectors = orthonormalize(columns, limit=weyl_dim(partition, space.levels))
    copies.append(
      SectorBasis(partition, tuple(StateVector(space, v) for v in vectors), copy_index=index)
    )
  return copies


# Qubit chains: level 1 is spin up (m = +1/2), level 2 is spin down.


class Convention(str, Enum):
  """How degenerate |j,m;d> copies are fixed."""

  SEQUENTIAL = 'sequential-coupling'
  FIXTURES = 'paper-fixtures'


@dataclass(frozen=True)
class CoupledLabel:
  """|j, m; d> stored as 2j, 2m so half-integers stay exact."""

  two_j: int
  two_m: int
  d: int = 1

  def __post_init__(self):
    if self.two_j < 0 or abs(self.two_m) > self.two_j or (self.two_j - self.two_m) % 2:
      raise DomainError(f'Invalid angular momentum pair 2j={self.two_j}, 2m={self.two_m}')
    if self.d < 1:
      raise DomainError(f'Degeneracy index must be >= 1, got {self.d}')

  @classmethod
  def of(cls, j: Fraction | float | str, m: Fraction | float | str, d: int = 1) -> 'CoupledLabel':
    """CoupledLabel.of('3/2', '-1/2', 1)."""
    return cls(int(Fraction(j) * 2), int(Fraction(m) * 2), d)

  @property
  def j(self) -> Fraction:
    """Total spin as a Fraction."""
    return Fraction(self.two_j, 2)

  @property
  def m(self) -> Fraction:
    """J_z eigenvalue as a Fraction."""
    return Fraction(self.two_m, 2)

  @property
  def manifold(self) -> tuple[int, int]:
    """(2j, d) shared by the states of one ladder."""
    return self.two_j, self.d

  def partner(self) -> 'CoupledLabel':
    """Label of the state with the opposite m."""
    return CoupledLabel(self.two_j, -self.two_m, self.d)

  def partition(self, N: int) -> Partition:
    """lambda = [N/2 + j, N/2 - j] hosting this label."""
    return Partition(tuple(p for p in ((N + self.two_j) // 2, (N - self.two_j) // 2) if p))

  def __str__(self) -> str:
    return f'|{self.j},{self.m};{self.d}>'


@lru_cache(maxsize=None)
def _cg(two_j1: int, two_m1: int, two_j2: int, two_m2: int, two_j: int, two_m: int) -> float:
  """<j1 m1; j2 m2 | j m> with Condon-Shortley phases."""
  half = Rational(1, 2)
  return float(
    clebsch_gordan(
      two_j1 * half, two_j2 * half, two_j * half, two_m1 * half, two_m2 * half, two_m * half
    )
  )


_SPIN = {1: np.array([1.0, 0.0]), -1: np.array([0.0, 1.0])}


def _coupling_paths(N: int) -> list[tuple[int, ...]]:
  """Intermediate 2j values after each particle; larger intermediate spins sort first."""
  paths = [(1,)]
  for _ in range(N - 1):
    paths = [
      path + (path[-1] + step,) for path in paths for step in (1, -1) if path[-1] + step >= 0
    ]
  return sorted(paths, reverse=True)


def _couple_path(path: tuple[int, ...]) -> dict[int, np.ndarray]:
  """Vectors |j_N, m> for every 2m reachable along one coupling path."""
  states = dict(_SPIN)
  for previous, two_j in pairwise(path):
    coupled = {}
    for two_m in range(-two_j, two_j + 1, 2):
      vector = 0.0
      for two_ms, single in _SPIN.items():
        two_m_prev = two_m - two_ms
        if abs(two_m_prev) > previous:
          continue
        coefficient = _cg(previous, two_m_prev, 1, two_ms, two_j, two_m)
        if coefficient:
          vector = vector + coefficient * np.kron(states[two_m_prev], single)
      coupled[two_m] = vector
    states = coupled
  return states


def _sequential_basis(N: int) -> dict[CoupledLabel, np.ndarray]:
  space_dim = 2**N
  by_j: dict[int, list[tuple[int, ...]]] = {}
  for path in _coupling_paths(N):
    by_j.setdefault(path[-1], []).append(path)
  basis = {}
  for two_j in sorted(by_j, reverse=True):
    for d, path in enumerate(by_j[two_j], start=1):
      for two_m, vector in sorted(_couple_path(path).items(), reverse=True):
        basis[CoupledLabel(two_j, two_m, d)] = np.asarray(vector, dtype=complex).reshape(space_dim)
  return basis


def _fixture_tables(N: int) -> dict[CoupledLabel, dict[tuple[int, ...], float]]:
  r2, r3, r6 = 1 / sqrt(2), 1 / sqrt(3), 1 / sqrt(6)
  if N == 2:
    return {
      CoupledLabel(2, 2): {(1, 1): 1.0},
      CoupledLabel(2, 0): {(1, 2): r2, (2, 1): r2},
      CoupledLabel(2, -2): {(2, 2): 1.0},
      CoupledLabel(0, 0): {(1, 2): r2, (2, 1): -r2},
    }
  return {
    CoupledLabel(3, 3): {(1, 1, 1): 1.0},
    CoupledLabel(3, 1): {(1, 1, 2): r3, (1, 2, 1): r3, (2, 1, 1): r3},
    CoupledLabel(3, -1): {(2, 2, 1): r3, (2, 1, 2): r3, (1, 2, 2): r3},
    CoupledLabel(3, -3): {(2, 2, 2): 1.0},
    CoupledLabel(1, 1, 1): {(2, 1, 1): 2 * r6, (1, 1, 2): -r6, (1, 2, 1): -r6},
    CoupledLabel(1, -1, 1): {(2, 1, 2): r6, (2, 2, 1): r6, (1, 2, 2): -2 * r6},
    CoupledLabel(1, 1, 2): {(1, 1, 2): r2, (1, 2, 1): -r2},
    CoupledLabel(1, -1, 2): {(2, 2, 1): r2, (2, 1, 2): -r2},
  }


def coupled_basis(
  N: int, convention: Convention = Convention.SEQUENTIAL, levels: int = 2
) -> dict[CoupledLabel, StateVector]:
  """Total angular momentum basis |j,m;d> of N qubits.

  Sequential coupling adds particles left to right, ((1 (x) 2) (x) 3) ..., with
  Condon-Shortley Clebsch-Gordan coefficients; d counts coupling paths, larger
  intermediate spins first. The paper-fixtures convention returns fixed reference
  two- and three-particle tables verbatim (N <= 3 only).

  Returns:
      Labels ordered by j descending, then d, then m descending.
  """
  if levels != 2:
    raise UnsupportedError(
      f'The |j,m;d> basis is defined for qubits only (n=2, got n={levels}); '
      'use isotypic_projector for n >= 3'
    )
  convention = Convention(convention)
  if not 2 <= N <= MAX_COUPLED_PARTICLES:
    raise BoundsError(f'N={N} is outside the supported range 2..{MAX_COUPLED_PARTICLES}')
  space = SpaceSpec(levels=2, particles=N)
  if convention is Convention.FIXTURES:
    if N > 3:
      raise UnsupportedError(f'paper-fixtures exist for N <= 3 only, got N={N}')
    return {
      label: StateVector.from_words(space, words) for label, words in _fixture_tables(N).items()
    }
  basis = {label: StateVector(space, v) for label, v in _sequential_basis(N).items()}
  logger.debug(f'Coupled basis for N={N}: {len(basis)} states')
  return basis


def _require_qubits(psi: StateVector) -> None:
  if psi.space.levels != 2:
    raise UnsupportedError(f'Spin operators need n=2, got n={psi.space.levels}')


def lowering(psi: StateVector) -> StateVector:
  """J- = sum over particles of the level 1 -> level 2 transition."""
  _require_qubits(psi)
  tensor = psi.tensor
  out = np.zeros_like(tensor)
  for axis in range(psi.space.particles):
    target = [slice(None)] * psi.space.particles
    target[axis] = 1
    out[tuple(target)] += np.take(tensor, 0, axis=axis)
  return StateVector(psi.space, out.reshape(-1))


def total_spin_z(psi: StateVector) -> float:
  """<psi| J_z |psi> with J_z = (#level-1 letters - #level-2 letters) / 2."""
  _require_qubits(psi)
  weights = np.array([(w.count(1) - w.count(2)) / 2 for w in psi.space.words()])
  return float(np.sum(weights * np.abs(psi.amplitudes) ** 2))

"""Dense state vectors over the n^N product basis.

Words are 1-indexed (|112> is the word (1, 1, 2)) and ordered lexicographically
with the leftmost letter most significant, which is numpy's C order for an
array of shape (n,) * N. Internally levels are 0-indexed.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

import numpy as np
from scipy.linalg import eigvalsh
from scipy.special import entr

from qunit.config import get_settings
from qunit.errors import BoundsError, DomainError, NumericalValidityError

logger = logging.getLogger(__name__)

MAX_PARTICLES = 8
MAX_DIMENSION = 2**20
PSD_SLACK = 1e-10

BasisWord = tuple[int, ...]
Permutation = tuple[int, ...]


@dataclass(frozen=True)
class SpaceSpec:
  """H^N for N particles with n levels each."""

  levels: int
  particles: int

  def __post_init__(self):
    max_levels = get_settings().max_levels
    if not 2 <= self.levels <= max_levels:
      raise BoundsError(f'n={self.levels} is outside the supported range 2..{max_levels}')
    if not 1 <= self.particles <= MAX_PARTICLES:
      raise BoundsError(f'N={self.particles} is outside the supported range 1..{MAX_PARTICLES}')
    if self.dim > MAX_DIMENSION:
      raise BoundsError(f'n^N={self.dim} exceeds the memory guard {MAX_DIMENSION}')

  @property
  def dim(self) -> int:
    """n^N."""
    return self.levels**self.particles

  @property
  def shape(self) -> tuple[int, ...]:
    """(n,) * N, the tensor shape of a state."""
    return (self.levels,) * self.particles

  def words(self) -> Iterable[BasisWord]:
    """All basis words in index order."""
    return product(range(1, self.levels + 1), repeat=self.particles)

  def __str__(self) -> str:
    return f'n={self.levels}, N={self.particles}'


class StateVector:
  """Immutable amplitude array of length n^N indexed by basis word."""

  __slots__ = ('space', 'amplitudes')

  def __init__(self, space: SpaceSpec, amplitudes: np.ndarray):
    array = np.array(amplitudes, dtype=complex).reshape(-1)
    if array.shape != (space.dim,):
      raise DomainError(f'Expected {space.dim} amplitudes for {space}, got {array.size}')
    array.flags.writeable = False
    object.__setattr__(self, 'space', space)
    object.__setattr__(self, 'amplitudes', array)

  def __setattr__(self, name, value):
    raise AttributeError('StateVector is immutable')

  @classmethod
  def from_words(cls, space: SpaceSpec, amplitudes: Mapping[BasisWord, complex]) -> 'StateVector':
    """Sparse constructor; omitted words have amplitude zero."""
    array = np.zeros(space.dim, dtype=complex)
    for word, amplitude in amplitudes.items():
      array[word_index(word, space)] += amplitude
    return cls(space, array)

  @classmethod
  def basis_state(cls, space: SpaceSpec, word: BasisWord) -> 'StateVector':
    """The product state |word>."""
    return cls.from_words(space, {tuple(word): 1.0})

  @property
  def tensor(self) -> np.ndarray:
    """Amplitudes viewed with one axis per particle."""
    return self.amplitudes.reshape(self.space.shape)

  def norm(self) -> float:
    """Euclidean norm."""
    return float(np.linalg.norm(self.amplitudes))

  def normalized(self) -> 'StateVector':
    """psi / ||psi||; DomainError for the zero vector."""
    norm = self.norm()
    if norm < 1e-14:
      raise DomainError('Cannot normalize the zero vector')
    return StateVector(self.space, self.amplitudes / norm)

  def amplitude(self, word: BasisWord) -> complex:
    """Amplitude of one basis word."""
    return complex(self.amplitudes[word_index(word, self.space)])

  def nonzero_words(self, cutoff: float = 1e-13) -> list[tuple[BasisWord, complex]]:
    """(word, amplitude) pairs with |amplitude| above the cutoff, in word order."""
    indices = np.flatnonzero(np.abs(self.amplitudes) > cutoff)
    return [(index_word(int(i), self.space), complex(self.amplitudes[i])) for i in indices]

  def __add__(self, other: 'StateVector') -> 'StateVector':
    _check_same_space(self, other)
    return StateVector(self.space, self.amplitudes + other.amplitudes)

  def __sub__(self, other: 'StateVector') -> 'StateVector':
    _check_same_space(self, other)
    return StateVector(self.space, self.amplitudes - other.amplitudes)

  def __mul__(self, scalar: complex) -> 'StateVector':
    return StateVector(self.space, self.amplitudes * scalar)

  __rmul__ = __mul__

  def __repr__(self) -> str:
    terms = ' + '.join(
      f'({a.real:.4g}{a.imag:+.4g}j)|{"".join(map(str, w))}>' for w, a in self.nonzero_words(1e-9)
    )
    return f'StateVector({self.space}: {terms or "0"})'


class DensityMatrix:
  """Hermitian, unit-trace, positive semidefinite matrix."""

  def __init__(self, entries: np.ndarray):
    matrix = np.array(entries, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
      raise DomainError(f'Density matrix must be square, got shape {matrix.shape}')
    matrix.flags.writeable = False
    self.entries = matrix

  @property
  def dim(self) -> int:
    """Side length of the matrix."""
    return self.entries.shape[0]

  @cached_property
  def eigenvalues(self) -> np.ndarray:
    """Ascending eigenvalues from LAPACK's Hermitian solver."""
    return eigvalsh(self.entries)

  def validate(self, tol: float | None = None) -> 'DensityMatrix':
    """Raise NumericalValidityError unless Hermitian, unit trace and PSD within tolerance."""
    tol = get_settings().structural_tol if tol is None else tol
    hermitian_gap = float(np.max(np.abs(self.entries - self.entries.conj().T)))
    if hermitian_gap > tol:
      raise NumericalValidityError(f'Density matrix is not Hermitian (gap {hermitian_gap:.3g})')
    trace = complex(np.trace(self.entries))
    if abs(trace - 1) > tol:
      raise NumericalValidityError(f'Density matrix trace is {trace:.12g}, expected 1')
    if self.eigenvalues[0] < -PSD_SLACK:
      raise NumericalValidityError(
        f'Density matrix has negative eigenvalue {self.eigenvalues[0]:.3g}'
      )
    return self

  def deviation_from_maximally_mixed(self) -> float:
    """Largest |rho_ij - delta_ij / dim|."""
    target = np.eye(self.dim) / self.dim
    return float(np.max(np.abs(self.entries - target)))


def _check_same_space(psi: StateVector, phi: StateVector) -> None:
  if psi.space != phi.space:
    raise DomainError(f'Space mismatch: {psi.space} vs {phi.space}')


def word_index(word: BasisWord, space: SpaceSpec) -> int:
  """Position of a 1-indexed word in lexicographic order."""
  if len(word) != space.particles:
    raise DomainError(f'Word {list(word)} has length {len(word)}, expected {space.particles}')
  index = 0
  for letter in word:
    if not 1 <= letter <= space.levels:
      raise DomainError(f'Letter {letter} in word {list(word)} is outside 1..{space.levels}')
    index = index * space.levels + (letter - 1)
  return index


def index_word(index: int, space: SpaceSpec) -> BasisWord:
  """Inverse of word_index."""
  if not 0 <= index < space.dim:
    raise DomainError(f'Index {index} is outside 0..{space.dim - 1}')
  return tuple(int(i) + 1 for i in np.unravel_index(index, space.shape))


# Permutations are tuples of images: sigma[k - 1] is where particle k goes (1-indexed).


def _check_permutation(sigma: Sequence[int], particles: int) -> None:
  if len(sigma) != particles:
    raise DomainError(f'Permutation {list(sigma)} has length {len(sigma)}, expected {particles}')
  if sorted(sigma) != list(range(1, particles + 1)):
    raise DomainError(f'{list(sigma)} is not a permutation of 1..{particles}')


def identity_permutation(particles: int) -> Permutation:
  """(1, 2, ..., N)."""
  return tuple(range(1, particles + 1))


def compose_permutations(sigma: Permutation, tau: Permutation) -> Permutation:
  """sigma after tau: k -> sigma(tau(k))."""
  return tuple(sigma[t - 1] for t in tau)


def inverse_permutation(sigma: Permutation) -> Permutation:
  """sigma^-1 as a tuple of images."""
  inverse = [0] * len(sigma)
  for k, image in enumerate(sigma, start=1):
    inverse[image - 1] = k
  return tuple(inverse)


def cycle_type(sigma: Permutation) -> tuple[int, ...]:
  """Cycle lengths, non-increasing."""
  seen = set()
  lengths = []
  for start in range(1, len(sigma) + 1):
    if start in seen:
      continue
    length = 0
    k = start
    while k not in seen:
      seen.add(k)
      k = sigma[k - 1]
      length += 1
    lengths.append(length)
  return tuple(sorted(lengths, reverse=True))


def permutation_sign(sigma: Permutation) -> int:
  """+1 for even permutations, -1 for odd."""
  return -1 if sum(length - 1 for length in cycle_type(sigma)) % 2 else 1


def permutation_index(sigma: Permutation, space: SpaceSpec) -> np.ndarray:
  """Index map p with (U(sigma) psi)[w] = psi[p[w]].

  U(sigma) moves the letter of particle k to position sigma(k).
  """
  _check_permutation(sigma, space.particles)
  axes = [s - 1 for s in inverse_permutation(sigma)]
  grid = np.arange(space.dim).reshape(space.shape)
  return np.transpose(grid, axes).reshape(-1)


def permutation_matrix(sigma: Permutation, space: SpaceSpec) -> np.ndarray:
  """Dense real matrix of U(sigma)."""
  matrix = np.zeros((space.dim, space.dim))
  matrix[np.arange(space.dim), permutation_index(sigma, space)] = 1.0
  return matrix


def apply_permutation(sigma: Permutation, psi: StateVector) -> StateVector:
  """Permute particles: output amplitude at w is the input amplitude at w read through sigma."""
  return StateVector(psi.space, psi.amplitudes[permutation_index(tuple(sigma), psi.space)])


def conjugate_word(word: BasisWord, n: int) -> BasisWord:
  """Level reversal i -> n + 1 - i, letter by letter."""
  if any(not 1 <= letter <= n for letter in word):
    raise DomainError(f'Word {list(word)} has letters outside 1..{n}')
  return tuple(n + 1 - letter for letter in word)


def conjugate_state(psi: StateVector) -> StateVector:
  """Apply level reversal to every particle."""
  return StateVector(psi.space, np.flip(psi.tensor).reshape(-1))


def inner_product(psi: StateVector, phi: StateVector) -> complex:
  """<psi|phi>, conjugate-linear in psi."""
  _check_same_space(psi, phi)
  return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def gram_matrix(states: Sequence[StateVector]) -> np.ndarray:
  """G[i, j] = <states[i]|states[j]>."""
  if not states:
    return np.zeros((0, 0), dtype=complex)
  for other in states[1:]:
    _check_same_space(states[0], other)
  stacked = np.stack([s.amplitudes for s in states])
  return stacked.conj() @ stacked.T


def _normalize_keep(keep: Iterable[int], particles: int) -> tuple[int, ...]:
  kept = tuple(sorted(set(keep)))
  if not kept or len(kept) == particles:
    raise DomainError(
      f'keep={list(kept)} must be a non-empty proper subset of 1..{particles}'
    )
  if kept[0] < 1 or kept[-1] > particles:
    raise DomainError(f'keep={list(kept)} has particles outside 1..{particles}')
  return kept


def reduced_density_matrix(psi: StateVector, keep: Iterable[int]) -> DensityMatrix:
  """Partial trace over the particles not in keep (1-indexed, kept in ascending order)."""
  space = psi.space
  kept = _normalize_keep(keep, space.particles)
  traced = [k for k in range(1, space.particles + 1) if k not in kept]
  axes = [k - 1 for k in kept] + [k - 1 for k in traced]
  rows = space.levels ** len(kept)
  block = np.transpose(psi.tensor, axes).reshape(rows, -1)
  rho = DensityMatrix(block @ block.conj().T)
  return rho.validate()


def von_neumann_entropy(rho: DensityMatrix, base: float = 2) -> float:
  """-sum p log p over eigenvalues, 0 log 0 = 0."""
  spectrum = rho.eigenvalues
  if spectrum[0] < -PSD_SLACK:
    raise NumericalValidityError(f'Density matrix has negative eigenvalue {spectrum[0]:.3g}')
  probabilities = np.clip(spectrum, 0.0, 1.0)
  return float(np.sum(entr(probabilities)) / np.log(base))


def single_particle_rdms(psi: StateVector) -> list[DensityMatrix]:
  """The RDM of every particle, in particle order."""
  return [reduced_density_matrix(psi, [k]) for k in range(1, psi.space.particles + 1)]


def bipartition_entropies(psi: StateVector) -> list[tuple[tuple[int, ...], float]]:
  """Entropy of every kept subset with 1..floor(N/2) particles."""
  particles = psi.space.particles
  return [
    (kept, von_neumann_entropy(reduced_density_matrix(psi, kept)))
    for size in range(1, particles // 2 + 1)
    for kept in combinations(range(1, particles + 1), size)
  ]


def random_state(space: SpaceSpec, rng: np.random.Generator) -> StateVector:
  """Normalized complex Gaussian state."""
  amplitudes = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
  return StateVector(space, amplitudes).normalized()

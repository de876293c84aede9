"""Brute-force references written straight from the definitions.

Nothing here reuses the tensor reshapes of ``hilbert``: partial traces are
explicit sums over words, eigenvalues come from numpy rather than scipy, and
tableaux are found by filtering every filling. Slow on purpose; only meant for
small spaces and cross-checks.
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from math import log

import numpy as np

from qunit.services.entangle import ghz_basis, verify_entanglement
from qunit.services.hilbert import SpaceSpec, StateVector, random_state
from qunit.services.tableaux import Partition, StandardTableau

logger = logging.getLogger(__name__)


def brute_force_rdm(psi: StateVector, keep: list[int]) -> np.ndarray:
  """rho[a, b] = sum over traced letters r of psi(a, r) * conj(psi(b, r))."""
  space = psi.space
  n = space.levels
  kept = sorted(keep)
  traced = [k for k in range(1, space.particles + 1) if k not in kept]
  kept_words = list(product(range(1, n + 1), repeat=len(kept)))
  traced_words = list(product(range(1, n + 1), repeat=len(traced)))

  def amplitude(kept_letters, traced_letters) -> complex:
    word = [0] * space.particles
    for position, letter in zip(kept, kept_letters):
      word[position - 1] = letter
    for position, letter in zip(traced, traced_letters):
      word[position - 1] = letter
    index = 0
    for letter in word:
      index = index * n + letter - 1
    return complex(psi.amplitudes[index])

  rho = np.zeros((len(kept_words), len(kept_words)), dtype=complex)
  for i, a in enumerate(kept_words):
    for j, b in enumerate(kept_words):
      rho[i, j] = sum(amplitude(a, r) * amplitude(b, r).conjugate() for r in traced_words)
  return rho


def brute_force_entropy(rho: np.ndarray) -> float:
  """Entropy in bits from numpy's eigvalsh."""
  return -sum(p * log(p) / log(2) for p in np.linalg.eigvalsh(rho) if p > 1e-15)


@dataclass
class OracleVerdict:
  """Per-particle entropies and the maximality verdict from brute force."""

  entropies: list[float]
  deviations: list[float]
  maximal: bool


def brute_force_verdict(psi: StateVector, tol: float) -> OracleVerdict:
  """Single-particle entropies and max-abs deviations from I/n, one particle at a time."""
  n = psi.space.levels
  entropies, deviations = [], []
  for k in range(1, psi.space.particles + 1):
    rho = brute_force_rdm(psi, [k])
    entropies.append(brute_force_entropy(rho))
    deviations.append(float(np.max(np.abs(rho - np.eye(n) / n))))
  return OracleVerdict(
    entropies=entropies,
    deviations=deviations,
    maximal=all(d < tol for d in deviations),
  )


def brute_force_standard_tableaux(partition: Partition) -> list[StandardTableau]:
  """Every filling of the diagram with 1..N that increases along rows and columns."""
  shape = partition.parts
  found = []
  for filling in permutations(range(1, partition.size + 1)):
    rows, start = [], 0
    for length in shape:
      rows.append(filling[start : start + length])
      start += length
    rows_ok = all(row[c] < row[c + 1] for row in rows for c in range(len(row) - 1))
    cols_ok = all(
      rows[r][c] < rows[r + 1][c] for r in range(len(rows) - 1) for c in range(len(rows[r + 1]))
    )
    if rows_ok and cols_ok:
      found.append(StandardTableau(tuple(rows)))
  return found


@dataclass
class OracleComparison:
  """Agreement summary of the fast verifier against brute force on random states."""

  samples: int
  max_entropy_gap: float = 0.0
  verdict_mismatches: list[int] = field(default_factory=list)

  @property
  def agrees(self) -> bool:
    """True when no verdict differs."""
    return not self.verdict_mismatches


def compare_with_oracle(
  space: SpaceSpec, samples: int, seed: int, tol: float, entropy_tol: float = 1e-9
) -> OracleComparison:
  """Run verify_entanglement and the brute-force verdict on seeded random states.

  Random states are almost never maximal, so every third sample is replaced by
  a GHZ basis state to exercise the positive verdict too.
  """
  rng = np.random.default_rng(seed)
  ghz = ghz_basis(space)
  comparison = OracleComparison(samples=samples)
  for i in range(samples):
    psi = ghz[int(rng.integers(len(ghz)))] if i % 3 == 2 else random_state(space, rng)
    fast = verify_entanglement(psi, tol)
    slow = brute_force_verdict(psi, tol)
    gap = max(abs(a - b) for a, b in zip(fast.per_particle_entropy, slow.entropies))
    comparison.max_entropy_gap = max(comparison.max_entropy_gap, gap)
    if fast.maximal != slow.maximal or gap > entropy_tol:
      logger.warning(f'Oracle disagreement on sample {i} ({space}): entropy gap {gap:.3g}')
      comparison.verdict_mismatches.append(i)
  return comparison

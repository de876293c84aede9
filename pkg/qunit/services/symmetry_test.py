"""Tests for characters, isotypic projectors, Young symmetrizers and the coupled basis."""

from fractions import Fraction
from itertools import permutations
from math import factorial, sqrt

import numpy as np
import pytest

from qunit.errors import BoundsError, DomainError, NumericalValidityError, UnsupportedError
from qunit.services.hilbert import (
  DensityMatrix,
  SpaceSpec,
  StateVector,
  gram_matrix,
  permutation_matrix,
  random_state,
)
from qunit.services.symmetry import (
  Convention,
  CoupledLabel,
  apply_isotypic_projector,
  character,
  character_table,
  conjugacy_classes,
  coupled_basis,
  density_sector_weights,
  isotypic_projector,
  lowering,
  orthonormalize,
  sector_basis,
  sector_copies,
  sector_membership,
  sector_weights,
  total_spin_z,
  young_symmetrizer,
)
from qunit.services.tableaux import (
  Partition,
  StandardTableau,
  enumerate_partitions,
  enumerate_standard_tableaux,
  hook_length_dim,
  weyl_dim,
)

PROJECTOR_SPACES = [(2, 2), (2, 3), (3, 3), (2, 4)]


def _span_projector(vectors) -> np.ndarray:
  stacked = np.stack([v.amplitudes for v in vectors], axis=1)
  q, _ = np.linalg.qr(stacked)
  return q @ q.conj().T


def test_conjugacy_classes():
  classes = conjugacy_classes(3)
  assert [str(c) for c in classes] == ['[3]', '[2,1]', '[1,1,1]']
  assert [c.size for c in classes] == [2, 3, 1]
  for N in range(1, 9):
    assert sum(c.size for c in conjugacy_classes(N)) == factorial(N)


def test_character_examples():
  assert all(character(Partition.of(4), c) == 1 for c in conjugacy_classes(4))
  assert character(Partition.of(2, 1), Partition.of(1, 1, 1)) == 2
  assert character(Partition.of(1, 1, 1), Partition.of(2, 1)) == -1
  table = character_table(3)
  assert table.values == ((1, 1, 1), (-1, 0, 2), (1, -1, 1))


def test_character_errors():
  with pytest.raises(DomainError):
    character(Partition.of(2, 1), Partition.of(2))
  with pytest.raises(BoundsError):
    character(Partition.of(9), Partition.of(9))


@pytest.mark.parametrize('N', range(1, 7))
def test_character_orthogonality(N):
  table = character_table(N)
  sizes = np.array([c.size for c in table.classes])
  values = np.array(table.values)
  np.testing.assert_array_equal((values * sizes) @ values.T, factorial(N) * np.eye(len(values)))


@pytest.mark.parametrize('N', range(1, 5))
def test_characters_decompose_the_regular_representation(N):
  # The regular character is N! on the identity class and zero elsewhere.
  table = character_table(N)
  dims = np.array([hook_length_dim(p) for p in table.partitions])
  regular = dims @ np.array(table.values)
  expected = [factorial(N) if c.cycle_type == Partition((1,) * N) else 0 for c in table.classes]
  np.testing.assert_array_equal(regular, expected)


def test_characters_match_permutation_traces():
  space = SpaceSpec(levels=2, particles=3)
  for partition in [Partition.of(3), Partition.of(2, 1)]:
    basis = sector_basis(partition, space)
    stacked = np.stack([v.amplitudes for v in basis.vectors], axis=1)
    for sigma in permutations(range(1, 4)):
      # Trace of U(sigma) on the isotypic component is chi(sigma) * dim T^lambda.
      trace = np.trace(stacked.conj().T @ permutation_matrix(sigma, space) @ stacked).real
      mu = Partition(tuple(sorted(_cycle_lengths(sigma), reverse=True)))
      assert trace == pytest.approx(character(partition, mu) * weyl_dim(partition, 2))


def _cycle_lengths(sigma):
  seen, lengths = set(), []
  for start in range(1, len(sigma) + 1):
    length, k = 0, start
    while k not in seen:
      seen.add(k)
      k = sigma[k - 1]
      length += 1
    if length:
      lengths.append(length)
  return lengths


@pytest.mark.parametrize('levels, particles', PROJECTOR_SPACES)
def test_projector_algebra(levels, particles):
  space = SpaceSpec(levels=levels, particles=particles)
  projectors = {p: isotypic_projector(p, space) for p in enumerate_partitions(particles)}
  total = np.zeros((space.dim, space.dim))
  for p, projector in projectors.items():
    assert np.max(np.abs(projector @ projector - projector)) < 1e-8
    np.testing.assert_allclose(projector, projector.T, atol=1e-12)
    rank = int(np.sum(np.linalg.eigvalsh(projector) > 0.5))
    assert rank == hook_length_dim(p) * weyl_dim(p, levels)
    for q, other in projectors.items():
      if q != p:
        assert np.max(np.abs(projector @ other)) < 1e-8
    total += projector
  np.testing.assert_allclose(total, np.eye(space.dim), atol=1e-10)


def test_projector_examples():
  space = SpaceSpec(levels=2, particles=2)
  triplet = isotypic_projector(Partition.of(2), space)
  singlet = isotypic_projector(Partition.of(1, 1), space)
  assert round(np.trace(triplet)) == 3
  assert round(np.trace(singlet)) == 1
  np.testing.assert_allclose(singlet[1:3, 1:3], [[0.5, -0.5], [-0.5, 0.5]])


def test_projector_guards():
  with pytest.raises(BoundsError):
    isotypic_projector(Partition.of(7), SpaceSpec(levels=2, particles=7))
  with pytest.raises(BoundsError):
    isotypic_projector(Partition.of(5), SpaceSpec(levels=4, particles=5))
  with pytest.raises(DomainError):
    isotypic_projector(Partition.of(2), SpaceSpec(levels=2, particles=3))


def test_apply_form_matches_dense_projector():
  space = SpaceSpec(levels=2, particles=4)
  psi = random_state(space, np.random.default_rng(1))
  for partition in enumerate_partitions(4):
    dense = isotypic_projector(partition, space) @ psi.amplitudes
    applied = apply_isotypic_projector(partition, psi)
    np.testing.assert_allclose(applied.amplitudes, dense, atol=1e-12)


def test_sector_membership_examples():
  qubits2 = SpaceSpec(levels=2, particles=2)
  qubits3 = SpaceSpec(levels=2, particles=3)
  singlet = StateVector.from_words(qubits2, {(1, 2): 1 / sqrt(2), (2, 1): -1 / sqrt(2)})
  assert sector_membership(singlet, Partition.of(1, 1)) == pytest.approx(1.0)
  top = StateVector.basis_state(qubits3, (1, 1, 1))
  assert sector_membership(top, Partition.of(3)) == pytest.approx(1.0)
  word = StateVector.basis_state(qubits3, (1, 1, 2))
  assert sector_membership(word, Partition.of(3)) == pytest.approx(1 / 3)
  assert sector_membership(word, Partition.of(2, 1)) == pytest.approx(2 / 3)


@pytest.mark.parametrize('levels, particles', [(2, 3), (3, 3), (2, 5), (2, 8)])
def test_sector_weights_sum_to_one(levels, particles):
  psi = random_state(SpaceSpec(levels=levels, particles=particles), np.random.default_rng(2))
  weights = sector_weights(psi)
  assert sum(weights.values()) == pytest.approx(1.0, abs=1e-10)
  for partition, weight in weights.items():
    if weyl_dim(partition, levels) == 0:
      assert weight == pytest.approx(0.0, abs=1e-12)


QUBIT_PAIR = SpaceSpec(levels=2, particles=2)
SINGLET = StateVector.from_words(QUBIT_PAIR, {(1, 2): 1 / sqrt(2), (2, 1): -1 / sqrt(2)})
TRIPLET_ZERO = StateVector.from_words(QUBIT_PAIR, {(1, 2): 1 / sqrt(2), (2, 1): 1 / sqrt(2)})


def _mixture(*terms: tuple[float, StateVector]) -> DensityMatrix:
  return DensityMatrix(sum(p * np.outer(v.amplitudes, v.amplitudes.conj()) for p, v in terms))


def test_density_sector_weights_separates_a_mixture():
  decomposition = density_sector_weights(
    _mixture((0.7, SINGLET), (0.3, TRIPLET_ZERO)), QUBIT_PAIR
  )
  symmetric, antisymmetric = Partition.of(2), Partition.of(1, 1)
  first, second = decomposition.components
  assert first.eigenvalue == pytest.approx(0.7)
  assert first.multiplicity == 1
  assert first.weights[antisymmetric] == pytest.approx(1.0)
  assert first.weights[symmetric] == pytest.approx(0.0, abs=1e-12)
  assert second.eigenvalue == pytest.approx(0.3)
  assert second.multiplicity == 1
  assert second.weights[symmetric] == pytest.approx(1.0)
  assert decomposition.total_weights[symmetric] == pytest.approx(0.3)
  assert decomposition.total_weights[antisymmetric] == pytest.approx(0.7)


def test_density_sector_weights_groups_degenerate_eigenvalues():
  even = density_sector_weights(_mixture((0.5, SINGLET), (0.5, TRIPLET_ZERO)), QUBIT_PAIR)
  [component] = even.components
  assert component.multiplicity == 2
  assert component.weights[Partition.of(2)] == pytest.approx(0.5)

  space = SpaceSpec(levels=2, particles=3)
  [mixed] = density_sector_weights(DensityMatrix(np.eye(8) / 8), space).components
  assert mixed.eigenvalue == pytest.approx(1 / 8)
  assert mixed.multiplicity == 8
  assert mixed.weights[Partition.of(3)] == pytest.approx(4 / 8)
  assert mixed.weights[Partition.of(2, 1)] == pytest.approx(4 / 8)
  assert mixed.weights[Partition.of(1, 1, 1)] == pytest.approx(0.0, abs=1e-12)


def test_density_sector_weights_pure_state_matches_sector_weights():
  psi = random_state(SpaceSpec(levels=3, particles=3), np.random.default_rng(11))
  [component] = density_sector_weights(_mixture((1.0, psi)), psi.space).components
  assert component.eigenvalue == pytest.approx(1.0)
  for partition, weight in sector_weights(psi).items():
    assert component.weights[partition] == pytest.approx(weight, abs=1e-10)


def test_density_sector_weights_errors():
  with pytest.raises(DomainError):
    density_sector_weights(DensityMatrix(np.eye(2) / 2), QUBIT_PAIR)
  with pytest.raises(NumericalValidityError):
    density_sector_weights(DensityMatrix(np.eye(4)), QUBIT_PAIR)


def test_young_symmetrizer_examples():
  space = SpaceSpec(levels=2, particles=2)
  ket12 = StateVector.basis_state(space, (1, 2)).amplitudes
  row = young_symmetrizer(StandardTableau(((1, 2),)), space)
  np.testing.assert_allclose(row @ ket12, [0, 1, 1, 0])
  column = young_symmetrizer(StandardTableau(((1,), (2,))), space)
  np.testing.assert_allclose(column @ ket12, [0, 1, -1, 0])


@pytest.mark.parametrize('N', range(1, 5))
def test_young_symmetrizer_is_quasi_idempotent(N):
  space = SpaceSpec(levels=2 if N == 4 else 3, particles=N)
  for partition in enumerate_partitions(N):
    scale = factorial(N) / hook_length_dim(partition)
    for tableau in enumerate_standard_tableaux(partition):
      c = young_symmetrizer(tableau, space)
      gap = np.max(np.abs(c @ c - scale * c))
      assert gap <= 1e-8 * max(1.0, np.max(np.abs(scale * c)))


def test_orthonormalize():
  vectors = orthonormalize([np.array([1.0, 0, 0]), np.array([1.0, 1, 0]), np.array([2.0, 1, 0])])
  assert len(vectors) == 2
  np.testing.assert_allclose(np.array(vectors) @ np.array(vectors).conj().T, np.eye(2), atol=1e-12)
  assert len(orthonormalize([np.ones(3), np.eye(3)[0], np.eye(3)[1]], limit=2)) == 2


@pytest.mark.parametrize('levels, particles', [(2, 3), (3, 3), (2, 4)])
def test_sector_basis(levels, particles):
  space = SpaceSpec(levels=levels, particles=particles)
  for partition in enumerate_partitions(particles):
    basis = sector_basis(partition, space)
    assert basis.dimension == hook_length_dim(partition) * weyl_dim(partition, levels)
    if basis.dimension == 0:
      continue
    gram = gram_matrix(list(basis.vectors))
    np.testing.assert_allclose(gram, np.eye(basis.dimension), atol=1e-10)
    projector = isotypic_projector(partition, space)
    for vector in basis.vectors:
      np.testing.assert_allclose(projector @ vector.amplitudes, vector.amplitudes, atol=1e-10)


def test_sector_copies_span_the_sector():
  space = SpaceSpec(levels=2, particles=3)
  partition = Partition.of(2, 1)
  copies = sector_copies(partition, space)
  assert [c.copy_index for c in copies] == [0, 1]
  assert all(c.dimension == weyl_dim(partition, 2) for c in copies)
  vectors = [v for c in copies for v in c.vectors]
  for vector in vectors:
    assert sector_membership(vector, partition) == pytest.approx(1.0)
  stacked = np.stack([v.amplitudes for v in vectors])
  assert np.linalg.matrix_rank(stacked, tol=1e-8) == 4


def test_coupled_label():
  label = CoupledLabel.of('3/2', '-1/2')
  assert (label.two_j, label.two_m, label.d) == (3, -1, 1)
  assert label.j == Fraction(3, 2) and label.m == Fraction(-1, 2)
  assert str(label) == '|3/2,-1/2;1>'
  assert label.partner() == CoupledLabel(3, 1)
  assert label.partition(3) == Partition.of(3)
  assert CoupledLabel(1, 1, 2).partition(3) == Partition.of(2, 1)
  assert CoupledLabel(0, 0).partition(2) == Partition.of(1, 1)
  with pytest.raises(DomainError):
    CoupledLabel(1, 3)
  with pytest.raises(DomainError):
    CoupledLabel(2, 1)
  with pytest.raises(DomainError):
    CoupledLabel(2, 0, 0)


def test_coupled_basis_examples():
  two = coupled_basis(2)
  np.testing.assert_allclose(
    two[CoupledLabel(2, 0)].amplitudes, [0, 1 / sqrt(2), 1 / sqrt(2), 0], atol=1e-12
  )
  np.testing.assert_allclose(
    two[CoupledLabel(0, 0)].amplitudes, [0, 1 / sqrt(2), -1 / sqrt(2), 0], atol=1e-12
  )

  three = coupled_basis(3)
  assert [w for w, _ in three[CoupledLabel(3, 3)].nonzero_words()] == [(1, 1, 1)]
  expected = StateVector.from_words(
    SpaceSpec(levels=2, particles=3),
    {(1, 1, 2): 2 / sqrt(6), (1, 2, 1): -1 / sqrt(6), (2, 1, 1): -1 / sqrt(6)},
  )
  mixed = three[CoupledLabel(1, 1, 1)]
  np.testing.assert_allclose(mixed.amplitudes, expected.amplitudes, atol=1e-12)


def test_coupled_basis_label_order():
  labels = list(coupled_basis(3))
  assert [str(label) for label in labels] == [
    '|3/2,3/2;1>',
    '|3/2,1/2;1>',
    '|3/2,-1/2;1>',
    '|3/2,-3/2;1>',
    '|1/2,1/2;1>',
    '|1/2,-1/2;1>',
    '|1/2,1/2;2>',
    '|1/2,-1/2;2>',
  ]


@pytest.mark.parametrize('N', range(2, 7))
def test_coupled_basis_is_orthonormal_and_sector_resolved(N):
  basis = coupled_basis(N)
  assert len(basis) == 2**N
  np.testing.assert_allclose(gram_matrix(list(basis.values())), np.eye(2**N), atol=1e-10)
  for label, vector in basis.items():
    assert label.d <= hook_length_dim(label.partition(N))
    assert sector_membership(vector, label.partition(N)) == pytest.approx(1.0, abs=1e-10)
    assert total_spin_z(vector) == pytest.approx(float(label.m))


@pytest.mark.parametrize('N', range(2, 6))
def test_sequential_coupling_is_ladder_consistent(N):
  basis = coupled_basis(N)
  for label, vector in basis.items():
    if label.two_m == -label.two_j:
      continue
    j, m = label.j, label.m
    coefficient = sqrt(j * (j + 1) - m * (m - 1))
    below = basis[CoupledLabel(label.two_j, label.two_m - 2, label.d)]
    lowered = lowering(vector).amplitudes
    np.testing.assert_allclose(lowered, coefficient * below.amplitudes, atol=1e-10)


def test_three_qubit_counts_per_j():
  counts = {}
  for label in coupled_basis(3):
    counts[label.j] = counts.get(label.j, 0) + 1
  assert counts == {Fraction(3, 2): 4, Fraction(1, 2): 4}


def test_fixture_tables_match_the_reference_amplitudes():
  fixtures = coupled_basis(3, Convention.FIXTURES)
  mixed = fixtures[CoupledLabel(1, 1, 1)]
  assert mixed.amplitude((2, 1, 1)) == pytest.approx(2 / sqrt(6), abs=1e-10)
  assert mixed.amplitude((1, 1, 2)) == pytest.approx(-1 / sqrt(6), abs=1e-10)
  assert fixtures[CoupledLabel(1, 1, 2)].amplitude((1, 2, 1)) == pytest.approx(-1 / sqrt(2))
  np.testing.assert_allclose(gram_matrix(list(fixtures.values())), np.eye(8), atol=1e-10)

  two = coupled_basis(2, Convention.FIXTURES)
  sequential = coupled_basis(2)
  for label, vector in two.items():
    np.testing.assert_allclose(vector.amplitudes, sequential[label].amplitudes, atol=1e-10)


def test_fixture_tables_agree_with_sequential_coupling_on_spans():
  fixtures = coupled_basis(3, Convention.FIXTURES)
  sequential = coupled_basis(3)
  for two_j in (3, 1):
    ours = [v for label, v in sequential.items() if label.two_j == two_j]
    theirs = [v for label, v in fixtures.items() if label.two_j == two_j]
    assert np.max(np.abs(_span_projector(ours) - _span_projector(theirs))) < 1e-10
  for label in fixtures:
    if label.two_j == 3:
      printed, coupled = fixtures[label].amplitudes, sequential[label].amplitudes
      np.testing.assert_allclose(printed, coupled, atol=1e-10)


def test_coupled_basis_errors():
  with pytest.raises(UnsupportedError):
    coupled_basis(3, levels=3)
  with pytest.raises(UnsupportedError):
    coupled_basis(4, Convention.FIXTURES)
  with pytest.raises(BoundsError):
    coupled_basis(9)
  with pytest.raises(BoundsError):
    coupled_basis(1)


def test_spin_operators_need_qubits():
  psi = StateVector.basis_state(SpaceSpec(levels=3, particles=2), (1, 1))
  with pytest.raises(UnsupportedError):
    lowering(psi)
  with pytest.raises(UnsupportedError):
    total_spin_z(psi)

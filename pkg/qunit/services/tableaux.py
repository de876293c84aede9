"""Partitions, Young diagrams and tableau counting.

Dimensions of the Schur-Weyl decomposition H^N = sum_lambda S^lambda (x) T^lambda:
``hook_length_dim`` gives dim S^lambda (standard tableaux) and ``weyl_dim`` gives
dim T^lambda (semistandard tableaux with entries 1..n). Everything here is exact
integer arithmetic.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from math import factorial, prod

from qunit.errors import BoundsError, DomainError

logger = logging.getLogger(__name__)

MAX_PARTITION_SIZE = 12
MAX_TABLEAU_SIZE = 8
MAX_WEYL_LEVELS = 8


@dataclass(frozen=True)
class Partition:
  """Non-increasing tuple of positive parts; indexes an S_N irrep."""

  parts: tuple[int, ...]

  def __post_init__(self):
    if not self.parts:
      raise DomainError('Partition must have at least one part')
    if any(not isinstance(p, int) or p < 1 for p in self.parts):
      raise DomainError(f'Partition parts must be positive integers, got {list(self.parts)}')
    if any(a < b for a, b in zip(self.parts, self.parts[1:])):
      raise DomainError(f'Partition {list(self.parts)} is not in non-increasing order')

  @classmethod
  def of(cls, *parts: int) -> 'Partition':
    """Partition.of(2, 1) == Partition((2, 1))."""
    return cls(tuple(parts))

  @property
  def size(self) -> int:
    """Number of particles N."""
    return sum(self.parts)

  @property
  def rows(self) -> int:
    """Number of rows."""
    return len(self.parts)

  def __str__(self) -> str:
    return '[' + ','.join(str(p) for p in self.parts) + ']'


@dataclass(frozen=True)
class StandardTableau:
  """Filling of a Young diagram with 1..N, rows and columns strictly increasing."""

  rows: tuple[tuple[int, ...], ...]

  @property
  def shape(self) -> Partition:
    """Partition given by the row lengths."""
    return Partition(tuple(len(row) for row in self.rows))

  @property
  def columns(self) -> tuple[tuple[int, ...], ...]:
    """Filling, column by column."""
    width = len(self.rows[0])
    return tuple(tuple(row[c] for row in self.rows if c < len(row)) for c in range(width))

  def transpose(self) -> 'StandardTableau':
    """Reflect along the main diagonal."""
    return StandardTableau(self.columns)

  def __str__(self) -> str:
    return '/'.join(''.join(str(v) for v in row) for row in self.rows)


class YoungDiagram:
  """Cell set of a partition with hook and content lookups."""

  def __init__(self, partition: Partition):
    self.partition = partition
    self.cells = frozenset(
      (r, c) for r, length in enumerate(partition.parts) for c in range(length)
    )

  @cached_property
  def _column_heights(self) -> tuple[int, ...]:
    return conjugate_partition(self.partition).parts

  def hook(self, row: int, col: int) -> int:
    """Cells to the right, below, plus the cell itself."""
    if (row, col) not in self.cells:
      raise DomainError(f'Cell ({row}, {col}) is not in diagram {self.partition}')
    arm = self.partition.parts[row] - col - 1
    leg = self._column_heights[col] - row - 1
    return arm + leg + 1

  def content(self, row: int, col: int) -> int:
    """Content c - r of cell (r, c)."""
    if (row, col) not in self.cells:
      raise DomainError(f'Cell ({row}, {col}) is not in diagram {self.partition}')
    return col - row

  def __len__(self) -> int:
    return len(self.cells)


def _check_particles(N: int, limit: int) -> None:
  if not 1 <= N <= limit:
    raise BoundsError(f'N={N} is outside the supported range 1..{limit}')


def parse_partition(text: str) -> Partition:
  """Parse '2,1' (or '2 1', '[2,1]') into a Partition."""
  cleaned = text.strip().strip('[]()').replace(' ', ',')
  try:
    parts = tuple(int(token) for token in cleaned.split(',') if token)
  except ValueError as e:
    raise DomainError(f'Cannot parse partition from {text!r}') from e
  return Partition(parts)


def conjugate_partition(partition: Partition) -> Partition:
  """Transpose of the diagram: column heights become parts."""
  return Partition(
    tuple(sum(1 for p in partition.parts if p > c) for c in range(partition.parts[0]))
  )


def enumerate_partitions(N: int) -> list[Partition]:
  """All partitions of N in reverse-lexicographic order, [N] first and [1,...,1] last."""
  _check_particles(N, MAX_PARTITION_SIZE)

  def descend(remaining: int, largest: int) -> list[tuple[int, ...]]:
    if remaining == 0:
      return [()]
    out = []
    for first in range(min(remaining, largest), 0, -1):
      out.extend((first, *rest) for rest in descend(remaining - first, first))
    return out

  return [Partition(parts) for parts in descend(N, N)]


def hook_length_dim(partition: Partition) -> int:
  """f^lambda = N! / product of hook lengths."""
  diagram = YoungDiagram(partition)
  hooks = prod(diagram.hook(r, c) for r, c in diagram.cells)
  return factorial(partition.size) // hooks


def weyl_dim(partition: Partition, n: int) -> int:
  """dim T^lambda for n levels by the hook content formula; 0 if lambda has more than n rows."""
  if not 1 <= n <= MAX_WEYL_LEVELS:
    raise BoundsError(f'n={n} is outside the supported range 1..{MAX_WEYL_LEVELS}')
  if partition.rows > n:
    return 0
  diagram = YoungDiagram(partition)
  numerator = prod(n + diagram.content(r, c) for r, c in diagram.cells)
  denominator = prod(diagram.hook(r, c) for r, c in diagram.cells)
  return numerator // denominator


@dataclass(frozen=True)
class SchurWeylTerm:
  """One lambda's contribution f^lambda * dim T^lambda."""

  partition: Partition
  frequency: int
  weyl_dim: int

  @property
  def product(self) -> int:
    """f^lambda * dim T^lambda."""
    return self.frequency * self.weyl_dim


@dataclass(frozen=True)
class SchurWeylSummary:
  """Dimension bookkeeping of H^N for given N and n."""

  particles: int
  levels: int
  terms: tuple[SchurWeylTerm, ...]

  @property
  def total(self) -> int:
    """Sum of the products."""
    return sum(term.product for term in self.terms)

  @property
  def expected(self) -> int:
    """n^N."""
    return self.levels**self.particles

  @property
  def holds(self) -> bool:
    """True when the total equals n^N."""
    return self.total == self.expected


def schur_weyl_identity(N: int, n: int) -> SchurWeylSummary:
  """Check sum_lambda f^lambda * dim T^lambda == n^N, keeping every term."""
  terms = tuple(
    SchurWeylTerm(partition=p, frequency=hook_length_dim(p), weyl_dim=weyl_dim(p, n))
    for p in enumerate_partitions(N)
  )
  summary = SchurWeylSummary(particles=N, levels=n, terms=terms)
  if not summary.holds:
    logger.warning(f'Schur-Weyl total {summary.total} != {summary.expected} for N={N}, n={n}')
  return summary


def enumerate_standard_tableaux(partition: Partition) -> list[StandardTableau]:
  """All standard Young tableaux of a shape.

  Entries 1..N are placed in increasing order at addable cells, upper rows
  tried first, so the single-row-first filling comes out first.
  """
  _check_particles(partition.size, MAX_TABLEAU_SIZE)
  shape = partition.parts
  N = partition.size
  found: list[StandardTableau] = []

  def place(rows: list[list[int]], value: int) -> None:
    if value > N:
      found.append(StandardTableau(tuple(tuple(row) for row in rows)))
      return
    for r, row in enumerate(rows):
      if len(row) < shape[r] and (r == 0 or len(rows[r - 1]) > len(row)):
        row.append(value)
        place(rows, value + 1)
        row.pop()

  place([[] for _ in shape], 1)
  return found


def enumerate_semistandard_tableaux(
  partition: Partition, n: int
) -> list[tuple[tuple[int, ...], ...]]:
  """Semistandard fillings with entries 1..n by backtracking over cells in row order."""
  shape = partition.parts
  cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
  grid = [[0] * length for length in shape]
  found = []

  def fill(position: int) -> None:
    if position == len(cells):
      found.append(tuple(tuple(row) for row in grid))
      return
    r, c = cells[position]
    low = grid[r][c - 1] if c > 0 else 1
    if r > 0:
      low = max(low, grid[r - 1][c] + 1)
    for value in range(low, n + 1):
      grid[r][c] = value
      fill(position + 1)
    grid[r][c] = 0

  fill(0)
  return found

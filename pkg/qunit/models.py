"""Pydantic wire models shared by the commands: states, reports and their JSON form.

Every float leaves the process through ``Real``, which rounds to 12 significant
digits and folds -0.0 into 0.0, so identical inputs give byte-identical output.
"""

import logging
from dataclasses import dataclass
from typing import Annotated, Any

import numpy as np
from pydantic import BaseModel, Field, PlainSerializer, ValidationError
from pydantic_core import from_json

from qunit.errors import InputDataError, NumericalValidityError
from qunit.services.entangle import EntanglementReport
from qunit.services.hilbert import DensityMatrix, SpaceSpec, StateVector

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 12
RENORMALIZE_SLACK = 1e-6
AMPLITUDE_CUTOFF = 1e-13


def round_float(value: float) -> float:
  """Round to 12 significant digits; -0.0 becomes 0.0."""
  return float(f'{value:.{SIGNIFICANT_DIGITS}g}') + 0.0


Real = Annotated[float, PlainSerializer(round_float, return_type=float)]
FiniteReal = Annotated[Real, Field(allow_inf_nan=False)]


class AmplitudeEntry(BaseModel):
  """One amplitude of a state; words are 1-indexed."""

  word: list[int] = Field(min_length=1)
  re: FiniteReal
  im: FiniteReal = 0.0


class StatePayload(BaseModel):
  """State document: omitted words have amplitude zero."""

  n: int
  N: int
  amplitudes: list[AmplitudeEntry]


class BipartitionEntry(BaseModel):
  """Entropy of the particles in kept against the rest."""

  kept: list[int]
  entropy: Real


class ReportPayload(BaseModel):
  """Serialized EntanglementReport."""

  entropies: list[Real]
  maximal: bool
  tolerance: Real
  rdm_deviation: Real
  min_entropy: Real
  max_entropy: Real
  spectra: list[list[Real]]
  bipartitions: list[BipartitionEntry] | None = None


class LabeledState(BaseModel):
  """A state inside a basis or entangle document."""

  label: str = ''
  partition: str | None = None
  state: StatePayload
  report: ReportPayload | None = None


class StateCollection(BaseModel):
  """Any document carrying a ``states`` list, e.g. the output of ``basis``."""

  states: list[LabeledState] = Field(min_length=1)


class Document(BaseModel):
  """Top-level command output; ``table_rows`` feeds the csv and pretty formats."""

  def title(self) -> str:
    """Heading for the pretty format."""
    return type(self).__name__

  def table_rows(self) -> list[dict[str, Any]]:
    """Rows for the csv and pretty formats."""
    raise NotImplementedError


def state_payload(psi: StateVector, cutoff: float = AMPLITUDE_CUTOFF) -> StatePayload:
  """Nonzero amplitudes of psi in word order."""
  return StatePayload(
    n=psi.space.levels,
    N=psi.space.particles,
    amplitudes=[
      AmplitudeEntry(word=list(word), re=amplitude.real, im=amplitude.imag)
      for word, amplitude in psi.nonzero_words(cutoff)
    ],
  )


def report_payload(report: EntanglementReport) -> ReportPayload:
  """Serialize a report; bipartitions stay None unless computed."""
  bipartitions = None
  if report.bipartitions is not None:
    bipartitions = [
      BipartitionEntry(kept=list(kept), entropy=entropy) for kept, entropy in report.bipartitions
    ]
  return ReportPayload(
    entropies=list(report.per_particle_entropy),
    maximal=report.maximal,
    tolerance=report.tolerance_used,
    rdm_deviation=report.rdm_deviation,
    min_entropy=report.min_entropy,
    max_entropy=report.max_entropy,
    spectra=[list(spectrum) for spectrum in report.per_particle_spectrum],
    bipartitions=bipartitions,
  )


def labeled_state(
  label: str,
  psi: StateVector,
  report: EntanglementReport | None = None,
  partition: str | None = None,
) -> LabeledState:
  """Wrap psi and its optional report for a basis or entangle document."""
  return LabeledState(
    label=label,
    partition=partition,
    state=state_payload(psi),
    report=report_payload(report) if report is not None else None,
  )


def state_rows(states: list[LabeledState]) -> list[dict[str, Any]]:
  """One row per (state, word) amplitude."""
  rows = []
  for entry in states:
    for amplitude in entry.state.amplitudes:
      row: dict[str, Any] = {
        'label': entry.label,
        'word': ''.join(str(letter) for letter in amplitude.word),
        're': round_float(amplitude.re),
        'im': round_float(amplitude.im),
      }
      if entry.partition is not None:
        row['partition'] = entry.partition
      if entry.report is not None:
        row['maximal'] = entry.report.maximal
        row['min_entropy'] = round_float(entry.report.min_entropy)
      rows.append(row)
  return rows


def _field(where: str, rest: str) -> str:
  return f'{where}.{rest}' if where else rest


def to_state(payload: StatePayload, where: str = '') -> StateVector:
  """Build a StateVector, renormalizing when the norm is within 1e-6 of 1.

  Raises:
      BoundsError: n or N is outside the guarded range.
      InputDataError: a word does not fit (n, N), is repeated, or the norm is off.
  """
  space = SpaceSpec(levels=payload.n, particles=payload.N)
  amplitudes: dict[tuple[int, ...], complex] = {}
  for i, entry in enumerate(payload.amplitudes):
    field = _field(where, f'amplitudes[{i}].word')
    word = tuple(entry.word)
    if len(word) != space.particles:
      raise InputDataError(
        f'{field}: {entry.word} has length {len(word)}, but N={space.particles}'
      )
    if any(not 1 <= letter <= space.levels for letter in word):
      raise InputDataError(f'{field}: {entry.word} has letters outside 1..{space.levels}')
    if word in amplitudes:
      raise InputDataError(f'{field}: duplicate word {entry.word}')
    amplitudes[word] = complex(entry.re, entry.im)

  psi = StateVector.from_words(space, amplitudes)
  norm = psi.norm()
  if abs(norm - 1) > RENORMALIZE_SLACK:
    raise InputDataError(
      f"{_field(where, 'amplitudes')}: norm is {norm:.12g}, "
      f'expected 1 within {RENORMALIZE_SLACK}'
    )
  return psi.normalized()


def _describe(error: ValidationError) -> str:
  return '; '.join(
    f'{".".join(str(part) for part in err["loc"]) or "<document>"}: {err["msg"]}'
    for err in error.errors()
  )


class DensityPayload(BaseModel):
  """Density matrix in the product basis, row-major; im defaults to zero."""

  n: int
  N: int
  re: list[list[FiniteReal]]
  im: list[list[FiniteReal]] | None = None


class DensityInput(BaseModel):
  """A document carrying one ``density`` matrix."""

  density: DensityPayload


def to_density(payload: DensityPayload) -> tuple[SpaceSpec, DensityMatrix]:
  """Build a DensityMatrix, restoring Hermiticity and unit trace within 1e-6.

  Raises:
      BoundsError: n or N is outside the guarded range.
      InputDataError: the matrix has the wrong shape or is not a density matrix.
  """
  space = SpaceSpec(levels=payload.n, particles=payload.N)
  matrices = {'re': payload.re} | ({'im': payload.im} if payload.im is not None else {})
  for name, rows in matrices.items():
    if len(rows) != space.dim or any(len(row) != space.dim for row in rows):
      raise InputDataError(
        f'density.{name}: expected a {space.dim}x{space.dim} matrix for {space}'
      )
  entries = np.array(payload.re, dtype=complex)
  if payload.im is not None:
    entries += 1j * np.array(payload.im)
  try:
    DensityMatrix(entries).validate(RENORMALIZE_SLACK)
  except NumericalValidityError as e:
    raise InputDataError(f'density: {e}') from e
  hermitian = (entries + entries.conj().T) / 2
  return space, DensityMatrix(hermitian / np.trace(hermitian).real)


@dataclass(frozen=True)
class ParsedStates:
  """States read from one input document; collection is False for a bare state."""

  states: list[tuple[str, StateVector]]
  collection: bool


@dataclass(frozen=True)
class ParsedDensity:
  """A density matrix read from a ``density`` document."""

  space: SpaceSpec
  rho: DensityMatrix


def _load_json(text: str | bytes) -> Any:
  if isinstance(text, bytes):
    try:
      text = text.decode('utf-8')
    except UnicodeDecodeError as e:
      raise InputDataError(f'Input is not valid UTF-8: {e}') from e
  try:
    return from_json(text)
  except ValueError as e:
    raise InputDataError(f'Malformed JSON: {e}') from e


def _states_from(raw: Any) -> ParsedStates:
  try:
    collection = isinstance(raw, dict) and 'states' in raw
    if collection:
      document = StateCollection.model_validate(raw)
      entries = [
        (entry.label or f'state {i}', entry.state, f'states[{i}].state')
        for i, entry in enumerate(document.states)
      ]
    else:
      entries = [('state', StatePayload.model_validate(raw), '')]
  except ValidationError as e:
    raise InputDataError(f'Invalid state document: {_describe(e)}') from e

  logger.debug(f'Parsed {len(entries)} state(s)')
  return ParsedStates(
    states=[(label, to_state(payload, where)) for label, payload, where in entries],
    collection=collection,
  )


def parse_states(text: str | bytes) -> ParsedStates:
  """Parse a single state document or a document with a ``states`` list.

  Raises:
      InputDataError: undecodable bytes, malformed JSON (with line and column) or
          a schema violation (with the field path).
  """
  return _states_from(_load_json(text))


def parse_input(text: str | bytes) -> ParsedStates | ParsedDensity:
  """Like parse_states, but a document with a ``density`` key yields a ParsedDensity."""
  raw = _load_json(text)
  if not (isinstance(raw, dict) and 'density' in raw):
    return _states_from(raw)
  try:
    document = DensityInput.model_validate(raw)
  except ValidationError as e:
    raise InputDataError(f'Invalid density document: {_describe(e)}') from e
  space, rho = to_density(document.density)
  logger.debug(f'Parsed a {rho.dim}x{rho.dim} density matrix on {space}')
  return ParsedDensity(space, rho)

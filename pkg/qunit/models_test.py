"""State documents: parsing, validation and serialization."""

import json
from math import sqrt

import numpy as np
import pytest

from qunit.errors import BoundsError, InputDataError
from qunit.models import (
  ParsedDensity,
  ParsedStates,
  ReportPayload,
  StatePayload,
  labeled_state,
  parse_input,
  parse_states,
  report_payload,
  round_float,
  state_payload,
  state_rows,
  to_state,
)
from qunit.services.entangle import verify_entanglement
from qunit.services.hilbert import SpaceSpec, StateVector

BELL_DOCUMENT = json.dumps(
  {
    'n': 2,
    'N': 2,
    'amplitudes': [
      {'word': [1, 1], 're': 1 / sqrt(2)},
      {'word': [2, 2], 're': 1 / sqrt(2), 'im': 0.0},
    ],
  }
)


def test_round_float():
  assert round_float(1 / 3) == 0.333333333333
  assert str(round_float(-0.0)) == '0.0'
  assert round_float(0.9999999999999999) == 1.0


def test_parse_single_state():
  parsed = parse_states(BELL_DOCUMENT)
  assert not parsed.collection
  [(label, psi)] = parsed.states
  assert label == 'state'
  np.testing.assert_allclose(psi.amplitudes, [1 / sqrt(2), 0, 0, 1 / sqrt(2)])


def test_parse_collection_uses_labels():
  space = SpaceSpec(levels=2, particles=2)
  entries = [
    labeled_state('up', StateVector.basis_state(space, (1, 1))).model_dump(),
    labeled_state('', StateVector.basis_state(space, (2, 2))).model_dump(),
  ]
  parsed = parse_states(json.dumps({'states': entries}))
  assert parsed.collection
  assert [label for label, _ in parsed.states] == ['up', 'state 1']


def test_nearly_normalized_states_are_renormalized():
  payload = StatePayload.model_validate(
    {'n': 2, 'N': 1, 'amplitudes': [{'word': [1], 're': 1 + 5e-7}]}
  )
  assert to_state(payload).norm() == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize(
  'amplitudes, message',
  [
    ([{'word': [1, 1, 1], 're': 1.0}], 'length 3'),
    ([{'word': [1, 3], 're': 1.0}], 'outside 1..2'),
    ([{'word': [1, 1], 're': 0.6}, {'word': [1, 1], 're': 0.8}], 'duplicate'),
    ([{'word': [1, 1], 're': 0.5}], 'norm is 0.5'),
    ([], 'norm is 0'),
  ],
)
def test_inconsistent_states_are_rejected(amplitudes, message):
  payload = StatePayload.model_validate({'n': 2, 'N': 2, 'amplitudes': amplitudes})
  with pytest.raises(InputDataError, match=message):
    to_state(payload)


def test_out_of_range_space_is_a_bounds_error():
  payload = StatePayload.model_validate({'n': 9, 'N': 2, 'amplitudes': []})
  with pytest.raises(BoundsError):
    to_state(payload)


@pytest.mark.parametrize(
  'text, message',
  [
    ('{"n": 2, "N": 2, "amplitudes": [', 'Malformed JSON'),
    ('{"n": 2, "amplitudes": []}', 'N: Field required'),
    ('{"n": 2, "N": 2, "amplitudes": [{"word": "11", "re": 1}]}', 'amplitudes.0.word'),
    ('{"states": []}', 'states'),
    ('{"n": 2, "N": 1, "amplitudes": [{"word": [1], "re": NaN}]}', 'amplitudes.0.re'),
    (b'{"n": 2, "N": 1, "amplitudes": [], "x": "\xff"}', 'not valid UTF-8'),
  ],
)
def test_malformed_documents(text, message):
  with pytest.raises(InputDataError, match=message):
    parse_states(text)


def test_collection_errors_carry_the_field_path():
  document = {'states': [{'state': {'n': 2, 'N': 1, 'amplitudes': [{'word': [3], 're': 1}]}}]}
  with pytest.raises(InputDataError, match=r'states\[0\]\.state\.amplitudes\[0\]\.word'):
    parse_states(json.dumps(document))


def test_state_payload_drops_zero_amplitudes():
  space = SpaceSpec(levels=2, particles=2)
  psi = StateVector.from_words(space, {(1, 2): 1j})
  payload = state_payload(psi)
  assert [entry.word for entry in payload.amplitudes] == [[1, 2]]
  assert payload.amplitudes[0].im == 1.0


def test_report_payload_key_order_and_rounding():
  space = SpaceSpec(levels=2, particles=3)
  w = StateVector.from_words(space, {(1, 1, 2): 1, (1, 2, 1): 1, (2, 1, 1): 1}).normalized()
  payload = report_payload(verify_entanglement(w, include_bipartitions=True))
  dumped = json.loads(payload.model_dump_json(exclude_none=True))
  assert list(dumped)[:4] == ['entropies', 'maximal', 'tolerance', 'rdm_deviation']
  assert dumped['maximal'] is False
  assert dumped['entropies'][0] == pytest.approx(0.918295834054, abs=1e-12)
  assert len(dumped['bipartitions']) == 3
  assert ReportPayload.model_validate(dumped).maximal is False


def test_state_rows():
  space = SpaceSpec(levels=2, particles=2)
  bell = StateVector.from_words(space, {(1, 1): 1, (2, 2): 1}).normalized()
  entry = labeled_state('bell', bell, verify_entanglement(bell), partition='[2]')
  rows = state_rows([entry])
  assert [row['word'] for row in rows] == ['11', '22']
  assert rows[0]['maximal'] is True
  assert rows[0]['partition'] == '[2]'


def _density_document(re, im=None):
  density = {'n': 2, 'N': 1, 're': re}
  if im is not None:
    density['im'] = im
  return json.dumps({'density': density})


def test_parse_input_reads_density_documents():
  parsed = parse_input(_density_document([[0.5, 0], [0, 0.5]], [[0, 0.25], [-0.25, 0]]))
  assert isinstance(parsed, ParsedDensity)
  assert parsed.space == SpaceSpec(levels=2, particles=1)
  np.testing.assert_allclose(parsed.rho.entries, [[0.5, 0.25j], [-0.25j, 0.5]])
  assert isinstance(parse_input(BELL_DOCUMENT), ParsedStates)


def test_density_within_slack_is_restored():
  parsed = parse_input(_density_document([[0.5 + 2e-7, 1e-7], [0, 0.5]]))
  assert np.trace(parsed.rho.entries).real == pytest.approx(1.0, abs=1e-15)
  np.testing.assert_allclose(parsed.rho.entries, parsed.rho.entries.conj().T)


@pytest.mark.parametrize(
  're, im, message',
  [
    ([[0.5, 0], [0, 0.5], [0, 0]], None, r'density\.re: expected a 2x2'),
    ([[0.5, 0], [0, 0.5]], [[0]], r'density\.im: expected a 2x2'),
    ([[1, 0], [0, 1]], None, 'trace'),
    ([[0.5, 0.5], [0, 0.5]], None, 'not Hermitian'),
    ([[1.5, 0], [0, -0.5]], None, 'negative eigenvalue'),
  ],
)
def test_invalid_density_documents(re, im, message):
  with pytest.raises(InputDataError, match=message):
    parse_input(_density_document(re, im))


def test_density_schema_errors_carry_the_field_path():
  with pytest.raises(InputDataError, match='density.N: Field required'):
    parse_input('{"density": {"n": 2, "re": [[1]]}}')

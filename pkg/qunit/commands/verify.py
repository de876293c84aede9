"""verify: the single-particle RDM report for states read from a JSON document."""

from pathlib import Path

import click
from pydantic import BaseModel

from qunit.models import Document, ReportPayload, parse_states, report_payload, round_float
from qunit.services.entangle import verify_entanglement

from ._common import emit, handle_errors, output_options, resolve_tol


def _report_rows(label: str, report: ReportPayload) -> list[dict]:
  return [
    {
      'label': label,
      'particle': k,
      'entropy': round_float(entropy),
      'spectrum': ' '.join(f'{round_float(p):.12g}' for p in spectrum),
      'maximal': report.maximal,
    }
    for k, (entropy, spectrum) in enumerate(zip(report.entropies, report.spectra), start=1)
  ]


class ReportDocument(ReportPayload, Document):
  """Report of a single-state input, emitted at top level."""

  def title(self) -> str:
    """Verdict of the single state."""
    return f'Entanglement report (maximal={self.maximal})'

  def table_rows(self):
    """One row per particle."""
    return _report_rows('state', self)


class VerifyEntry(BaseModel):
  """Report of one labeled state."""

  label: str
  report: ReportPayload


class VerifyDocument(Document):
  """Reports of every state in a ``states`` document, in input order."""

  reports: list[VerifyEntry]

  def title(self) -> str:
    """How many states are maximal."""
    maximal = sum(entry.report.maximal for entry in self.reports)
    return f'Entanglement reports: {maximal}/{len(self.reports)} maximal'

  def table_rows(self):
    """One row per (state, particle)."""
    return [row for entry in self.reports for row in _report_rows(entry.label, entry.report)]


@click.command()
@click.argument('source', type=click.File('rb'))
@click.option(
  '--bipartitions', is_flag=True, default=False, help='Also report bipartition entropies.'
)
@output_options
@handle_errors
def verify(source, bipartitions: bool, tol: float | None, fmt: str, output: Path | None):
  """Verify maximal entanglement of the state(s) in SOURCE ('-' reads stdin).

  The verdict is data: the exit code is 0 whenever parsing and computing succeed.
  """
  parsed = parse_states(source.read())
  tol = resolve_tol(tol)
  reports = [
    (label, report_payload(verify_entanglement(psi, tol, include_bipartitions=bipartitions)))
    for label, psi in parsed.states
  ]
  if parsed.collection:
    document = VerifyDocument(
      reports=[VerifyEntry(label=label, report=report) for label, report in reports]
    )
  else:
    document = ReportDocument(**reports[0][1].model_dump())
  emit(document, fmt, output)

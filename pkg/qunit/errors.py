"""Error hierarchy shared by the services and the command line."""


class QunitError(Exception):
  """Base class for every failure the library reports on purpose."""

  exit_code = 2


class BoundsError(QunitError):
  """A size parameter is outside the guarded range."""


class ConfigError(QunitError):
  """An environment setting could not be parsed or is out of range."""


class DomainError(QunitError):
  """An argument is well-typed but not in the operation's domain."""


class UnsupportedError(QunitError):
  """The requested combination of options is not implemented."""


class DegeneratePairError(DomainError):
  """A state is parallel to its own conjugate, so pairing collapses it."""


class NumericalValidityError(QunitError):
  """A matrix failed a numerical invariant beyond tolerance."""


class InputDataError(QunitError):
  """An input document is malformed or inconsistent with its declared space."""

  exit_code = 3

"""Console entry point for ``qunit``."""

from qunit.commands import cli


def main() -> None:
  """Run the qunit command group."""
  cli(prog_name='qunit')


if __name__ == '__main__':
  main()

"""Exception types shared across the package.

Contract violations (bad arguments, malformed input) raise ``ValueError``;
``NumericalError`` is reserved for breakdowns inside otherwise-valid
computations, so callers (notably the CLI) can map the two onto distinct
exit codes.
"""


class NumericalError(RuntimeError):
    """A numerical routine failed to converge or broke down."""

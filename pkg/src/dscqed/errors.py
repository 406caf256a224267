"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration / validation problems
exit with 1, numerical failures (non-convergence) exit with 2.
"""


class ConfigError(ValueError):
    """Malformed or invalid configuration / input file.

    Messages carry a location: ``path:line`` for parse errors, a dotted
    field path (``qrm.omega1_ghz``) for invariant violations.
    """


class TruncationLimitError(ValueError):
    """Requested Fock truncation exceeds the configured ceiling."""


class ConvergenceError(RuntimeError):
    """A numerical procedure exhausted its budget without converging."""

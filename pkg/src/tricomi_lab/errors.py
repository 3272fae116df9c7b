"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (formula vs. independent evaluation).

    Raising this signals a bug, not a user error; the CLI maps it to a
    distinct exit code so automation can tell the two apart.
    """

"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Rejected input: malformed data, a dimension mismatch, or a violated precondition."""


class FormulationDisagreement(RuntimeError):
    """Equivalent predicate formulations returned different verdicts.

    This always signals an implementation bug, never a user error; the
    command line maps it to its own exit code so it is never mistaken
    for bad input.
    """

"""Exception taxonomy shared by the whole toolkit."""


class InputError(ValueError):
    """Bad user input or violated precondition (CLI exit code 2)."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; signals a formula or logic bug (CLI exit code 1)."""

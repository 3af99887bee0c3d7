"""Shared exception types."""


class ConsistencyError(RuntimeError):
    """An internal mathematical invariant failed.

    Raised when two computation pipelines that must agree do not, or when a
    quantity that is provably an integer (or provably nonnegative) comes out
    otherwise.  This always indicates a bug, never bad user input, so it is
    kept distinct from ValueError.
    """

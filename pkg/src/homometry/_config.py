"""Numerical tolerance and refinement guard, overridable per context."""

from contextlib import contextmanager
from contextvars import ContextVar

DEFAULT_TOL = 1e-9
DEFAULT_GUARD = 10**6

_tol: ContextVar[float] = ContextVar("tol", default=DEFAULT_TOL)
_guard: ContextVar[int] = ContextVar("guard", default=DEFAULT_GUARD)


def get_tol() -> float:
    return _tol.get()


def get_guard() -> int:
    return _guard.get()


@contextmanager
def settings(tol=None, guard=None):
    """Temporarily override the weight tolerance and/or the atoms-per-period guard.

    >>> with settings(tol=1e-6):
    ...     get_tol()
    1e-06
    """
    tokens = []
    if tol is not None:
        tokens.append((_tol, _tol.set(float(tol))))
    if guard is not None:
        tokens.append((_guard, _guard.set(int(guard))))
    try:
        yield
    finally:
        for var, token in reversed(tokens):
            var.reset(token)

"""Session-wide spacetime dimension.

Every multi-index is validated against the current dimension, so a
session should fix it once (``set_dim``) or scope it with ``dimension``.
"""
from contextlib import contextmanager

DEFAULT_DIM = 4

_dim = DEFAULT_DIM


def get_dim() -> int:
    return _dim


def set_dim(d: int) -> None:
    global _dim
    if int(d) < 1:
        raise ValueError("dimension must be >= 1")
    _dim = int(d)


@contextmanager
def dimension(d: int):
    old = _dim
    set_dim(d)
    try:
        yield d
    finally:
        set_dim(old)

"""Size guards.

The guards are configuration, not constants: the defaults keep every
exhaustive sweep comfortable on a laptop, and callers may raise or lower
them per process (`set_limits`) or per block (`limited`).  The environment
variable STRUCTURA_MAX_CELLS, when set, overrides `max_cells` at CLI start.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    # max elements any single realization / powerset / product may materialize
    max_cells: int = 1 << 16
    # max domain size for bijection enumeration (n! blows up fast)
    max_bijection_size: int = 8


_current = Limits()


def get_limits() -> Limits:
    return _current


def set_limits(limits: Limits) -> None:
    global _current
    _current = limits


@contextlib.contextmanager
def limited(**overrides):
    """Temporarily override selected limit fields."""
    global _current
    saved = _current
    _current = replace(saved, **overrides)
    try:
        yield _current
    finally:
        _current = saved

"""Lightweight instrumentation recording which high-level routes a computation used.

The verification harness runs each side of an identity inside
:func:`tracing` and checks that the two recorded sets are disjoint.
"""

from __future__ import annotations

import contextlib
import contextvars
import functools

_ACTIVE: contextvars.ContextVar[set | None] = contextvars.ContextVar("routes", default=None)


def record(name: str) -> None:
    """Note that route ``name`` was entered (no-op outside :func:`tracing`)."""
    seen = _ACTIVE.get()
    if seen is not None:
        seen.add(name)


def route(name: str):
    """Decorator form of :func:`record`."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            record(name)
            return fn(*args, **kwargs)

        return wrapper

    return deco


@contextlib.contextmanager
def tracing():
    """Collect route names recorded in this context into the yielded set."""
    seen: set[str] = set()
    token = _ACTIVE.set(seen)
    try:
        yield seen
    finally:
        _ACTIVE.reset(token)

"""Capacity caps and the exceptions shared across the package.

Caps are read from the environment at call time so that ``HAMNT_MAX_VERTICES``
and ``HAMNT_MAX_GROUP`` can be changed by a test or a CLI wrapper without
re-importing anything.
"""

import os

DEFAULT_MAX_VERTICES = 10**7
DEFAULT_MAX_GROUP = 10**6
MAX_SYM_DEGREE = 8


class CapacityError(RuntimeError):
    """A computation would exceed a configured size cap."""

    def __init__(self, cap, limit, requested):
        self.cap = cap
        self.limit = limit
        self.requested = requested
        super().__init__(f"{cap} exceeded: requested {requested}, limit {limit}")


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def max_vertices() -> int:
    return int(os.environ.get("HAMNT_MAX_VERTICES", DEFAULT_MAX_VERTICES))


def max_group() -> int:
    return int(os.environ.get("HAMNT_MAX_GROUP", DEFAULT_MAX_GROUP))


def check_vertices(count: int) -> None:
    limit = max_vertices()
    if count > limit:
        raise CapacityError("HAMNT_MAX_VERTICES", limit, count)


def check_group(count: int) -> None:
    limit = max_group()
    if count > limit:
        raise CapacityError("HAMNT_MAX_GROUP", limit, count)


def check_sym_degree(n: int) -> None:
    if n > MAX_SYM_DEGREE:
        raise CapacityError("symmetric-group degree", MAX_SYM_DEGREE, n)

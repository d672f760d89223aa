"""Exception taxonomy shared by all statdec modules.

The CLI maps these onto exit-status classes: data/format problems are
distinguished from algorithmic failures (cap exceeded, missing coverage,
degenerate parameters).
"""

from __future__ import annotations


class StatDecError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(StatDecError):
    """Operands have incompatible lengths or shapes."""


class SingularLeftBlock(StatDecError):
    """The pivot block selected by the permutation is not invertible."""


class InvalidParams(StatDecError):
    """Parameters outside the documented domain of an operation."""


class ZeroBias(StatDecError):
    """eps1 == eps0: the vote statistic carries no information."""


class DegenerateBase(StatDecError):
    """1 - 2w/n is not positive; the binomial closed forms degenerate."""


class DomainError(StatDecError):
    """Argument outside the domain of a numeric function."""


class NoRoot(StatDecError):
    """A root finder found no sign change on its search interval."""


class RankSamplingExhausted(StatDecError):
    """Could not sample a full-rank generator within the retry budget."""


class IterationCapExceeded(StatDecError):
    """A harvest hit its permutation cap before reaching its target.

    Carries the partial pool and a diagnostics dict so callers can inspect
    (and optionally keep) what was built.
    """

    def __init__(self, message: str, pool=None, diagnostics: dict | None = None):
        super().__init__(message)
        self.pool = pool
        self.diagnostics = diagnostics or {}


class EmptySlice(StatDecError):
    """No parity-check equation in the pool goes through a position."""

    def __init__(self, position: int):
        super().__init__(f"no parity-check equation through position {position}")
        self.position = position


class FormatError(StatDecError):
    """A persisted file is malformed, corrupted, or has an unknown version."""


class PoolMismatch(StatDecError):
    """A pool file does not belong to the given code instance."""

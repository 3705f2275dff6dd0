"""Precision configuration threaded through every numerical kernel.

Extended precision is a configuration, not a separate code path: operations
switch to mpmath arithmetic when ``working_precision`` exceeds the native
53-bit significand.  Large moment determinants lose roughly one decimal
digit per row, so this is what makes matrix sizes beyond ~12 usable.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass

import mpmath

from .errors import DomainError


@dataclass(frozen=True)
class PrecisionConfig:
    """Working precision (bits of significand), quadrature order, and the
    series-term budget used by the scalar special functions."""

    working_precision: int = 53
    quad_order: int = 160
    series_terms: int = 800

    def __post_init__(self):
        if self.working_precision < 53:
            raise DomainError("working_precision must be at least 53 bits")
        if self.quad_order < 2:
            raise DomainError("quad_order must be at least 2")
        if self.series_terms < 1:
            raise DomainError("series_terms must be at least 1")

    @property
    def extended(self) -> bool:
        return self.working_precision > 53

    @property
    def eps(self) -> float:
        """Unit roundoff at the working precision."""
        return 2.0 ** (1 - self.working_precision)

    @contextlib.contextmanager
    def mp_context(self):
        """mpmath context pinned to ``working_precision`` bits."""
        with mpmath.workprec(self.working_precision):
            yield mpmath.mp


DEFAULT_CONFIG = PrecisionConfig()

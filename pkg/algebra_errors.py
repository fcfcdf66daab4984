"""
Growth Lab - exception hierarchy

Every error raised by the algebra modules derives from AlgebraError. Each
class carries the exit status the command-line front end reports for it.
"""

from __future__ import annotations

from typing import Any, Optional, Sequence


class AlgebraError(ValueError):
    """Base class for all algebraic and configuration errors"""
    exit_code = 2


class InvalidIndexError(AlgebraError):
    """A basis index (or matrix position) is not valid for a descriptor"""


class MixedAlgebraError(AlgebraError):
    """Operands belong to different descriptors"""


class NoUnitError(AlgebraError):
    """The descriptor has no identity element"""
    exit_code = 3


class UnitLawError(AlgebraError):
    """A declared unit is not a two-sided identity"""
    exit_code = 4


class AntisymmetryViolationError(AlgebraError):
    """Lie structure constants with c_ij^k != -c_ji^k"""
    exit_code = 4

    def __init__(self, message: str, pair: Sequence[Any]):
        super().__init__(message)
        self.pair = tuple(pair)


class JacobiViolationError(AlgebraError):
    """Lie structure constants failing the Jacobi identity"""
    exit_code = 4

    def __init__(self, message: str, triple: Sequence[Any]):
        super().__init__(message)
        self.triple = tuple(triple)


class ConfigError(AlgebraError):
    """Scenario file could not be parsed or validated"""
    exit_code = 2

    def __init__(self, message: str, diagnostics: Optional[Sequence[str]] = None):
        super().__init__(message)
        self.diagnostics = list(diagnostics or [])

    def __str__(self) -> str:
        base = super().__str__()
        if not self.diagnostics:
            return base
        return base + "\n" + "\n".join(f"  {line}" for line in self.diagnostics)


class InsufficientDataError(AlgebraError):
    """A growth table is too short for the requested witness search"""


class OracleLimitError(AlgebraError):
    """Brute-force oracle asked for more than its configured cap"""


class GrowthInvariantError(AlgebraError):
    """A computed growth table is not weakly increasing"""
    exit_code = 1

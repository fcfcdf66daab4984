"""
Exact field scalars.

A ScalarField wraps one of sympy's exact ground domains: QQ (arbitrary
precision rationals, always in lowest terms) or GF(p) for a prime p. Scalars
are the domain's own elements, so every module does arithmetic with plain
operators and never converts to floats.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Optional

from sympy import isprime
from sympy.polys.domains import GF, QQ

from algebra_errors import AlgebraError

logger = logging.getLogger(__name__)


class FieldKind(Enum):
    """Supported exact fields"""
    RATIONAL = "rational"
    PRIME = "prime"


@dataclass(frozen=True)
class ScalarField:
    """Field configuration: the rationals or a prime field F_p"""
    kind: FieldKind = FieldKind.RATIONAL
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONAL:
            if self.modulus is not None:
                raise AlgebraError("rational field takes no modulus")
        else:
            if self.modulus is None or not isprime(self.modulus):
                raise AlgebraError(f"prime field modulus must be prime, got {self.modulus}")

    @classmethod
    def rational(cls) -> "ScalarField":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def prime(cls, p: int) -> "ScalarField":
        return cls(FieldKind.PRIME, p)

    @cached_property
    def domain(self):
        """The sympy ground domain backing this field"""
        if self.kind is FieldKind.RATIONAL:
            return QQ
        return GF(self.modulus)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind is FieldKind.RATIONAL else self.modulus

    @property
    def is_char_two(self) -> bool:
        """True for F_2; the embedding pipeline needs characteristic != 2"""
        return self.characteristic == 2

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def __call__(self, numerator: Any = 0, denominator: int = 1):
        """Exact scalar numerator/denominator in this field"""
        if denominator == 0:
            raise AlgebraError("zero denominator")
        K = self.domain
        if self.kind is FieldKind.RATIONAL:
            if isinstance(numerator, int) and isinstance(denominator, int):
                return K(numerator, denominator)
            return K.convert(numerator) / K.convert(denominator)
        den = K(int(denominator))
        if not den:
            raise AlgebraError(f"denominator {denominator} vanishes mod {self.modulus}")
        return K(int(numerator)) / den

    def convert(self, value: Any):
        """Coerce an int or a scalar of this field"""
        if isinstance(value, int):
            return self.domain(value)
        return self.domain.convert(value)

    def is_zero(self, value) -> bool:
        return not value

    def random(self, rng: random.Random, bound: int = 5):
        """Random scalar: num/den with |num|, den <= bound (rationals) or a residue"""
        if self.kind is FieldKind.RATIONAL:
            return self(rng.randint(-bound, bound), rng.randint(1, bound))
        return self.domain(rng.randrange(self.modulus))

    def residue(self, value) -> int:
        """Canonical representative in [0, p) of a prime-field scalar"""
        return int(value) % self.modulus

    def format(self, value) -> str:
        if self.kind is FieldKind.RATIONAL:
            if value.denominator == 1:
                return str(value.numerator)
            return f"{value.numerator}/{value.denominator}"
        return str(self.residue(value))

    def __str__(self) -> str:
        if self.kind is FieldKind.RATIONAL:
            return "QQ"
        return f"GF({self.modulus})"

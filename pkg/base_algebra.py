#!/usr/bin/env python3
"""
Growth Lab - Base Algebras
Basis-indexed associative algebras over an exact field

Descriptors:
- StructureConstantsAlgebra: finite table e_i * e_j = sum_k c_ij^k e_k
- PolynomialAlgebra: commutative polynomials, indices are exponent vectors
- FreeAssociativeAlgebra: noncommutative words over k generators
- EnvelopingAlgebra: U(L) in PBW normal form for a LieStructure
- MatrixExtension: 2x2 matrices over an inner descriptor

Elements are immutable finitely supported maps index -> scalar with no
stored zeros. Every descriptor orders its basis by degree, then
lexicographically within a degree.
"""

from __future__ import annotations

import itertools
import logging
import random
from abc import ABC, abstractmethod
from types import MappingProxyType
from typing import Any, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra_errors import (
    AntisymmetryViolationError,
    InvalidIndexError,
    JacobiViolationError,
    MixedAlgebraError,
    NoUnitError,
    UnitLawError,
)
from scalars import ScalarField
from span_growth import CoordinateKey

logger = logging.getLogger(__name__)

BasisIndex = Hashable
RawTerms = Dict[BasisIndex, Any]

DEFAULT_NAMES = ("x", "y", "z", "u", "v", "w")


def default_names(count: int) -> Tuple[str, ...]:
    if count <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:count]
    return tuple(f"x{i}" for i in range(count))


def _split_word(name: str, names: Sequence[str]) -> List[int]:
    """Split 'x*y*x' (or 'xyx' when every name is one character) into positions"""
    lookup = {n: i for i, n in enumerate(names)}
    if "*" in name or name in lookup:
        parts = [p.strip() for p in name.split("*")]
    elif all(len(n) == 1 for n in names):
        parts = list(name)
    else:
        parts = [name]
    try:
        return [lookup[p] for p in parts]
    except KeyError as e:
        raise InvalidIndexError(f"unknown generator {e.args[0]!r} in {name!r}") from None


def _add_into(acc: RawTerms, index: BasisIndex, value) -> None:
    total = acc.get(index)
    acc[index] = value if total is None else total + value


class AlgebraElement:
    """Canonical sparse element of a base algebra"""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: "BaseAlgebra", terms: RawTerms):
        # trusted constructor: terms already validated, zero-free
        self.algebra = algebra
        self._terms = terms
        self._hash = None

    @property
    def terms(self) -> Mapping[BasisIndex, Any]:
        return MappingProxyType(self._terms)

    def items(self) -> List[Tuple[BasisIndex, Any]]:
        """Terms in basis order"""
        key = self.algebra.sort_key
        return sorted(self._terms.items(), key=lambda kv: key(kv[0]))

    def support(self) -> List[BasisIndex]:
        return [i for i, _ in self.items()]

    def coefficient(self, index: BasisIndex):
        return self._terms.get(index, self.algebra.field.zero)

    def degree(self) -> int:
        """Largest basis degree in the support (-1 for zero)"""
        return max((self.algebra.degree(i) for i in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: "AlgebraElement") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise MixedAlgebraError(f"cannot combine elements of {self.algebra} and {other.algebra}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        for i, c in other._terms.items():
            _add_into(acc, i, c)
        return self.algebra._from_raw(acc)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {i: -c for i, c in self._terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = self.algebra.field.convert(c)
        if not c:
            return self.algebra.zero()
        return AlgebraElement(self.algebra, {i: c * v for i, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return (other.algebra is self.algebra or other.algebra == self.algebra) and \
                self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def coordinates(self) -> Dict[CoordinateKey, Any]:
        """Sparse coordinate vector over Base(index) keys"""
        key = self.algebra.sort_key
        return {CoordinateKey.base(i, key(i)): c for i, c in self._terms.items()}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        fmt = self.algebra.field.format
        name = self.algebra.basis_name
        parts = []
        for i, c in self.items():
            text = fmt(c)
            if text == "1":
                parts.append(name(i))
            elif text == "-1":
                parts.append(f"-{name(i)}")
            else:
                parts.append(f"{text}*{name(i)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"


class BaseAlgebra(ABC):
    """
    Abstract basis-indexed algebra over an exact field.

    Subclasses supply index validation, ordering, names and the product of
    two basis elements; bilinear extension, units and element construction
    live here.
    """

    kind = "abstract"
    memoize_products = False

    def __init__(self, field: ScalarField):
        self.field = field
        self._products: Dict[Tuple[BasisIndex, BasisIndex], RawTerms] = {}
        self._hash: Optional[int] = None

    # identity and equality

    @abstractmethod
    def _key(self) -> tuple:
        """Structural identity of the descriptor"""

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, BaseAlgebra):
            return NotImplemented
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    # basis

    @abstractmethod
    def validate_index(self, index: BasisIndex) -> None:
        """Raise InvalidIndexError unless index is a basis index of this algebra"""

    @abstractmethod
    def degree(self, index: BasisIndex) -> int:
        ...

    @abstractmethod
    def sort_key(self, index: BasisIndex) -> tuple:
        """Degree-then-lexicographic total order on basis indices"""

    @abstractmethod
    def basis_name(self, index: BasisIndex) -> str:
        ...

    @abstractmethod
    def parse_monomial(self, name: str) -> AlgebraElement:
        """Element named by a kind-specific basis name"""

    @abstractmethod
    def generators(self) -> List[AlgebraElement]:
        """Natural algebra generators of the descriptor"""

    @abstractmethod
    def random_index(self, rng: random.Random, max_degree: int) -> BasisIndex:
        ...

    @abstractmethod
    def _basis_product(self, i: BasisIndex, j: BasisIndex) -> RawTerms:
        """Raw zero-free product of two valid basis indices"""

    # units

    @property
    def has_unit(self) -> bool:
        return True

    @abstractmethod
    def one(self) -> AlgebraElement:
        ...

    # elements

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def _from_raw(self, acc: RawTerms) -> AlgebraElement:
        return AlgebraElement(self, {i: c for i, c in acc.items() if c})

    def element(self, terms: Mapping[BasisIndex, Any]) -> AlgebraElement:
        """Validated canonical element from an index -> coefficient map"""
        acc: RawTerms = {}
        for index, coeff in terms.items():
            self.validate_index(index)
            _add_into(acc, index, self.field.convert(coeff))
        return self._from_raw(acc)

    def basis_element(self, index: BasisIndex, coeff: Any = 1) -> AlgebraElement:
        return self.element({index: coeff})

    def product_of(self, factors: Iterable[AlgebraElement]) -> AlgebraElement:
        result = None
        for f in factors:
            result = f if result is None else self.multiply(result, f)
        return self.one() if result is None else result

    # multiplication

    def mul_basis(self, i: BasisIndex, j: BasisIndex) -> AlgebraElement:
        self.validate_index(i)
        self.validate_index(j)
        return AlgebraElement(self, dict(self._cached_product(i, j)))

    def _cached_product(self, i: BasisIndex, j: BasisIndex) -> RawTerms:
        if not self.memoize_products:
            return self._basis_product(i, j)
        key = (i, j)
        product = self._products.get(key)
        if product is None:
            product = self._basis_product(i, j)
            self._products[key] = product
        return product

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        """Bilinear extension of the basis product"""
        for e in (x, y):
            if e.algebra is not self and e.algebra != self:
                raise MixedAlgebraError(f"element of {e.algebra} used in {self}")
        acc: RawTerms = {}
        for i, a in x._terms.items():
            for j, b in y._terms.items():
                ab = a * b
                for k, c in self._cached_product(i, j).items():
                    _add_into(acc, k, ab * c)
        return self._from_raw(acc)

    def random_element(
        self,
        rng: random.Random,
        max_degree: int = 2,
        terms: int = 3,
        coefficient_bound: int = 5,
    ) -> AlgebraElement:
        acc: RawTerms = {}
        for _ in range(rng.randint(0, terms)):
            _add_into(acc, self.random_index(rng, max_degree), self.field.random(rng, coefficient_bound))
        return self._from_raw(acc)

    def __repr__(self) -> str:
        return str(self)


class StructureConstantsAlgebra(BaseAlgebra):
    """Finite-dimensional algebra given by e_i e_j = sum_k c_ij^k e_k"""

    kind = "structure_constants"

    def __init__(
        self,
        field: ScalarField,
        dimension: int,
        products: Mapping[Tuple[int, int], Mapping[int, Any]],
        unit: Optional[Mapping[int, Any]] = None,
        names: Optional[Sequence[str]] = None,
    ):
        super().__init__(field)
        if dimension < 1:
            raise InvalidIndexError("structure-constant algebra needs dimension >= 1")
        self.dimension = dimension
        self.names = tuple(names) if names else tuple(f"e{i}" for i in range(dimension))
        if len(self.names) != dimension:
            raise InvalidIndexError(f"expected {dimension} basis names, got {len(self.names)}")
        table: Dict[Tuple[int, int], RawTerms] = {}
        for (i, j), row in products.items():
            self.validate_index(i)
            self.validate_index(j)
            acc: RawTerms = {}
            for k, c in row.items():
                self.validate_index(k)
                _add_into(acc, k, field.convert(c))
            nonzero = {k: c for k, c in acc.items() if c}
            if nonzero:
                table[(i, j)] = nonzero
        self.table = table
        self._unit: Optional[AlgebraElement] = None
        if unit is not None:
            u = self.element(unit)
            for i in range(dimension):
                e = self.basis_element(i)
                if self.multiply(u, e) != e or self.multiply(e, u) != e:
                    raise UnitLawError(f"declared unit {u} is not an identity for {self.names[i]}")
            self._unit = u

    @classmethod
    def from_table(
        cls,
        field: ScalarField,
        table: Sequence[Sequence[Sequence[Any]]],
        unit: Optional[Sequence[Any]] = None,
        names: Optional[Sequence[str]] = None,
    ) -> "StructureConstantsAlgebra":
        """Dense d x d x d table[i][j][k] = c_ij^k"""
        d = len(table)
        products = {
            (i, j): {k: table[i][j][k] for k in range(d)}
            for i in range(d) for j in range(d)
        }
        unit_map = None if unit is None else {i: c for i, c in enumerate(unit)}
        return cls(field, d, products, unit=unit_map, names=names)

    def _key(self) -> tuple:
        rows = tuple(sorted(
            (ij, tuple(sorted(row.items(), key=lambda kv: kv[0])))
            for ij, row in self.table.items()
        ))
        unit = None if self._unit is None else tuple(sorted(self._unit._terms.items(), key=lambda kv: kv[0]))
        return (self.kind, self.field, self.dimension, rows, unit, self.names)

    def validate_index(self, index) -> None:
        if not isinstance(index, int) or isinstance(index, bool) or not 0 <= index < self.dimension:
            raise InvalidIndexError(f"{index!r} is not a basis slot of a {self.dimension}-dimensional algebra")

    def degree(self, index) -> int:
        return 0

    def sort_key(self, index) -> tuple:
        return (0, index)

    def basis_name(self, index) -> str:
        return self.names[index]

    def parse_monomial(self, name: str) -> AlgebraElement:
        name = name.strip()
        if name in self.names:
            return self.basis_element(self.names.index(name))
        if name == "1":
            return self.one()
        if name.isdigit():
            return self.basis_element(int(name))
        raise InvalidIndexError(f"unknown basis element {name!r}")

    def generators(self) -> List[AlgebraElement]:
        return [self.basis_element(i) for i in range(self.dimension)]

    def random_index(self, rng, max_degree):
        return rng.randrange(self.dimension)

    def _basis_product(self, i, j) -> RawTerms:
        return self.table.get((i, j), {})

    @property
    def has_unit(self) -> bool:
        return self._unit is not None

    def one(self) -> AlgebraElement:
        if self._unit is None:
            raise NoUnitError(f"{self} has no unit, so E_-1(1) cannot be formed")
        return self._unit

    def __str__(self) -> str:
        return f"StructureConstants(d={self.dimension}, {self.field})"


class PolynomialAlgebra(BaseAlgebra):
    """Commutative polynomials in k variables; indices are exponent vectors"""

    kind = "polynomial"

    def __init__(self, field: ScalarField, variables: int, names: Optional[Sequence[str]] = None):
        super().__init__(field)
        if variables < 0:
            raise InvalidIndexError("variable count must be >= 0")
        self.variables = variables
        self.names = tuple(names) if names else default_names(variables)
        if len(self.names) != variables:
            raise InvalidIndexError(f"expected {variables} variable names")

    def _key(self) -> tuple:
        return (self.kind, self.field, self.variables, self.names)

    def validate_index(self, index) -> None:
        if not (isinstance(index, tuple) and len(index) == self.variables
                and all(isinstance(e, int) and e >= 0 for e in index)):
            raise InvalidIndexError(f"{index!r} is not an exponent vector of length {self.variables}")

    def degree(self, index) -> int:
        return sum(index)

    def sort_key(self, index) -> tuple:
        return (sum(index), index)

    def basis_name(self, index) -> str:
        factors = []
        for name, e in zip(self.names, index):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) or "1"

    def parse_monomial(self, name: str) -> AlgebraElement:
        name = name.strip()
        if name.startswith("("):
            try:
                index = tuple(int(p) for p in name.strip("()").split(",") if p.strip())
            except ValueError:
                raise InvalidIndexError(f"bad exponent tuple {name!r}") from None
            return self.basis_element(index)
        exponents = [0] * self.variables
        if name != "1":
            for factor in name.split("*"):
                base, _, power = factor.strip().partition("^")
                if base not in self.names:
                    raise InvalidIndexError(f"unknown variable {base!r} in {name!r}")
                if power and not power.isdigit():
                    raise InvalidIndexError(f"bad exponent {power!r} in {name!r}")
                exponents[self.names.index(base)] += int(power) if power else 1
        return self.basis_element(tuple(exponents))

    def generators(self) -> List[AlgebraElement]:
        return [self.basis_element(self._unit_vector(i)) for i in range(self.variables)]

    def _unit_vector(self, i: int) -> tuple:
        return tuple(1 if k == i else 0 for k in range(self.variables))

    def random_index(self, rng, max_degree):
        exponents = [0] * self.variables
        if self.variables:
            for _ in range(rng.randint(0, max_degree)):
                exponents[rng.randrange(self.variables)] += 1
        return tuple(exponents)

    def _basis_product(self, i, j) -> RawTerms:
        return {tuple(a + b for a, b in zip(i, j)): self.field.one}

    def one(self) -> AlgebraElement:
        return self.basis_element((0,) * self.variables)

    def __str__(self) -> str:
        return f"Polynomial({self.variables}, {self.field})"


class FreeAssociativeAlgebra(BaseAlgebra):
    """Noncommutative polynomials; indices are words over the generators"""

    kind = "free_associative"

    def __init__(self, field: ScalarField, generators: int, names: Optional[Sequence[str]] = None):
        super().__init__(field)
        if generators < 1:
            raise InvalidIndexError("free algebra needs at least one generator")
        self.rank = generators
        self.names = tuple(names) if names else default_names(generators)
        if len(self.names) != generators:
            raise InvalidIndexError(f"expected {generators} generator names")

    def _key(self) -> tuple:
        return (self.kind, self.field, self.rank, self.names)

    def validate_index(self, index) -> None:
        if not (isinstance(index, tuple) and all(isinstance(g, int) and 0 <= g < self.rank for g in index)):
            raise InvalidIndexError(f"{index!r} is not a word over {self.rank} generators")

    def degree(self, index) -> int:
        return len(index)

    def sort_key(self, index) -> tuple:
        return (len(index), index)

    def basis_name(self, index) -> str:
        if not index:
            return "1"
        sep = "" if all(len(n) == 1 for n in self.names) else "*"
        return sep.join(self.names[g] for g in index)

    def parse_monomial(self, name: str) -> AlgebraElement:
        name = name.strip()
        if name in ("1", ""):
            return self.one()
        return self.basis_element(tuple(_split_word(name, self.names)))

    def generators(self) -> List[AlgebraElement]:
        return [self.basis_element((g,)) for g in range(self.rank)]

    def random_index(self, rng, max_degree):
        return tuple(rng.randrange(self.rank) for _ in range(rng.randint(0, max_degree)))

    def _basis_product(self, i, j) -> RawTerms:
        return {i + j: self.field.one}

    def one(self) -> AlgebraElement:
        return self.basis_element(())

    def __str__(self) -> str:
        return f"FreeAssociative({self.rank}, {self.field})"


class LieStructure:
    """
    Lie algebra given by structure constants [x_i, x_j] = sum_k c_ij^k x_k.

    Missing entries (j, i) are filled by antisymmetry. Construction rejects
    constants that are not alternating or that fail the Jacobi identity.
    """

    def __init__(
        self,
        field: ScalarField,
        dimension: int,
        brackets: Mapping[Tuple[int, int], Mapping[int, Any]],
        names: Optional[Sequence[str]] = None,
    ):
        if dimension < 1:
            raise InvalidIndexError("Lie algebra needs dimension >= 1")
        self.field = field
        self.dimension = dimension
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(dimension))
        given: Dict[Tuple[int, int], RawTerms] = {}
        for (i, j), row in brackets.items():
            for g in (i, j, *row.keys()):
                if not isinstance(g, int) or not 0 <= g < dimension:
                    raise InvalidIndexError(f"{g!r} is not a Lie generator index")
            given[(i, j)] = {k: field.convert(c) for k, c in row.items() if field.convert(c)}
        table: Dict[Tuple[int, int], RawTerms] = {}
        for i in range(dimension):
            for j in range(dimension):
                if (i, j) in given:
                    row = given[(i, j)]
                    if (j, i) in given:
                        mirror = given[(j, i)]
                        if {k: -c for k, c in mirror.items()} != row:
                            raise AntisymmetryViolationError(
                                f"[{self.names[i]},{self.names[j]}] != -[{self.names[j]},{self.names[i]}]", (i, j))
                elif (j, i) in given:
                    row = {k: -c for k, c in given[(j, i)].items()}
                else:
                    row = {}
                if i == j and row:
                    raise AntisymmetryViolationError(
                        f"[{self.names[i]},{self.names[i]}] must vanish", (i, i))
                if row:
                    table[(i, j)] = row
        self.table = table
        self._check_jacobi()
        self._algebra: Optional[StructureConstantsAlgebra] = None

    def bracket(self, i: int, j: int) -> RawTerms:
        return self.table.get((i, j), {})

    def _bracket_vectors(self, x: RawTerms, y: RawTerms) -> RawTerms:
        acc: RawTerms = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.bracket(i, j).items():
                    _add_into(acc, k, a * b * c)
        return {k: c for k, c in acc.items() if c}

    def _check_jacobi(self) -> None:
        one = self.field.one
        for i, j, k in itertools.combinations(range(self.dimension), 3):
            acc: RawTerms = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self._bracket_vectors({b: one}, {c: one})
                for idx, v in self._bracket_vectors({a: one}, inner).items():
                    _add_into(acc, idx, v)
            if any(acc.values()):
                names = (self.names[i], self.names[j], self.names[k])
                raise JacobiViolationError(f"Jacobi identity fails on ({', '.join(names)})", names)

    def as_algebra(self) -> StructureConstantsAlgebra:
        """The (non-associative) algebra whose product is the bracket"""
        if self._algebra is None:
            self._algebra = StructureConstantsAlgebra(
                self.field, self.dimension, self.table, unit=None, names=self.names)
        return self._algebra

    def _key(self) -> tuple:
        rows = tuple(sorted(
            (ij, tuple(sorted(row.items(), key=lambda kv: kv[0])))
            for ij, row in self.table.items()
        ))
        return (self.field, self.dimension, rows, self.names)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieStructure):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        return f"Lie(d={self.dimension}, {self.field})"


def sl2_lie(field: ScalarField) -> LieStructure:
    """sl_2 with basis e, h, f: [e,f] = h, [h,e] = 2e, [h,f] = -2f"""
    e, h, f = 0, 1, 2
    return LieStructure(field, 3, {
        (e, f): {h: 1},
        (h, e): {e: 2},
        (h, f): {f: -2},
    }, names=("e", "h", "f"))


def abelian_lie(field: ScalarField, dimension: int) -> LieStructure:
    return LieStructure(field, dimension, {}, names=default_names(dimension))


class EnvelopingAlgebra(BaseAlgebra):
    """
    Universal enveloping algebra U(L) in PBW normal form.

    Basis indices are words of generator ids, weakly increasing in the PBW
    order. Products are straightened with x_j x_i -> x_i x_j + [x_j, x_i]
    at the leftmost descent; normal forms are memoized per word.
    """

    kind = "enveloping"
    memoize_products = True

    def __init__(self, lie: LieStructure, order: Optional[Sequence[int]] = None):
        super().__init__(lie.field)
        self.lie = lie
        self.order = tuple(order) if order is not None else tuple(range(lie.dimension))
        if sorted(self.order) != list(range(lie.dimension)):
            raise InvalidIndexError(f"PBW order {self.order} is not a permutation of the generators")
        self._rank = {g: p for p, g in enumerate(self.order)}
        self._normal_forms: Dict[tuple, RawTerms] = {}

    def _key(self) -> tuple:
        return (self.kind, self.lie._key(), self.order)

    def validate_index(self, index) -> None:
        if not (isinstance(index, tuple) and all(isinstance(g, int) and g in self._rank for g in index)):
            raise InvalidIndexError(f"{index!r} is not a word over the Lie generators")
        ranks = [self._rank[g] for g in index]
        if ranks != sorted(ranks):
            raise InvalidIndexError(f"{index!r} is not a PBW monomial (not weakly increasing)")

    def degree(self, index) -> int:
        return len(index)

    def sort_key(self, index) -> tuple:
        return (len(index), tuple(self._rank[g] for g in index))

    def basis_name(self, index) -> str:
        return "*".join(self.lie.names[g] for g in index) or "1"

    def parse_monomial(self, name: str) -> AlgebraElement:
        name = name.strip()
        if name in ("1", ""):
            return self.one()
        return self.straighten(_split_word(name, self.lie.names))

    def generators(self) -> List[AlgebraElement]:
        return [self.basis_element((g,)) for g in self.order]

    def random_index(self, rng, max_degree):
        word = [rng.randrange(self.lie.dimension) for _ in range(rng.randint(0, max_degree))]
        return tuple(sorted(word, key=self._rank.__getitem__))

    def one(self) -> AlgebraElement:
        return self.basis_element(())

    def _normal_form(self, word: tuple) -> RawTerms:
        cached = self._normal_forms.get(word)
        if cached is not None:
            return cached
        rank = self._rank
        for t in range(len(word) - 1):
            if rank[word[t]] > rank[word[t + 1]]:
                break
        else:
            result = {word: self.field.one}
            self._normal_forms[word] = result
            return result
        j, i = word[t], word[t + 1]
        acc: RawTerms = dict(self._normal_form(word[:t] + (i, j) + word[t + 2:]))
        for k, c in self.lie.bracket(j, i).items():
            for mono, coeff in self._normal_form(word[:t] + (k,) + word[t + 2:]).items():
                _add_into(acc, mono, c * coeff)
        result = {m: c for m, c in acc.items() if c}
        self._normal_forms[word] = result
        return result

    def straighten(self, word: Sequence[int]) -> AlgebraElement:
        word = tuple(word)
        for g in word:
            if not isinstance(g, int) or g not in self._rank:
                raise InvalidIndexError(f"{g!r} is not a Lie generator index")
        return AlgebraElement(self, dict(self._normal_form(word)))

    def _basis_product(self, i, j) -> RawTerms:
        return self._normal_form(i + j)

    def __str__(self) -> str:
        return f"U({self.lie})"


class MatrixExtension(BaseAlgebra):
    """
    2x2 matrices over an inner descriptor.

    Basis indices are ((r, s), inner index); ((r,s),i)((t,u),j) equals
    [s == t] ((r,u), i*j).
    """

    kind = "matrix"
    memoize_products = True
    size = 2

    def __init__(self, inner: BaseAlgebra):
        super().__init__(inner.field)
        self.inner = inner

    def _key(self) -> tuple:
        return (self.kind, self.inner._key())

    def validate_index(self, index) -> None:
        try:
            (r, s), inner_index = index
        except (TypeError, ValueError):
            raise InvalidIndexError(f"{index!r} is not ((r, s), inner index)") from None
        if r not in (1, 2) or s not in (1, 2):
            raise InvalidIndexError(f"matrix position {(r, s)} outside 2x2")
        self.inner.validate_index(inner_index)

    def degree(self, index) -> int:
        return self.inner.degree(index[1])

    def sort_key(self, index) -> tuple:
        return (self.inner.sort_key(index[1]), index[0])

    def basis_name(self, index) -> str:
        (r, s), inner_index = index
        return f"e{r}{s}:{self.inner.basis_name(inner_index)}"

    def parse_monomial(self, name: str) -> AlgebraElement:
        name = name.strip()
        position, _, inner_name = name.partition(":")
        if len(position) != 3 or position[0] != "e" or not position[1:].isdigit():
            raise InvalidIndexError(f"matrix basis name must look like 'e12:inner', got {name!r}")
        a = self.inner.parse_monomial(inner_name) if inner_name else self.inner.one()
        return self.matrix_unit(int(position[1]), int(position[2]), a)

    def matrix_unit(self, r: int, s: int, a: Optional[AlgebraElement] = None) -> AlgebraElement:
        """e_rs(a); a defaults to the inner unit"""
        if r not in (1, 2) or s not in (1, 2):
            raise InvalidIndexError(f"matrix position {(r, s)} outside 2x2")
        if a is None:
            a = self.inner.one()
        return AlgebraElement(self, {((r, s), i): c for i, c in a._terms.items()})

    def generators(self) -> List[AlgebraElement]:
        gens = []
        if self.inner.has_unit:
            gens = [self.matrix_unit(r, s) for r in (1, 2) for s in (1, 2)]
        gens += [self.matrix_unit(1, 1, g) for g in self.inner.generators()]
        return gens

    def random_index(self, rng, max_degree):
        return ((rng.randint(1, 2), rng.randint(1, 2)), self.inner.random_index(rng, max_degree))

    def _basis_product(self, i, j) -> RawTerms:
        (r, s), a = i
        (t, u), b = j
        if s != t:
            return {}
        return {((r, u), k): c for k, c in self.inner._cached_product(a, b).items()}

    @property
    def has_unit(self) -> bool:
        return self.inner.has_unit

    def one(self) -> AlgebraElement:
        return self.matrix_unit(1, 1) + self.matrix_unit(2, 2)

    def __str__(self) -> str:
        return f"M2({self.inner})"


# Module-level operations


def mul_basis(alg: BaseAlgebra, i: BasisIndex, j: BasisIndex) -> AlgebraElement:
    return alg.mul_basis(i, j)


def mul(alg: BaseAlgebra, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return alg.multiply(x, y)


def one(alg: BaseAlgebra) -> AlgebraElement:
    return alg.one()


def pbw_straighten(alg: EnvelopingAlgebra, word: Sequence[int]) -> AlgebraElement:
    return alg.straighten(word)


def matrix_extend(inner: BaseAlgebra) -> MatrixExtension:
    return MatrixExtension(inner)


def field_algebra(field: ScalarField) -> StructureConstantsAlgebra:
    """The ground field F as the one-dimensional algebra with e*e = e"""
    return StructureConstantsAlgebra(field, 1, {(0, 0): {0: 1}}, unit={0: 1}, names=("1",))


def adjoin_unit(alg: StructureConstantsAlgebra) -> StructureConstantsAlgebra:
    """Unital hull: slot 0 is the new unit, old slot i moves to i + 1"""
    d = alg.dimension
    products: Dict[Tuple[int, int], RawTerms] = {}
    for i in range(d + 1):
        products[(0, i)] = {i: 1}
        products[(i, 0)] = {i: 1}
    for (i, j), row in alg.table.items():
        products[(i + 1, j + 1)] = {k + 1: c for k, c in row.items()}
    names = ("1",) + alg.names if "1" not in alg.names else ("unit",) + alg.names
    return StructureConstantsAlgebra(alg.field, d + 1, products, unit={0: 1}, names=names)


def random_order_straighten(alg: EnvelopingAlgebra, word: Sequence[int], rng: random.Random) -> AlgebraElement:
    """
    Rewriting oracle for pbw_straighten: applies single swaps at randomly
    chosen descents, without memoization, until every word is sorted.
    """
    rank = alg._rank
    pending: RawTerms = {tuple(word): alg.field.one}
    result: RawTerms = {}
    while pending:
        w = min(pending, key=lambda v: (len(v), v))
        c = pending.pop(w)
        if not c:
            continue
        descents = [t for t in range(len(w) - 1) if rank[w[t]] > rank[w[t + 1]]]
        if not descents:
            _add_into(result, w, c)
            continue
        t = rng.choice(descents)
        j, i = w[t], w[t + 1]
        _add_into(pending, w[:t] + (i, j) + w[t + 2:], c)
        for k, ck in alg.lie.bracket(j, i).items():
            _add_into(pending, w[:t] + (k,) + w[t + 2:], c * ck)
    return alg._from_raw(result)


def check_associativity(
    alg: BaseAlgebra,
    triples: Iterable[Tuple[AlgebraElement, AlgebraElement, AlgebraElement]],
) -> Optional[Tuple[AlgebraElement, AlgebraElement, AlgebraElement]]:
    """First triple with (xy)z != x(yz), or None"""
    for x, y, z in triples:
        if alg.multiply(alg.multiply(x, y), z) != alg.multiply(x, alg.multiply(y, z)):
            return x, y, z
    return None

#!/usr/bin/env python3
"""
Growth Lab - Span Engine and Growth Functions

Exact incremental row reduction over ordered composite coordinates, and
growth functions g(V, n) = dim V^n computed with it.

- SpanBasis: fully reduced pivoted basis (pivot = smallest coordinate,
  normalized to 1); reduce() decides membership, insert() grows the span
- assoc_growth: V^n = V^(n-1) + V^(n-1) V
- lie_growth: L_n = L_(n-1) + [L_(n-1), V] (left-normed spanning)
- brute_force_span: every bracketing of every generator sequence, for tests
- asym_leq / asym_equiv: finite-range witnesses for f(n) <= C g(Cn)

Only elements that enlarged the span at level n-1 are multiplied at level
n; products of older spanning elements already lie in V^(n-1).
"""

from __future__ import annotations

import logging
import operator
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from pathlib import Path
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Set, Tuple, Union

import pandas as pd
from sympy.polys.matrices import DomainMatrix

from algebra_errors import AlgebraError, GrowthInvariantError, InsufficientDataError, OracleLimitError
from scalars import ScalarField

logger = logging.getLogger(__name__)

DEFAULT_BRUTE_FORCE_CAP = 6


class CoordinateKind(IntEnum):
    """Ambient coordinate variants, in their comparison order"""
    BASE = 0
    CELL = 1
    BAND = 2


class CoordinateKey(NamedTuple):
    """
    Ambient coordinate. Tuples compare as Base < Cell < Band, then by
    (row, col) or offset, then by the basis index's degree-lex rank.
    """
    kind: CoordinateKind
    major: int
    minor: int
    rank: tuple
    index: Hashable

    @classmethod
    def base(cls, index: Hashable, rank: tuple) -> "CoordinateKey":
        return cls(CoordinateKind.BASE, 0, 0, rank, index)

    @classmethod
    def cell(cls, row: int, col: int, index: Hashable, rank: tuple) -> "CoordinateKey":
        return cls(CoordinateKind.CELL, row, col, rank, index)

    @classmethod
    def band(cls, offset: int, index: Hashable, rank: tuple) -> "CoordinateKey":
        return cls(CoordinateKind.BAND, offset, 0, rank, index)

    def __str__(self) -> str:
        if self.kind is CoordinateKind.BASE:
            return f"Base({self.index!r})"
        if self.kind is CoordinateKind.CELL:
            return f"Cell({self.major},{self.minor},{self.index!r})"
        return f"Band({self.major},{self.index!r})"


SparseVector = Dict[CoordinateKey, Any]


class SpanBasis:
    """
    Incremental reduced row echelon form of a set of sparse vectors.

    Every stored row has its smallest coordinate as pivot with value 1, and
    no row has a nonzero entry at another row's pivot. A column index maps
    each non-pivot coordinate to the pivots of the rows touching it, so new
    pivots are cancelled from older rows without scanning all of them.
    """

    def __init__(self, field: ScalarField):
        self.field = field
        self._rows: Dict[CoordinateKey, SparseVector] = {}
        self._columns: Dict[CoordinateKey, Set[CoordinateKey]] = defaultdict(set)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def dimension(self) -> int:
        return len(self._rows)

    def pivots(self) -> List[CoordinateKey]:
        return sorted(self._rows)

    def row(self, pivot: CoordinateKey) -> Mapping[CoordinateKey, Any]:
        return dict(self._rows[pivot])

    def reduce(self, vector: Mapping[CoordinateKey, Any]) -> SparseVector:
        """Residual of vector with every pivot coordinate cleared"""
        residual = {k: v for k, v in vector.items() if v}
        rows = self._rows
        hits = [k for k in residual if k in rows]
        for p in hits:
            # rows never touch other pivots, so pivot entries of residual stay original
            c = residual.pop(p)
            for k, v in rows[p].items():
                if k == p:
                    continue
                new = residual.get(k, 0) - c * v
                if new:
                    residual[k] = new
                else:
                    residual.pop(k, None)
        return residual

    def contains(self, vector: Mapping[CoordinateKey, Any]) -> bool:
        return not self.reduce(vector)

    def insert(self, vector: Mapping[CoordinateKey, Any]) -> bool:
        """Add vector to the span; True iff the dimension grew"""
        residual = self.reduce(vector)
        if not residual:
            return False
        pivot = min(residual)
        inv = self.field.one / residual[pivot]
        new_row = {k: v * inv for k, v in residual.items()}

        # cancel the new pivot from earlier rows
        for q in self._columns.pop(pivot, ()):
            other = self._rows[q]
            c = other.pop(pivot)
            for k, v in new_row.items():
                if k == pivot:
                    continue
                new = other.get(k, 0) - c * v
                if new:
                    if k not in other:
                        self._columns[k].add(q)
                    other[k] = new
                elif k in other:
                    del other[k]
                    self._columns[k].discard(q)

        self._rows[pivot] = new_row
        for k in new_row:
            if k != pivot:
                self._columns[k].add(pivot)
        return True


def dense_rank(field: ScalarField, vectors: Sequence[Mapping[CoordinateKey, Any]]) -> int:
    """Rank of the vectors as a dense matrix (independent oracle for SpanBasis)"""
    columns = sorted({k for v in vectors for k in v})
    if not vectors or not columns:
        return 0
    K = field.domain
    rows = [[K.convert(v.get(k, 0)) for k in columns] for v in vectors]
    return DomainMatrix(rows, (len(rows), len(columns)), K).rank()


class GrowthKind(Enum):
    """How V^n is generated"""
    ASSOCIATIVE = "associative"
    LIE = "lie"


@dataclass(frozen=True)
class Ambient:
    """
    Multiplication context for a growth computation.

    Elements only need `*`, `-` and `coordinates()`; the product is either
    the associative product or a bracket (structure-constant Lie product,
    or the commutator xy - yx of an associative algebra).
    """
    name: str
    field: ScalarField
    kind: GrowthKind
    product: Callable[[Any, Any], Any]

    @classmethod
    def associative(cls, source: Any, name: Optional[str] = None) -> "Ambient":
        return cls(name or str(source), source.field, GrowthKind.ASSOCIATIVE, operator.mul)

    @classmethod
    def commutator(cls, source: Any, name: Optional[str] = None) -> "Ambient":
        return cls(name or f"[{source}]", source.field, GrowthKind.LIE, _commutator)

    @classmethod
    def lie(cls, lie_structure: Any, name: Optional[str] = None) -> "Ambient":
        """Ambient of a LieStructure; elements come from lie_structure.as_algebra()"""
        return cls(name or str(lie_structure), lie_structure.field, GrowthKind.LIE, operator.mul)


def _commutator(x, y):
    return x * y - y * x


@dataclass
class GrowthTable:
    """g(V, n) for n = 1..n_max, with an optional bound column"""
    kind: GrowthKind
    entries: Dict[int, int]
    bound: Optional[Dict[int, int]] = None
    label: str = ""

    @classmethod
    def from_values(cls, kind: GrowthKind, values: Sequence[int], label: str = "") -> "GrowthTable":
        return cls(kind, {n: int(v) for n, v in enumerate(values, start=1)}, label=label)

    @property
    def n_max(self) -> int:
        return max(self.entries, default=0)

    def __getitem__(self, n: int) -> int:
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)

    def values(self) -> List[int]:
        return [self.entries[n] for n in sorted(self.entries)]

    def is_monotone(self) -> bool:
        values = self.values()
        return all(a <= b for a, b in zip(values, values[1:]))

    def with_bound(self, bound: Callable[[int, int], int]) -> "GrowthTable":
        """Copy with bound[n] = bound(n, self[n])"""
        return GrowthTable(
            self.kind, dict(self.entries),
            {n: int(bound(n, d)) for n, d in self.entries.items()}, self.label)

    def violations(self) -> List[int]:
        """n where the stored dimension exceeds the bound column"""
        if self.bound is None:
            return []
        return [n for n in sorted(self.entries) if self.entries[n] > self.bound[n]]

    def to_frame(self) -> pd.DataFrame:
        ns = sorted(self.entries)
        data = {"n": ns, "dim": [self.entries[n] for n in ns]}
        if self.bound is not None:
            data["bound"] = [self.bound[n] for n in ns]
        return pd.DataFrame(data)

    def to_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        self.to_frame().to_csv(path, index=False, lineterminator="\n")
        return path


@dataclass
class Spanning:
    """A spanning product with the generator sequence that produced it"""
    element: Any
    word: Tuple[int, ...]


@dataclass
class FiltrationLevel:
    """Snapshot after level n of a filtration computation"""
    n: int
    dimension: int
    new: List[Spanning]
    spanning: Tuple[Spanning, ...]
    basis: SpanBasis = field(repr=False)


def iterate_filtration(ambient: Ambient, gens: Sequence[Any], n_max: int) -> Iterator[FiltrationLevel]:
    """
    Yield levels 1..n_max of the filtration generated by gens.

    Level n multiplies (or brackets, on the right) the elements that grew
    the span at level n-1 by every generator. The yielded basis is live:
    read it before advancing the iterator.
    """
    if n_max < 1:
        raise AlgebraError(f"n_max must be >= 1, got {n_max}")
    if not gens:
        raise AlgebraError("generator list is empty")
    basis = SpanBasis(ambient.field)
    frontier: List[Spanning] = []
    for idx, g in enumerate(gens):
        if basis.insert(g.coordinates()):
            frontier.append(Spanning(g, (idx,)))
    spanning: List[Spanning] = list(frontier)
    logger.debug(f"[{ambient.name}] n=1 dim={len(basis)}")
    yield FiltrationLevel(1, len(basis), frontier, tuple(spanning), basis)

    for n in range(2, n_max + 1):
        new: List[Spanning] = []
        for s in frontier:
            for idx, g in enumerate(gens):
                p = ambient.product(s.element, g)
                if p and basis.insert(p.coordinates()):
                    new.append(Spanning(p, s.word + (idx,)))
        frontier = new
        spanning.extend(new)
        logger.debug(f"[{ambient.name}] n={n} dim={len(basis)} frontier={len(new)}")
        yield FiltrationLevel(n, len(basis), new, tuple(spanning), basis)


def _growth(ambient: Ambient, gens: Sequence[Any], n_max: int, label: str) -> GrowthTable:
    entries = {level.n: level.dimension for level in iterate_filtration(ambient, gens, n_max)}
    table = GrowthTable(ambient.kind, entries, label=label or ambient.name)
    if not table.is_monotone():
        raise GrowthInvariantError(f"growth table for {table.label} is not weakly increasing: {table.values()}")
    logger.info(f"[{table.label}] {ambient.kind.value} growth n<= {n_max}: {table.values()}")
    return table


def assoc_growth(ambient: Ambient, gens: Sequence[Any], n_max: int, label: str = "") -> GrowthTable:
    """g(V, n) for V = span(gens) in an associative ambient"""
    if ambient.kind is not GrowthKind.ASSOCIATIVE:
        raise AlgebraError(f"assoc_growth needs an associative ambient, got {ambient.kind.value}")
    return _growth(ambient, gens, n_max, label)


def lie_growth(ambient: Ambient, gens: Sequence[Any], n_max: int, label: str = "") -> GrowthTable:
    """g(V, n) for the Lie subalgebra generated by V = span(gens)"""
    if ambient.kind is not GrowthKind.LIE:
        raise AlgebraError(f"lie_growth needs a bracket ambient, got {ambient.kind.value}")
    return _growth(ambient, gens, n_max, label)


def brute_force_span(
    ambient: Ambient,
    gens: Sequence[Any],
    n: int,
    cap: int = DEFAULT_BRUTE_FORCE_CAP,
) -> int:
    """
    dim of the span of every full binary-tree product of every generator
    sequence of length <= n. Catalan-sized: test oracle only.
    """
    if n < 1:
        raise AlgebraError(f"n must be >= 1, got {n}")
    if n > cap:
        raise OracleLimitError(f"brute_force_span capped at n={cap}, asked for {n}")
    trees: Dict[int, Set[Any]] = {1: {g for g in gens if g}}
    for k in range(2, n + 1):
        level: Set[Any] = set()
        for i in range(1, k):
            for a in trees[i]:
                for b in trees[k - i]:
                    p = ambient.product(a, b)
                    if p:
                        level.add(p)
        trees[k] = level
    basis = SpanBasis(ambient.field)
    for k in range(1, n + 1):
        for element in trees[k]:
            basis.insert(element.coordinates())
    return basis.dimension


def asym_leq(f: GrowthTable, g: GrowthTable, C_max: int, n_range: Iterable[int]) -> Optional[int]:
    """
    Smallest C <= C_max with f(n) <= C g(Cn) for all n in n_range, or None.

    A finite-range heuristic witness, not a proof of f <= g asymptotically.
    """
    ns = sorted(n_range)
    if not ns:
        raise InsufficientDataError("empty n range")
    missing = [n for n in ns if n not in f.entries]
    if missing:
        raise InsufficientDataError(f"f is undefined at n={missing[0]}")
    needed = C_max * ns[-1]
    if any(m not in g.entries for m in range(1, needed + 1)):
        raise InsufficientDataError(f"g must be defined up to {needed}, table stops at {g.n_max}")
    for C in range(1, C_max + 1):
        if all(f[n] <= C * g[C * n] for n in ns):
            return C
    return None


def asym_equiv(
    f: GrowthTable, g: GrowthTable, C_max: int, n_range: Iterable[int]
) -> Tuple[Optional[int], Optional[int]]:
    """Witnesses for f <= g and g <= f on the same finite range"""
    ns = list(n_range)
    return asym_leq(f, g, C_max, ns), asym_leq(g, f, C_max, ns)

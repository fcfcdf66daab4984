#!/usr/bin/env python3
"""
Growth Lab - Banded Infinite Matrices

Canonical element calculus for the subalgebra of N x N column-finite
matrices over a base algebra A generated by bands E_k(a) and matrix units
e_ij(a).

An element is stored as finitely many bands (the eventually constant value
along diagonal k) plus finitely many cells (pointwise deviations):

    x = sum_(i,j) e_ij(cells[i,j]) + sum_k E_k(bands[k])

with E_k(a) = sum_(i>=1) e_(i,i+k)(a) for k >= 0 and
E_k(a) = sum_(i>=1) e_(i-k,i)(a) for k <= -1. No stored value is zero, so
the representation is unique.

A truncated-matrix oracle (numpy object arrays over base-algebra elements)
validates the closed multiplication rules independently.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Dict, Mapping, Optional, Tuple

import numpy as np

from algebra_errors import InvalidIndexError, MixedAlgebraError
from base_algebra import AlgebraElement, BaseAlgebra
from span_growth import CoordinateKey

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CellKey:
    """1-indexed (row, col) position"""
    row: int
    col: int

    def __post_init__(self):
        if self.row < 1 or self.col < 1:
            raise InvalidIndexError(f"cell ({self.row},{self.col}) is outside N x N (indices start at 1)")


def _accumulate(acc: Dict[Any, AlgebraElement], key: Any, value: AlgebraElement) -> None:
    if not value:
        return
    current = acc.get(key)
    acc[key] = value if current is None else current + value


class BandedElement:
    """Canonical band-plus-finite infinite matrix over a base algebra"""

    __slots__ = ("algebra", "_cells", "_bands", "_hash")

    def __init__(self, algebra: BaseAlgebra, cells: Dict[CellKey, AlgebraElement], bands: Dict[int, AlgebraElement]):
        # trusted constructor, use canonicalize() for raw input
        self.algebra = algebra
        self._cells = cells
        self._bands = bands
        self._hash = None

    @property
    def field(self):
        return self.algebra.field

    @property
    def cells(self) -> Mapping[CellKey, AlgebraElement]:
        return MappingProxyType(self._cells)

    @property
    def bands(self) -> Mapping[int, AlgebraElement]:
        return MappingProxyType(self._bands)

    @property
    def max_offset(self) -> int:
        """Largest |k| over the bands (0 when there are none)"""
        return max((abs(k) for k in self._bands), default=0)

    @property
    def max_cell_index(self) -> int:
        return max((max(c.row, c.col) for c in self._cells), default=0)

    def __bool__(self) -> bool:
        return bool(self._cells or self._bands)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other) -> bool:
        if isinstance(other, BandedElement):
            return (other.algebra is self.algebra or other.algebra == self.algebra) and \
                self._cells == other._cells and self._bands == other._bands
        if isinstance(other, int) and other == 0:
            return not self
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((frozenset(self._cells.items()), frozenset(self._bands.items())))
        return self._hash

    def __add__(self, other: "BandedElement") -> "BandedElement":
        if not isinstance(other, BandedElement):
            return NotImplemented
        return add(self, other)

    def __neg__(self) -> "BandedElement":
        return BandedElement(
            self.algebra,
            {k: -v for k, v in self._cells.items()},
            {k: -v for k, v in self._bands.items()},
        )

    def __sub__(self, other: "BandedElement") -> "BandedElement":
        if not isinstance(other, BandedElement):
            return NotImplemented
        return add(self, -other)

    def __mul__(self, other):
        if isinstance(other, BandedElement):
            return mul_banded(self, other)
        return scale(other, self)

    def __rmul__(self, other):
        return scale(other, self)

    def coordinates(self) -> Dict[CoordinateKey, Any]:
        return coordinates(self)

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = [f"E{k}({self._bands[k]})" for k in sorted(self._bands)]
        parts += [f"e{c.row},{c.col}({self._cells[c]})" for c in sorted(self._cells)]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BandedElement({self})"


def canonicalize(
    algebra: BaseAlgebra,
    cells: Mapping[Any, AlgebraElement],
    bands: Mapping[int, AlgebraElement],
) -> BandedElement:
    """Drop zero values; cell keys may be CellKey or (row, col) pairs"""
    clean_cells: Dict[CellKey, AlgebraElement] = {}
    for key, value in cells.items():
        if not isinstance(key, CellKey):
            key = CellKey(*key)
        _check_algebra(algebra, value)
        _accumulate(clean_cells, key, value)
    clean_bands: Dict[int, AlgebraElement] = {}
    for k, value in bands.items():
        _check_algebra(algebra, value)
        _accumulate(clean_bands, int(k), value)
    return BandedElement(
        algebra,
        {k: v for k, v in clean_cells.items() if v},
        {k: v for k, v in clean_bands.items() if v},
    )


def _check_algebra(algebra: BaseAlgebra, value: AlgebraElement) -> None:
    if value.algebra is not algebra and value.algebra != algebra:
        raise MixedAlgebraError(f"entry from {value.algebra} in a matrix over {algebra}")


def zero(algebra: BaseAlgebra) -> BandedElement:
    return BandedElement(algebra, {}, {})


def cell(i: int, j: int, a: AlgebraElement) -> BandedElement:
    """e_ij(a)"""
    key = CellKey(i, j)
    return BandedElement(a.algebra, {key: a} if a else {}, {})


def band(k: int, a: AlgebraElement) -> BandedElement:
    """E_k(a)"""
    return BandedElement(a.algebra, {}, {int(k): a} if a else {})


def identity(algebra: BaseAlgebra) -> BandedElement:
    """E_0(1)"""
    return band(0, algebra.one())


def random_banded(
    algebra: BaseAlgebra,
    rng: random.Random,
    max_offset: int = 3,
    bands: int = 2,
    cells: int = 2,
    max_cell: int = 4,
    max_degree: int = 2,
) -> BandedElement:
    """Seeded random element with |offset| <= max_offset and cells in [1, max_cell]^2"""
    band_values = {
        rng.randint(-max_offset, max_offset): algebra.random_element(rng, max_degree, 2)
        for _ in range(rng.randint(0, bands))
    }
    cell_values = {
        (rng.randint(1, max_cell), rng.randint(1, max_cell)): algebra.random_element(rng, max_degree, 2)
        for _ in range(rng.randint(0, cells))
    }
    return canonicalize(algebra, cell_values, band_values)


def _same_algebra(x: BandedElement, y: BandedElement) -> BaseAlgebra:
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise MixedAlgebraError(f"cannot combine matrices over {x.algebra} and {y.algebra}")
    return x.algebra


def add(x: BandedElement, y: BandedElement) -> BandedElement:
    algebra = _same_algebra(x, y)
    cells = dict(x._cells)
    for key, value in y._cells.items():
        _accumulate_signed(cells, key, value)
    bands = dict(x._bands)
    for k, value in y._bands.items():
        _accumulate_signed(bands, k, value)
    return BandedElement(algebra, cells, bands)


def _accumulate_signed(acc: Dict[Any, AlgebraElement], key: Any, value: AlgebraElement) -> None:
    current = acc.get(key)
    if current is None:
        acc[key] = value
        return
    total = current + value
    if total:
        acc[key] = total
    else:
        del acc[key]


def scale(c: Any, x: BandedElement) -> BandedElement:
    c = x.field.convert(c)
    if not c:
        return zero(x.algebra)
    return BandedElement(
        x.algebra,
        {k: v.scale(c) for k, v in x._cells.items()},
        {k: v.scale(c) for k, v in x._bands.items()},
    )


def _band_times_band(s: int, t: int, ab: AlgebraElement, cells, bands, corrections: bool = True) -> None:
    """
    E_s(a) E_t(b). With p, q >= 0:
      E_p E_q = E_(p+q), E_-p E_-q = E_(-p-q), E_p E_-q = E_(p-q),
      E_-q E_p = E_(p-q) - sum_(i=1..q) e_(i,i+p-q)   if p >= q
               = E_(p-q) - sum_(i=1..p) e_(i+q-p,i)   if p < q
    """
    _accumulate(bands, s + t, ab)
    if s >= 0 or t <= 0 or not corrections:
        return
    q, p = -s, t
    neg = -ab
    if p >= q:
        for i in range(1, q + 1):
            _accumulate(cells, CellKey(i, i + p - q), neg)
    else:
        for i in range(1, p + 1):
            _accumulate(cells, CellKey(i + q - p, i), neg)


def mul_banded(x: BandedElement, y: BandedElement, *, corrections: bool = True) -> BandedElement:
    """
    Exact product by the closed rules:
      band x band as in _band_times_band
      e_ij(a) E_k(b) = e_(i,j+k)(ab) if j+k >= 1, else 0
      E_k(a) e_ij(b) = e_(i-k,j)(ab) if i-k >= 1, else 0
      e_ij(a) e_kl(b) = [j == k] e_il(ab)

    corrections=False drops the finite correction cells of E_-q E_p; it
    exists only to exercise the verifiers' failure path.
    """
    algebra = _same_algebra(x, y)
    mul = algebra.multiply
    cells: Dict[CellKey, AlgebraElement] = {}
    bands: Dict[int, AlgebraElement] = {}

    for s, a in x._bands.items():
        for t, b in y._bands.items():
            ab = mul(a, b)
            if ab:
                _band_times_band(s, t, ab, cells, bands, corrections)

    for key, a in x._cells.items():
        for k, b in y._bands.items():
            col = key.col + k
            if col >= 1:
                _accumulate(cells, CellKey(key.row, col), mul(a, b))

    for k, a in x._bands.items():
        for key, b in y._cells.items():
            row = key.row - k
            if row >= 1:
                _accumulate(cells, CellKey(row, key.col), mul(a, b))

    y_by_row: Dict[int, list] = {}
    for key, b in y._cells.items():
        y_by_row.setdefault(key.row, []).append((key.col, b))
    for key, a in x._cells.items():
        for col, b in y_by_row.get(key.col, ()):
            _accumulate(cells, CellKey(key.row, col), mul(a, b))

    return BandedElement(
        algebra,
        {k: v for k, v in cells.items() if v},
        {k: v for k, v in bands.items() if v},
    )


def bracket(x: BandedElement, y: BandedElement) -> BandedElement:
    """[x, y] = xy - yx"""
    return mul_banded(x, y) - mul_banded(y, x)


def coordinates(x: BandedElement) -> Dict[CoordinateKey, Any]:
    """Cell(i,j,index) and Band(k,index) coordinates; linear and injective"""
    rank = x.algebra.sort_key
    coords: Dict[CoordinateKey, Any] = {}
    for key, a in x._cells.items():
        for index, c in a._terms.items():
            coords[CoordinateKey.cell(key.row, key.col, index, rank(index))] = c
    for k, a in x._bands.items():
        for index, c in a._terms.items():
            coords[CoordinateKey.band(k, index, rank(index))] = c
    return coords


# Truncated-matrix oracle


def truncate(x: BandedElement, m: int) -> np.ndarray:
    """m x m object array with entry (i,j) = cells[i,j] + bands[j-i]"""
    if m < 1:
        raise InvalidIndexError(f"truncation size must be >= 1, got {m}")
    zero_entry = x.algebra.zero()
    out = np.empty((m, m), dtype=object)
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            entry = x._bands.get(j - i, zero_entry)
            c = x._cells.get(CellKey(i, j))
            out[i - 1, j - 1] = entry if c is None else entry + c
    return out


def window(matrix: np.ndarray, m: int) -> np.ndarray:
    return matrix[:m, :m]


def oracle_size(x: BandedElement, y: BandedElement, m: int) -> int:
    """
    Input truncation that makes the windowed product of truncations exact:
    window + both max offsets + 1, widened to cover every stored cell.
    """
    return max(m + x.max_offset + y.max_offset + 1, x.max_cell_index, y.max_cell_index)


@dataclass
class OracleComparison:
    """Result of one truncated-matrix comparison"""
    agrees: bool
    window: int
    size: int
    expected: np.ndarray
    actual: np.ndarray
    first_mismatch: Optional[Tuple[int, int]] = None


def truncation_oracle(
    x: BandedElement,
    y: BandedElement,
    m: int,
    size: Optional[int] = None,
    product=mul_banded,
) -> OracleComparison:
    """
    Compare truncate(x*y, m) with window(truncate(x, N) . truncate(y, N), m),
    N = max(size, oracle_size(x, y, m)). Entries are base-algebra elements,
    multiplied through numpy's object-dtype dot.
    """
    n = max(size or 0, oracle_size(x, y, m))
    expected = window(np.dot(truncate(x, n), truncate(y, n)), m)
    actual = truncate(product(x, y), m)
    mismatches = np.argwhere(actual != expected)
    first = None
    if len(mismatches):
        i, j = mismatches[0]
        first = (int(i) + 1, int(j) + 1)
    return OracleComparison(first is None, m, n, expected, actual, first)


def format_matrix(matrix: np.ndarray) -> str:
    rows = [[str(entry) for entry in row] for row in matrix]
    width = max((len(s) for row in rows for s in row), default=1)
    return "\n".join("[ " + "  ".join(s.rjust(width) for s in row) + " ]" for row in rows)

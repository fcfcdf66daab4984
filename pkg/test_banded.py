#!/usr/bin/env python3
"""
Tests for the banded matrix calculus and its truncated-matrix oracle
"""

import random
from functools import partial

import numpy as np
import pytest

from algebra_errors import InvalidIndexError, MixedAlgebraError
from banded import (
    CellKey,
    band,
    bracket,
    canonicalize,
    cell,
    coordinates,
    identity,
    mul_banded,
    random_banded,
    truncate,
    truncation_oracle,
    zero,
)
from span_growth import CoordinateKey


@pytest.fixture
def x(poly1):
    return poly1.generators()[0]


@pytest.fixture
def one(poly1):
    return poly1.one()


def test_negative_band_times_longer_positive_band(one):
    # E_-1 E_2 = E_1 - e_12
    assert band(-1, one) * band(2, one) == band(1, one) + cell(1, 2, -one)


def test_negative_band_times_positive_band_leaves_corner(poly1, x, one):
    a, b = x, x + one
    assert band(-1, a) * band(1, b) == band(0, a * b) - cell(1, 1, a * b)


def test_longer_negative_band_times_positive_band(one):
    # E_-2 E_1 = E_-1 - e_21
    assert band(-2, one) * band(1, one) == band(-1, one) - cell(2, 1, one)


@pytest.mark.parametrize("s,t", [(2, 3), (-2, -1), (3, -1), (1, -3), (0, -2)])
def test_bands_without_corrections(one, s, t):
    assert band(s, one) * band(t, one) == band(s + t, one)


def test_cell_rules(x, one):
    assert cell(1, 2, x) * cell(2, 3, x) == cell(1, 3, x * x)
    assert cell(1, 2, x) * cell(3, 4, x) == 0
    assert cell(1, 1, x) * band(2, one) == cell(1, 3, x)
    assert cell(1, 1, x) * band(-1, one) == 0
    assert cell(1, 3, x) * band(-1, one) == cell(1, 2, x)
    assert band(1, one) * cell(3, 1, x) == cell(2, 1, x)
    assert band(1, one) * cell(1, 1, x) == 0
    assert band(-2, one) * cell(1, 1, x) == cell(3, 1, x)


def test_commutator_lands_in_corner(x, one):
    assert bracket(band(1, x), band(-1, one)) == cell(1, 1, x)
    assert bracket(band(1, one), band(-1, one)) == cell(1, 1, one)


def test_identity_is_neutral(poly1, x, one):
    y = band(2, x) + cell(3, 1, one) + band(-1, x * x)
    assert identity(poly1) * y == y == y * identity(poly1)


def test_canonical_form_drops_zeros(poly1, x):
    assert band(0, poly1.zero()) == zero(poly1)
    assert not (band(1, x) - band(1, x))
    assert canonicalize(poly1, {(1, 1): x, CellKey(1, 1): -x}, {2: x}) == band(2, x)
    assert hash(band(1, x) + cell(1, 1, x)) == hash(cell(1, 1, x) + band(1, x))


def test_cells_are_one_indexed(x):
    with pytest.raises(InvalidIndexError):
        cell(0, 1, x)
    with pytest.raises(InvalidIndexError):
        CellKey(2, -1)


def test_mixed_base_algebras_are_rejected(poly1, poly2):
    with pytest.raises(MixedAlgebraError):
        band(1, poly1.one()) * band(1, poly2.one())
    with pytest.raises(MixedAlgebraError):
        canonicalize(poly1, {}, {0: poly2.one()})


def test_coordinates_are_injective(poly1, x, one):
    rank = poly1.sort_key
    assert coordinates(cell(1, 1, x)) == {CoordinateKey.cell(1, 1, (1,), rank((1,))): 1}
    samples = [band(1, x), band(-1, x), cell(1, 2, x), cell(2, 1, x), band(1, one)]
    keys = [frozenset(coordinates(s)) for s in samples]
    assert len(set(keys)) == len(samples)


def test_scaling(x, one):
    y = band(1, x) + cell(1, 1, one)
    assert y * 2 == y + y
    assert 0 * y == 0


def test_truncate_identity(poly1, one):
    matrix = truncate(identity(poly1), 3)
    assert matrix.shape == (3, 3)
    assert all(matrix[i, i] == one for i in range(3))
    assert matrix[0, 1] == 0


def test_oracle_agrees_on_zero(poly1):
    assert truncation_oracle(zero(poly1), zero(poly1), 4).agrees


def test_oracle_catches_dropped_corrections(one):
    corrupted = partial(mul_banded, corrections=False)
    result = truncation_oracle(band(-1, one), band(1, one), 4, product=corrupted)
    assert not result.agrees
    assert result.first_mismatch == (1, 1)


@pytest.mark.slow
def test_oracle_random_pairs_polynomial(poly1):
    rng = random.Random(42)
    for _ in range(500):
        x = random_banded(poly1, rng, max_offset=3)
        y = random_banded(poly1, rng, max_offset=3)
        assert truncation_oracle(x, y, 8, 16).agrees


def test_oracle_random_pairs_noncommutative(u_sl2):
    # coefficient order matters over U(sl2)
    rng = random.Random(3)
    for _ in range(40):
        x = random_banded(u_sl2, rng, max_offset=2, max_degree=1)
        y = random_banded(u_sl2, rng, max_offset=2, max_degree=1)
        comparison = truncation_oracle(x, y, 5)
        assert comparison.agrees, (str(x), str(y), comparison.first_mismatch)


@pytest.mark.slow
def test_banded_product_is_associative(poly1):
    rng = random.Random(5)
    for _ in range(300):
        a, b, c = (random_banded(poly1, rng, max_offset=2) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_truncation_matches_numpy_product(poly1, one):
    x = band(1, one) + cell(2, 2, one)
    product = np.dot(truncate(x, 6), truncate(x, 6))[:3, :3]
    assert (product == truncate(x * x, 3)).all()


# Closed-form band rules against truncated matrices


def _band_product_expected(s, t, one):
    expected = band(s + t, one)
    if s < 0 < t:
        q, p = -s, t
        if p >= q:
            corrections = [cell(i, i + p - q, one) for i in range(1, q + 1)]
        else:
            corrections = [cell(i + q - p, i, one) for i in range(1, p + 1)]
        for c in corrections:
            expected = expected - c
    return expected


@pytest.mark.slow
@pytest.mark.parametrize("p", range(6))
def test_band_rules_match_truncation(poly1, one, p):
    (x,) = poly1.generators()
    for q in range(6):
        for s, t in ((p, -q), (-q, p), (p, q), (-p, -q)):
            assert band(s, one) * band(t, one) == _band_product_expected(s, t, one)
            comparison = truncation_oracle(band(s, x), band(t, x + one), 2 * (p + q) + 4)
            assert comparison.agrees, (s, t, comparison.first_mismatch)


# Linear structure on random elements


def test_banded_product_is_bilinear(poly1):
    rng = random.Random(17)
    field = poly1.field
    for _ in range(300):
        a, b, c = (random_banded(poly1, rng, max_offset=2) for _ in range(3))
        lam = field.random(rng)
        assert (a + b) * c == a * c + b * c
        assert a * (b + c) == a * b + a * c
        assert (a * lam) * b == (a * b) * lam == a * (b * lam)


def test_bracket_satisfies_jacobi(poly1):
    rng = random.Random(19)
    for _ in range(200):
        a, b, c = (random_banded(poly1, rng, max_offset=2, max_degree=1) for _ in range(3))
        total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        assert total == 0, (str(a), str(b), str(c))


def test_canonicalize_is_idempotent(poly1):
    rng = random.Random(23)
    for _ in range(200):
        y = random_banded(poly1, rng)
        assert canonicalize(poly1, dict(y.cells), dict(y.bands)) == y
        pairs = {(key.row, key.col): value for key, value in y.cells.items()}
        assert canonicalize(poly1, pairs, dict(y.bands)) == y


def test_coordinates_are_linear(poly1):
    rng = random.Random(29)
    field = poly1.field
    for _ in range(200):
        y, z = random_banded(poly1, rng), random_banded(poly1, rng)
        merged = dict(coordinates(y))
        for key, value in coordinates(z).items():
            merged[key] = merged.get(key, field.zero) + value
        assert coordinates(y + z) == {k: v for k, v in merged.items() if v}

        lam = field.random(rng)
        scaled = {k: v * lam for k, v in coordinates(y).items()} if lam else {}
        assert coordinates(y * lam) == scaled

import random

import pytest

from bkptau.pfaffian import (
    RectMatrix,
    UpperTriMatrix,
    assemble_block,
    caianiello_expand,
    determinant,
    pfaffian,
    random_rect,
    random_upper_tri,
    skew_extension,
    submatrix,
)
from bkptau.ring import GaussRat, Poly, t, y


def test_pfaffian_two_by_two():
    assert pfaffian(UpperTriMatrix.from_rows([[t(1)]])) == t(1)


def test_pfaffian_four_by_four():
    names = {}
    for i in range(4):
        for j in range(i + 1, 4):
            names[(i, j)] = t(1 + i) * y(1 + j)
    a = UpperTriMatrix(4, names)
    expected = (
        names[(0, 1)] * names[(2, 3)]
        - names[(0, 2)] * names[(1, 3)]
        + names[(0, 3)] * names[(1, 2)]
    )
    assert pfaffian(a) == expected


def test_pfaffian_empty_and_odd():
    assert pfaffian(UpperTriMatrix(0, {})) == Poly.one()
    with pytest.raises(ValueError):
        pfaffian(UpperTriMatrix(3, {}))


def test_pfaffian_squared_is_determinant():
    rng = random.Random(11)
    for size in (2, 4, 6, 8):
        a = random_upper_tri(rng, size)
        assert pfaffian(a) ** 2 == determinant(skew_extension(a))


def test_pfaffian_row_multilinearity():
    rng = random.Random(5)
    a = random_upper_tri(rng, 4)
    b = random_upper_tri(rng, 4)
    c_entries = dict(a.entries)
    # replace row 0 of the triangle by the sum of a's and b's rows
    for j in range(1, 4):
        c_entries[(0, j)] = a.entry(0, j) + b.entry(0, j)
    c = UpperTriMatrix(4, c_entries)
    b_in_a = dict(a.entries)
    for j in range(1, 4):
        b_in_a[(0, j)] = b.entry(0, j)
    assert pfaffian(c) == pfaffian(a) + pfaffian(UpperTriMatrix(4, b_in_a))


def test_determinant_small():
    assert determinant(RectMatrix([[t(1)]])) == t(1)
    eye = RectMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert determinant(eye) == Poly.one()
    two = RectMatrix([[t(1), t(2)], [t(3), t(4)]])
    assert determinant(two) == t(1) * t(4) - t(2) * t(3)
    assert determinant(RectMatrix([])) == Poly.one()
    with pytest.raises(ValueError):
        determinant(RectMatrix([[t(1), t(2)]]))


def test_submatrix():
    w = RectMatrix([[t(1), t(2)], [t(3), t(4)]])
    assert submatrix(w, [0, 1], [0, 1]).rows == w.rows
    assert submatrix(w, [], []).rows == ()
    assert submatrix(w, [0], [1]).rows == ((t(2),),)
    with pytest.raises(ValueError):
        submatrix(w, [2], [0])


def test_caianiello_two_by_two_hand_case():
    x = UpperTriMatrix.from_rows([[t(1)]])
    yy = UpperTriMatrix.from_rows([[t(2)]])
    w = RectMatrix([[t(3), t(4)], [y(1), y(2)]])
    got = caianiello_expand(x, yy, w)
    assert got == t(1) * t(2) - determinant(w)
    assert got == pfaffian(assemble_block(x, yy, w))


def test_caianiello_block_diagonal():
    rng = random.Random(3)
    x = random_upper_tri(rng, 4)
    yy = random_upper_tri(rng, 2)
    w = RectMatrix([[Poly.zero()] * 2 for _ in range(4)])
    assert caianiello_expand(x, yy, w) == pfaffian(x) * pfaffian(yy)


def test_caianiello_degenerate_shapes():
    rng = random.Random(4)
    yy = random_upper_tri(rng, 4)
    empty_x = UpperTriMatrix(0, {})
    empty_w = RectMatrix([], ncols=4)
    assert caianiello_expand(empty_x, yy, empty_w) == pfaffian(yy)
    with pytest.raises(ValueError):
        caianiello_expand(UpperTriMatrix(2, {}), random_upper_tri(rng, 3),
                          random_rect(rng, 2, 3))


def test_caianiello_matches_block_pfaffian_fuzz():
    rng = random.Random(2024)
    for m, k in [(2, 2), (2, 4), (4, 2), (4, 4)]:
        for _ in range(10):
            x = random_upper_tri(rng, m)
            yy = random_upper_tri(rng, k)
            w = random_rect(rng, m, k)
            assert caianiello_expand(x, yy, w) == pfaffian(assemble_block(x, yy, w))


def test_upper_triangle_only_is_consulted():
    # same upper triangle, garbage below the diagonal cannot exist by type:
    # entries outside i<j are rejected outright
    with pytest.raises(ValueError):
        UpperTriMatrix(2, {(1, 0): t(1)})
    with pytest.raises(ValueError):
        UpperTriMatrix(2, {(0, 0): t(1)})


def test_minor_preserves_order():
    a = UpperTriMatrix.from_rows([[t(1), t(2), t(3)], [t(4), t(5)], [t(6)]])
    m = a.minor([0, 2, 3])
    assert m.entry(0, 1) == t(2)
    assert m.entry(0, 2) == t(3)
    assert m.entry(1, 2) == t(6)

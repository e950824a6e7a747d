"""Matrix representation, builders, transforms, and text round-trips."""

import random

import pytest

from permax import (
    ShapeError,
    SignMatrix,
    apply,
    apply_step,
    d_matrix,
    format_matrix_text,
    format_transforms,
    invert_transforms,
    make_matrix,
    neg_count,
    p_matrix,
    parse_matrix_text,
    parse_transforms,
    q_matrix,
    submatrix_delete,
    submatrix_select,
)

J2 = make_matrix([1, 1, 1, 1], 2, 2)


def test_entry_and_row_signs_are_one_based():
    a = make_matrix([1, -1, 1, 1, 1, -1], 2, 3)
    assert a.entry(1, 2) == -1
    assert a.entry(2, 3) == -1
    assert a.row_signs(1) == (1, -1, 1)
    assert a.row_signs(2) == (1, 1, -1)
    with pytest.raises(IndexError):
        a.entry(0, 1)
    with pytest.raises(IndexError):
        a.row_signs(3)


def test_make_matrix_round_trip():
    rng = random.Random(7)
    for _ in range(50):
        rows = rng.randint(1, 5)
        cols = rng.randint(rows, 8)
        entries = [rng.choice((1, -1)) for _ in range(rows * cols)]
        a = make_matrix(entries, rows, cols)
        assert a.to_entries() == entries


def test_make_matrix_rejects_bad_input():
    with pytest.raises(ShapeError):
        make_matrix([1, 1], 1, 3)
    with pytest.raises(ValueError):
        make_matrix([1, 0, 1, 1], 2, 2)
    with pytest.raises(ShapeError):
        make_matrix([1] * 6, 3, 2)  # wide-or-square only
    with pytest.raises(ShapeError):
        SignMatrix(13, 13, tuple([0] * 13))


def test_d_matrix_shape_and_negatives():
    a = d_matrix(5, 4, 3)
    assert (a.rows, a.cols) == (4, 5)
    for i in range(1, 4):
        assert a.entry(i, i) == -1
    assert neg_count(a) == 3
    assert d_matrix(4, 4, 0) == make_matrix([1] * 16, 4, 4)
    with pytest.raises(ShapeError):
        d_matrix(3, 4, 1)
    with pytest.raises(ShapeError):
        d_matrix(4, 3, 4)


def test_q_matrix_line_counts():
    # two -1 per row and per column, for every order
    for m in range(2, 8):
        a = q_matrix(m)
        for i in range(1, m + 1):
            assert a.row_signs(i).count(-1) == 2
        for j in range(1, m + 1):
            assert sum(1 for i in range(1, m + 1) if a.entry(i, j) == -1) == 2
        assert neg_count(a) == 2 * m
    assert q_matrix(2) == make_matrix([-1, -1, -1, -1], 2, 2)
    with pytest.raises(ShapeError):
        q_matrix(1)


def test_p_matrix_negative_counts():
    assert neg_count(p_matrix(1)) == 10
    assert (p_matrix(2).rows, p_matrix(2).cols) == (6, 6)
    assert p_matrix(1).row_signs(1) == (1,) * 6
    with pytest.raises(ValueError):
        p_matrix(3)


def test_apply_step_kinds():
    a = make_matrix([1, 1, 1, -1], 2, 2)
    assert apply_step(a, ("negR", 1)).row_signs(1) == (-1, -1)
    assert apply_step(a, ("negC", 2)).entry(2, 2) == 1
    assert apply_step(a, ("swapR", 1, 2)).row_signs(1) == (1, -1)
    assert apply_step(a, ("swapC", 1, 2)).row_signs(2) == (-1, 1)
    t = apply_step(make_matrix([1, -1, 1, 1, 1, 1, 1, 1, 1], 3, 3), ("T",))
    assert t.entry(2, 1) == -1 and t.entry(1, 2) == 1
    with pytest.raises(IndexError):
        apply_step(a, ("negR", 3))
    with pytest.raises(ShapeError):
        apply_step(make_matrix([1] * 6, 2, 3), ("T",))  # 3x2 breaks rows <= cols
    with pytest.raises(ValueError):
        apply_step(a, ("rot", 1))


def test_apply_fixed_points():
    assert apply(J2, [("negR", 1)]).row_signs(1) == (-1, -1)
    d = d_matrix(3, 3, 2)
    assert apply(d, [("swapC", 1, 2), ("swapR", 1, 2)]) == d


def test_transform_inversion_round_trip():
    rng = random.Random(11)
    a = p_matrix(1)
    for _ in range(100):
        steps = []
        for _ in range(rng.randint(0, 8)):
            kind = rng.choice(("negR", "negC", "swapR", "swapC", "T"))
            if kind == "T":
                steps.append(("T",))
            elif kind in ("negR", "negC"):
                steps.append((kind, rng.randint(1, 6)))
            else:
                steps.append((kind, rng.randint(1, 6), rng.randint(1, 6)))
        b = apply(a, steps)
        assert apply(b, invert_transforms(steps)) == a


def test_submatrix_delete():
    assert submatrix_delete(d_matrix(4, 4, 3), [4], [4]) == d_matrix(3, 3, 3)
    a = p_matrix(2)
    assert submatrix_delete(a, [], []) == a
    j4 = make_matrix([1] * 16, 4, 4)
    assert submatrix_delete(j4, [1], [2]) == make_matrix([1] * 9, 3, 3)
    with pytest.raises(IndexError):
        submatrix_delete(j4, [5], [])


def test_submatrix_select():
    assert submatrix_select(d_matrix(4, 4, 3), [1, 2], [1, 2]) == d_matrix(2, 2, 2)
    assert submatrix_select(p_matrix(1), [1], range(1, 7)) == make_matrix([1] * 6, 1, 6)
    corner = submatrix_select(q_matrix(3), [1, 2], [1, 2])
    assert neg_count(corner) == 3
    with pytest.raises(IndexError):
        submatrix_select(q_matrix(3), [2, 1], [1, 2])  # not increasing


def test_matrix_text_round_trip():
    for a in (J2, q_matrix(4), d_matrix(6, 4, 2), p_matrix(2)):
        assert parse_matrix_text(format_matrix_text(a)) == a
    parsed = parse_matrix_text("2 2\n# comment\n 1 +1\n-1 1\n")
    assert parsed == make_matrix([1, 1, -1, 1], 2, 2)
    with pytest.raises(ValueError):
        parse_matrix_text("2 2\n1 1\n1 2\n")
    with pytest.raises(ValueError):
        parse_matrix_text("2 2\n1 1\n")


def test_transform_text_round_trip():
    seq = (("negR", 3), ("swapC", 1, 4), ("T",))
    text = format_transforms(seq)
    assert text == "negR 3; swapC 1 4; T"
    assert parse_transforms(text) == seq
    assert parse_transforms("") == ()
    with pytest.raises(ValueError):
        parse_transforms("spin 2")
    with pytest.raises(ValueError):
        format_transforms([("swapR", 1)])

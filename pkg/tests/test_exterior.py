from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nilcoh.catalog import make_heisenberg_x_line, make_iwasawa
from nilcoh.errors import BasisModeMismatch
from nilcoh.exterior import (HODGE, REAL, ExtForm, apply_I, basis, bidegree_basis, bidegree_split,
                             conjugate, evaluate, format_form, parse_form, to_hodge, to_real, wedge)
from nilcoh.lck import fundamental_form
from nilcoh.lie import hodge_split
from nilcoh.scalars import I_UNIT

from conftest import small_gaussians, small_rationals

i = I_UNIT
NAMES = ["X", "Y", "Z", "T"]


def forms(dim, degree, coeffs=small_gaussians, mode=REAL):
    idx = basis(dim, degree)
    return st.lists(coeffs, min_size=len(idx), max_size=len(idx)).map(
        lambda cs: ExtForm(dim, degree, zip(idx, cs), mode))


def cov(*c):
    return ExtForm.covector(list(c))


def P(text, degree=None):
    return parse_form(text, NAMES, degree)


def test_basis_sizes_and_order():
    assert basis(4, 2) == ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3))
    for k in range(7):
        assert len(basis(6, k)) == comb(6, k)
    assert len(bidegree_basis(3, 1, 2)) == 3 * 3


def test_wedge_evaluation_convention():
    xy = P("1 X^Y")
    assert evaluate(xy, [[1, 0, 0, 0], [0, 1, 0, 0]]) == 1
    assert evaluate(xy, [[0, 1, 0, 0], [1, 0, 0, 0]]) == -1


def test_square_of_symplectic_form():
    w = P("1 X^Y -1 Z^T")
    assert wedge(w, w) == P("-2 X^Y^Z^T")


@given(forms(5, 1))
def test_odd_square_vanishes(a):
    assert wedge(a, a).is_zero()


@given(forms(5, 1), forms(5, 2), forms(5, 1))
def test_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_graded_commutative(p, q, data):
    a = data.draw(forms(5, p))
    b = data.draw(forms(5, q))
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (p * q))


@given(forms(4, 2, small_rationals), st.lists(st.lists(small_rationals, min_size=4, max_size=4),
                                              min_size=2, max_size=2))
def test_evaluate_alternating(f, vs):
    assert evaluate(f, vs) == -evaluate(f, vs[::-1])


@pytest.fixture(scope="module")
def hsplit():
    e = make_heisenberg_x_line(1)
    return e, hodge_split(e.algebra, e.complex_structure)


@given(st.integers(0, 4), st.data())
def test_hodge_round_trip(hsplit, k, data):
    _, split = hsplit
    f = data.draw(forms(4, k))
    assert to_real(to_hodge(f, split), split) == f


@given(st.integers(0, 4), st.data())
def test_conjugation_commutes_with_frames(hsplit, k, data):
    _, split = hsplit
    f = data.draw(forms(4, k))
    assert to_hodge(conjugate(f), split) == conjugate(to_hodge(f, split))


def test_real_covector_splits_into_conjugates(hsplit):
    _, split = hsplit
    theta = cov(1, 2, 3, 4)
    parts = bidegree_split(theta, split)
    assert set(parts) == {(1, 0), (0, 1)}
    assert conjugate(parts[1, 0]) == parts[0, 1]
    assert parts[1, 0] + parts[0, 1] == theta


def test_fundamental_form_is_11(hsplit):
    e, split = hsplit
    omega = fundamental_form(e.algebra, e.complex_structure, e.metric)
    assert set(bidegree_split(omega, split)) == {(1, 1)}


def test_holo_covector_is_10(hsplit):
    _, split = hsplit
    phi = ExtForm(4, 1, {(0,): 1}, HODGE)
    assert set(bidegree_split(phi, split)) == {(1, 0)}
    assert set(bidegree_split(to_real(phi, split), split)) == {(1, 0)}


def test_apply_I_on_lee_form(hsplit):
    e, split = hsplit
    assert apply_I(cov(0, 0, 0, 1), e.complex_structure) == cov(0, 0, 1, 0)


def test_apply_I_on_holo_and_11(hsplit):
    _, split = hsplit
    phi = ExtForm(4, 1, {(0,): 1}, HODGE)
    assert apply_I(phi, split) == phi.scale(-i)
    mixed = ExtForm(4, 2, {(0, 2): 3}, HODGE)
    assert apply_I(mixed, split) == mixed


@given(st.integers(0, 4), st.data())
def test_apply_I_squared(hsplit, k, data):
    e, split = hsplit
    f = data.draw(forms(4, k))
    twice = apply_I(apply_I(f, e.complex_structure), e.complex_structure)
    assert twice == f.scale((-1) ** k)
    h = to_hodge(f, split)
    assert apply_I(h, split) == to_hodge(apply_I(f, e.complex_structure), split)


def test_mode_mismatch():
    with pytest.raises(BasisModeMismatch):
        ExtForm.covector([1, 0], REAL) + ExtForm.covector([1, 0], HODGE)


@given(st.integers(0, 4), st.data())
def test_format_parse_round_trip(k, data):
    f = data.draw(forms(4, k))
    assert parse_form(format_form(f, NAMES), NAMES, degree=k) == f
    assert parse_form(format_form(f), ["e1", "e2", "e3", "e4"], degree=k) == f


def test_format_examples():
    assert format_form(ExtForm.zero(4, 2), NAMES) == "0"
    assert format_form(ExtForm.constant(4, 2), NAMES) == "2 1"
    assert format_form(P("1 Y^X"), NAMES) == "-1 X^Y"


def test_iwasawa_hodge_mode_names():
    e = make_iwasawa()
    split = hodge_split(e.algebra, e.complex_structure)
    text = format_form(to_hodge(cov(1, 0, 0, 0, 0, 0), split))
    assert "phi1" in text and "phibar1" in text

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcoh.catalog import (make_abelian, make_heisenberg_x_line, make_iwasawa,
                            random_closed_theta, random_nilpotent_complex)
from nilcoh.differentials import (apply_d, chevalley_d, dc_operator, hodge_components,
                                  potential_form, theta_c, twisted_d)
from nilcoh.errors import ThetaNotClosed
from nilcoh.exterior import ExtForm, basis, bidegree_split, parse_form, to_hodge, wedge
from nilcoh.lck import fundamental_form
from nilcoh.lie import hodge_split

from conftest import small_gaussians
from oracles import ce_formula

NAMES = ["X", "Y", "Z", "T"]


def P(text, degree=None):
    return parse_form(text, NAMES, degree)


def forms(dim, degree):
    idx = basis(dim, degree)
    return st.lists(small_gaussians, min_size=len(idx), max_size=len(idx)).map(
        lambda cs: ExtForm(dim, degree, zip(idx, cs)))


ALGEBRAS = [make_heisenberg_x_line(1).algebra, make_heisenberg_x_line(2).algebra,
            make_iwasawa().algebra, random_nilpotent_complex(6, 1).algebra]


@pytest.mark.parametrize("g", ALGEBRAS, ids=["h3xR", "h5xR", "iwasawa", "random6"])
@pytest.mark.parametrize("k", [0, 1, 2])
@settings(max_examples=15)
@given(data=st.data())
def test_blocks_match_general_formula(g, k, data):
    alpha = data.draw(forms(g.dim, k))
    op = chevalley_d(g)
    assert op.apply(alpha) == ce_formula(g, alpha)
    assert apply_d(g, alpha) == ce_formula(g, alpha)
    theta = ExtForm.covector([1] + [0] * (g.dim - 1))
    assert twisted_d(g, theta).apply(alpha) == ce_formula(g, alpha, theta)


def test_dZ_heisenberg(heis):
    assert apply_d(heis.algebra, P("1 Z")) == P("-1 X^Y")


def test_abelian_d_is_zero():
    op = chevalley_d(make_abelian(4).algebra)
    assert all(b.is_zero() for b in op.blocks.values())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_d_omega_heisenberg(n):
    e = make_heisenberg_x_line(n)
    omega = fundamental_form(e.algebra, e.complex_structure, e.metric)
    assert apply_d(e.algebra, omega) == wedge(e.theta, omega)


def test_twisted_zero_equals_untwisted(heis):
    g = heis.algebra
    zero = ExtForm.zero(4, 1)
    assert twisted_d(g, zero).blocks == chevalley_d(g).blocks


def test_twisted_examples(heis):
    g, theta = heis.algebra, heis.theta
    assert apply_d(g, ExtForm.constant(4), theta) == P("-1 T")
    assert apply_d(g, P("-1 Z"), theta) == P("1 X^Y -1 Z^T")


def test_theta_must_be_closed(heis):
    with pytest.raises(ThetaNotClosed):
        twisted_d(heis.algebra, P("1 Z"))


@pytest.mark.parametrize("dim,seed", [(4, 0), (6, 2), (6, 5), (8, 3)])
def test_square_zero_on_random(dim, seed):
    import random
    e = random_nilpotent_complex(dim, seed)
    g = e.algebra
    assert chevalley_d(g).is_square_zero()
    theta = random_closed_theta(g, random.Random(seed))
    op = twisted_d(g, theta)
    assert op.is_square_zero()
    split = hodge_split(g, e.complex_structure)
    dl, dbl = hodge_components(twisted_d(g, theta, split))
    assert dl.is_square_zero() and dbl.is_square_zero()


@settings(max_examples=20)
@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_leibniz(p, q, data):
    g = make_iwasawa().algebra
    a, b = data.draw(forms(6, p)), data.draw(forms(6, q))
    lhs = apply_d(g, wedge(a, b))
    rhs = wedge(apply_d(g, a), b) + wedge(a, apply_d(g, b)).scale((-1) ** p)
    assert lhs == rhs


@settings(max_examples=20)
@given(st.integers(0, 3), st.data())
def test_hodge_components(k, data):
    e = make_iwasawa()
    g = e.algebra
    split = hodge_split(g, e.complex_structure)
    theta = ExtForm.covector([1, 2, 0, 0, 0, 0])
    f = to_hodge(data.draw(forms(6, k)), split)
    dl, dbl = hodge_components(chevalley_d(g, split))
    assert dl.apply(f) + dbl.apply(f) == apply_d(g, f, split=split)
    dlt, dblt = hodge_components(twisted_d(g, theta, split))
    parts = bidegree_split(to_hodge(theta, split))
    assert dlt.apply(f) == dl.apply(f) - wedge(parts[1, 0], f)
    assert dblt.apply(f) == dbl.apply(f) - wedge(parts[0, 1], f)


def test_abelian_hodge_components_vanish(abelian4):
    split = hodge_split(abelian4.algebra, abelian4.complex_structure)
    dl, dbl = hodge_components(chevalley_d(abelian4.algebra, split))
    assert all(b.is_zero() for b in dl.blocks.values())
    assert all(b.is_zero() for b in dbl.blocks.values())


def test_iwasawa_delbar_nonzero_on_01(iwasawa):
    split = hodge_split(iwasawa.algebra, iwasawa.complex_structure)
    _, dbl = hodge_components(chevalley_d(iwasawa.algebra, split))
    assert not dbl.blocks[0, 1].is_zero()


def test_dc_identities(heis):
    g, theta = heis.algebra, heis.theta
    split = hodge_split(g, heis.complex_structure)
    omega = fundamental_form(g, heis.complex_structure, heis.metric)
    tc = theta_c(theta, split)
    assert dc_operator(g, split).apply(ExtForm.constant(4)).is_zero()
    assert apply_d(g, tc) == wedge(theta, tc) - omega
    assert potential_form(g, split, theta) == omega
    dct = dc_operator(g, split, theta)
    assert dct.is_square_zero()
    assert apply_d(g, dct.apply(ExtForm.constant(4)), theta) == omega


@settings(max_examples=15)
@given(st.integers(0, 3), st.data())
def test_dc_is_conjugated_d(k, data):
    # d^c = I d I^{-1} on forms of every degree
    from nilcoh.exterior import apply_I, to_real
    e = make_iwasawa()
    g, cs = e.algebra, e.complex_structure
    split = hodge_split(g, cs)
    f = data.draw(forms(6, k))
    dc = to_real(dc_operator(g, split).apply(to_hodge(f, split)), split)
    i_inv = apply_I(apply_I(apply_I(f, cs), cs), cs)
    assert dc == apply_I(apply_d(g, i_inv), cs)

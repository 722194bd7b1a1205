import random
from math import comb

import pytest

from nilcoh.catalog import (CATALOG_NAMES, closed_one_forms, get_entry, make_abelian,
                            make_heisenberg_x_line, make_iwasawa, random_closed_theta,
                            random_nilpotent_complex)
from nilcoh.cohomology import betti
from nilcoh.differentials import apply_d
from nilcoh.errors import DimensionTooLarge
from nilcoh.exterior import parse_form
from nilcoh.lie import antiholo_central_series, hodge_split, is_integrable, is_nilpotent


def test_heisenberg_dims():
    assert make_heisenberg_x_line(1).algebra.dim == 4
    g = make_heisenberg_x_line(2).algebra
    assert g.dim == 6
    assert g.names == ("X1", "Y1", "X2", "Y2", "Z", "T")
    assert list(g.bracket_terms()) == [(0, 1, 4, 1), (2, 3, 4, 1)]


def test_heisenberg_bound():
    assert make_heisenberg_x_line(7).algebra.dim == 16
    with pytest.raises(DimensionTooLarge):
        make_heisenberg_x_line(8)


def test_kodaira_thurston_alias():
    assert get_entry("kodaira-thurston").algebra == make_heisenberg_x_line(1).algebra


def test_abelian():
    e = make_abelian(4)
    omega = parse_form("1 e1^e2 1 e3^e4", e.algebra.names)
    assert apply_d(e.algebra, omega).is_zero()
    assert betti(e.algebra) == [comb(4, k) for k in range(5)]
    assert make_abelian(2).algebra.dim == 2


def test_iwasawa():
    e = make_iwasawa()
    assert is_integrable(e.algebra, e.complex_structure)
    assert is_nilpotent(e.algebra)
    split = hodge_split(e.algebra, e.complex_structure)
    assert antiholo_central_series(split, e.algebra).length == 3


@pytest.mark.parametrize("dim", [4, 6, 8])
@pytest.mark.parametrize("seed", range(3))
def test_random_algebras(dim, seed):
    e = random_nilpotent_complex(dim, seed)
    g = e.algebra
    assert not g.is_abelian()
    assert is_nilpotent(g) and is_integrable(g, e.complex_structure)
    assert random_nilpotent_complex(dim, seed).algebra == g


def test_random_algebras_vary():
    rows = {tuple(betti(random_nilpotent_complex(6, s).algebra)) for s in range(6)}
    assert len(rows) > 1


def test_random_theta_closed_nonzero():
    g = make_iwasawa().algebra
    assert len(closed_one_forms(g)) == 4
    rng = random.Random(1)
    for _ in range(10):
        theta = random_closed_theta(g, rng)
        assert not theta.is_zero()
        assert apply_d(g, theta).is_zero()


def test_get_entry_names():
    for name in CATALOG_NAMES:
        assert get_entry(name).algebra.dim >= 4
    with pytest.raises(KeyError):
        get_entry("nope")

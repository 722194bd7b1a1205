import random
from fractions import Fraction
from itertools import combinations

import pytest

from nilcoh.catalog import make_heisenberg_x_line, make_iwasawa, random_nilpotent_complex
from nilcoh.errors import AntisymmetryViolation, InvalidComplexStructure, JacobiViolation, NotNilpotent
from nilcoh.lie import (ComplexStructure, LieAlgebra, antiholo_central_series, center,
                        hodge_split, is_integrable, is_nilpotent, lower_central_series,
                        validate_lie)
from nilcoh.linalg import Matrix, SubspaceBasis, inverse, rank
from nilcoh.scalars import I_UNIT

i = I_UNIT


def unit(n, k):
    return [1 if t == k else 0 for t in range(n)]


def test_heisenberg_constants_valid(heis):
    g = heis.algebra
    assert g.bracket(unit(4, 0), unit(4, 1)) == (0, 0, 1, 0)
    assert g.bracket(unit(4, 1), unit(4, 0)) == (0, 0, -1, 0)


def test_abelian_valid():
    assert LieAlgebra.abelian(4).is_abelian()


def test_jacobi_violation_reports_triple():
    c = [[[Fraction(0)] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2], c[1][0][2] = 1, -1
    c[0][2][0], c[2][0][0] = 1, -1
    with pytest.raises(JacobiViolation) as exc:
        validate_lie(["e1", "e2", "e3"], c)
    assert exc.value.triple == (0, 1, 2)
    assert exc.value.names == ("e1", "e2", "e3")


def test_antisymmetry_violation():
    c = [[[Fraction(0)] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][1] = 1
    with pytest.raises(AntisymmetryViolation):
        validate_lie(["a", "b"], c)


def test_lower_central_series():
    assert [s.dim for s in lower_central_series(LieAlgebra.abelian(3))] == [3, 0]
    g = make_heisenberg_x_line(1).algebra
    series = lower_central_series(g)
    assert [s.dim for s in series] == [4, 1, 0]
    assert series[1] == SubspaceBasis.span(4, [unit(4, 2)])
    iw = lower_central_series(make_iwasawa().algebra)
    assert [s.dim for s in iw] == [6, 2, 0]
    assert iw[1] == SubspaceBasis.span(6, [unit(6, 4), unit(6, 5)])


def test_is_nilpotent():
    assert is_nilpotent(make_heisenberg_x_line(1).algebra)
    assert is_nilpotent(LieAlgebra.abelian(2))
    assert not is_nilpotent(LieAlgebra.from_brackets(["e1", "e2"], {("e1", "e2"): {"e2": 1}}))


def test_center(heis):
    assert center(heis.algebra) == SubspaceBasis.span(4, [unit(4, 2), unit(4, 3)])


def test_hodge_split_plane():
    j = ComplexStructure.from_images([[0, 1], [-1, 0]])
    assert hodge_split(None, j).holo == SubspaceBasis.span(2, [[1, -i]])


def test_hodge_split_heisenberg(heis):
    split = hodge_split(heis.algebra, heis.complex_structure)
    assert split.holo == SubspaceBasis.span(4, [[1, -i, 0, 0], [0, 0, 1, i]])
    assert split.antiholo == split.holo.conjugate()
    assert split.frame @ split.coframe == Matrix.identity(4)


def test_block_diagonal_dimension():
    assert hodge_split(None, ComplexStructure.standard(4)).holo.dim == 2


def test_invalid_complex_structure():
    with pytest.raises(InvalidComplexStructure):
        ComplexStructure(Matrix.identity(2))
    with pytest.raises(InvalidComplexStructure):
        ComplexStructure(Matrix.zeros(3, 3))


def nijenhuis_vanishes(g, j):
    """``N(x, y) = [Jx, Jy] - J[Jx, y] - J[x, Jy] - [x, y]`` on basis pairs."""
    n = g.dim
    J = j.matrix
    for a, b in combinations(range(n), 2):
        x, y = unit(n, a), unit(n, b)
        jx, jy = J @ x, J @ y
        terms = [g.bracket(jx, jy), J @ list(g.bracket(jx, y)), J @ list(g.bracket(x, jy)),
                 g.bracket(x, y)]
        if any(t0 - t1 - t2 - t3 for t0, t1, t2, t3 in zip(*terms)):
            return False
    return True


def random_conjugate_j(n, rng):
    while True:
        p = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)])
        if rank(p) == n:
            break
    return ComplexStructure(p @ ComplexStructure.standard(n).matrix @ inverse(p))


@pytest.mark.parametrize("seed", range(6))
def test_integrability_matches_nijenhuis(seed):
    rng = random.Random(seed)
    algebras = [make_heisenberg_x_line(1).algebra, make_iwasawa().algebra,
                random_nilpotent_complex(6, seed).algebra]
    for g in algebras:
        for _ in range(4):
            j = random_conjugate_j(g.dim, rng)
            assert is_integrable(g, j) == nijenhuis_vanishes(g, j)
        j = ComplexStructure.standard(g.dim)
        assert is_integrable(g, j) == nijenhuis_vanishes(g, j)


def test_integrability_examples(heis):
    assert is_integrable(LieAlgebra.abelian(4), ComplexStructure.standard(4))
    assert is_integrable(heis.algebra, heis.complex_structure)
    # I'X = Z, I'Y = T
    swapped = ComplexStructure.from_images([unit(4, 2), unit(4, 3),
                                            [-1, 0, 0, 0], [0, -1, 0, 0]])
    assert not is_integrable(heis.algebra, swapped)
    assert not nijenhuis_vanishes(heis.algebra, swapped)


def test_iwasawa_holomorphic_bracket():
    g = make_iwasawa().algebra
    assert g.bracket([1, -i, 0, 0, 0, 0], [0, 0, 1, -i, 0, 0]) == (0, 0, 0, 0, 2, -2 * i)


def test_antiholo_chain_heisenberg(heis):
    split = hodge_split(heis.algebra, heis.complex_structure)
    chain = antiholo_central_series(split, heis.algebra)
    assert [w.dim for w in chain.w_chain] == [2, 0]
    assert [a.dim for a in chain.a_chain] == [0, 2]


def test_antiholo_chain_abelian(abelian4):
    split = hodge_split(abelian4.algebra, abelian4.complex_structure)
    assert [w.dim for w in antiholo_central_series(split, abelian4.algebra).w_chain] == [2, 0]


def test_antiholo_chain_iwasawa(iwasawa):
    split = hodge_split(iwasawa.algebra, iwasawa.complex_structure)
    chain = antiholo_central_series(split, iwasawa.algebra)
    assert [w.dim for w in chain.w_chain] == [3, 1, 0]
    assert chain.length == 3
    other = antiholo_central_series(split, iwasawa.algebra, "complement")
    assert other == chain


def test_antiholo_chain_rejects_non_nilpotent():
    # aff(C) as a real algebra, e1 = A, e2 = iA, e3 = B, e4 = iB with [A, B] = B
    g = LieAlgebra.from_brackets(["e1", "e2", "e3", "e4"], {
        ("e1", "e3"): {"e3": 1}, ("e1", "e4"): {"e4": 1},
        ("e2", "e3"): {"e4": 1}, ("e2", "e4"): {"e3": -1}})
    j = ComplexStructure.standard(4)
    assert is_integrable(g, j) and not is_nilpotent(g)
    with pytest.raises(NotNilpotent):
        antiholo_central_series(hodge_split(g, j), g)


def test_algebra_is_hashable_and_equal():
    a = make_heisenberg_x_line(2).algebra
    b = make_heisenberg_x_line(2).algebra
    assert a == b and hash(a) == hash(b)

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilcoh.catalog import make_heisenberg_x_line, make_iwasawa, random_nilpotent_complex
from nilcoh.errors import Degenerate, IncompatibleMetric, ThetaZero
from nilcoh.exterior import ExtForm, parse_form, wedge
from nilcoh.lck import (HermitianMetric, classify_lck, vaisman_identity_residual, extract_lee,
                        fundamental_form, is_heisenberg_x_line, is_vaisman, lee_ideal_check,
                        levi_civita, omega0_form, omega0_inertia, potential_constant)
from nilcoh.lie import ComplexStructure, LieAlgebra
from nilcoh.linalg import Matrix

NAMES = ["X", "Y", "Z", "T"]


def P(text):
    return parse_form(text, NAMES)


def unit(n, k):
    return [1 if t == k else 0 for t in range(n)]


class TestFundamentalForm:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_heisenberg(self, n):
        e = make_heisenberg_x_line(n)
        omega = fundamental_form(e.algebra, e.complex_structure, e.metric)
        dim = 2 * n + 2
        expected = ExtForm.zero(dim, 2)
        for k in range(n):
            expected = expected + wedge(ExtForm.covector(unit(dim, 2 * k)),
                                        ExtForm.covector(unit(dim, 2 * k + 1)))
        expected = expected - wedge(ExtForm.covector(unit(dim, dim - 2)),
                                    ExtForm.covector(unit(dim, dim - 1)))
        assert omega == expected

    def test_plane(self):
        j = ComplexStructure.standard(2)
        assert fundamental_form(LieAlgebra.abelian(2), j, HermitianMetric.identity(2)) == \
            parse_form("1 e1^e2", ["e1", "e2"])

    def test_scaling(self, heis):
        w1 = fundamental_form(heis.algebra, heis.complex_structure, heis.metric)
        w2 = fundamental_form(heis.algebra, heis.complex_structure, HermitianMetric.diagonal([2] * 4))
        assert w2 == w1.scale(2)

    def test_incompatible(self, heis):
        with pytest.raises(IncompatibleMetric):
            fundamental_form(heis.algebra, heis.complex_structure,
                             HermitianMetric.diagonal([1, 2, 1, 1]))

    def test_not_positive(self):
        with pytest.raises(IncompatibleMetric):
            HermitianMetric.diagonal([1, -1])


class TestLee:
    def test_heisenberg(self, heis):
        omega = fundamental_form(heis.algebra, heis.complex_structure, heis.metric)
        assert extract_lee(heis.algebra, omega) == P("1 T")

    def test_abelian(self, abelian4):
        omega = fundamental_form(abelian4.algebra, abelian4.complex_structure, abelian4.metric)
        assert extract_lee(abelian4.algebra, omega).is_zero()

    def test_no_solution(self, iwasawa):
        # in real dimension 4 wedging with a nondegenerate omega is onto 3-forms,
        # so an obstructed example needs dimension 6
        omega = fundamental_form(iwasawa.algebra, iwasawa.complex_structure,
                                 HermitianMetric.identity(6))
        assert extract_lee(iwasawa.algebra, omega) is None

    def test_degenerate(self, heis):
        with pytest.raises(Degenerate):
            extract_lee(heis.algebra, P("1 X^Y"))


class TestLeviCivita:
    def test_abelian(self):
        gam = levi_civita(LieAlgebra.abelian(4), HermitianMetric.identity(4))
        assert all(v == 0 for a in gam for b in a for v in b)

    def test_heisenberg_values(self, heis):
        gam = levi_civita(heis.algebra, heis.metric)
        assert all(gam[a][3][c] == 0 for a in range(4) for c in range(4))
        assert gam[0][1] == (0, 0, Fraction(1, 2), 0)

    @pytest.mark.parametrize("seed", range(4))
    def test_torsion_free_and_metric(self, seed):
        rng = random.Random(seed)
        g = random_nilpotent_complex(6, seed).algebra
        diag = [Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(6)]
        gram = Matrix.diagonal(diag)
        # add a symmetric off-diagonal term keeping positivity
        gram = gram + Matrix.from_sparse(6, 6, {(0, 1): Fraction(1, 10), (1, 0): Fraction(1, 10)})
        h = HermitianMetric(gram)
        gam = levi_civita(g, h)
        n = g.dim
        for a in range(n):
            for b in range(n):
                br = g.bracket(unit(n, a), unit(n, b))
                assert tuple(gam[a][b][c] - gam[b][a][c] for c in range(n)) == br
                for c in range(n):
                    lhs = h.inner(gam[a][b], unit(n, c)) + h.inner(unit(n, b), gam[a][c])
                    assert lhs == 0


class TestVaisman:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_heisenberg(self, n):
        e = make_heisenberg_x_line(n)
        assert is_vaisman(e.algebra, e.complex_structure, e.metric)

    def test_abelian_zero_theta(self, abelian4):
        assert is_vaisman(abelian4.algebra, abelian4.complex_structure, abelian4.metric,
                          ExtForm.zero(4, 1))

    def test_perturbed_metric_recorded(self, heis):
        # J-compatible perturbation; the outcome is recorded, not predicted
        h = HermitianMetric(Matrix.from_rows([[1, 0, Fraction(1, 3), 0], [0, 1, 0, -Fraction(1, 3)],
                                              [Fraction(1, 3), 0, 1, 0], [0, -Fraction(1, 3), 0, 1]]))
        assert h.is_compatible(heis.complex_structure)
        omega = fundamental_form(heis.algebra, heis.complex_structure, h)
        theta = extract_lee(heis.algebra, omega)
        assert theta == P("-3/8 Y 9/8 T")
        assert is_vaisman(heis.algebra, heis.complex_structure, h)
        cert = classify_lck(heis.algebra, heis.complex_structure, h)
        assert cert.lee_norm_sq == Fraction(81, 64)
        assert cert.potential_constant == Fraction(64, 81)


class TestPotential:
    def test_heisenberg(self, heis):
        omega = fundamental_form(heis.algebra, heis.complex_structure, heis.metric)
        assert potential_constant(heis.algebra, heis.complex_structure, heis.theta, omega) == 1
        assert potential_constant(heis.algebra, heis.complex_structure, heis.theta,
                                  omega.scale(5)) == 5

    def test_zero_theta(self, heis):
        omega = fundamental_form(heis.algebra, heis.complex_structure, heis.metric)
        with pytest.raises(ThetaZero):
            potential_constant(heis.algebra, heis.complex_structure, ExtForm.zero(4, 1), omega)


class TestOmega0:
    def test_form(self, heis):
        assert omega0_form(heis.algebra, heis.complex_structure, heis.theta) == P("1 X^Y")

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_inertia(self, n):
        e = make_heisenberg_x_line(n)
        assert omega0_inertia(e.algebra, e.complex_structure, e.theta) == (n, 1, 0)
        assert omega0_inertia(e.algebra, e.complex_structure, e.theta, real=True) == (2 * n, 2, 0)

    def test_abelian(self, abelian4):
        theta = ExtForm.covector([1, 0, 0, 0])
        assert omega0_inertia(abelian4.algebra, abelian4.complex_structure, theta) == (0, 2, 0)

    @settings(max_examples=15)
    @given(st.integers(1, 5), st.integers(1, 5))
    def test_positive_rescaling(self, p, q):
        e = make_heisenberg_x_line(2)
        theta = e.theta.scale(Fraction(p, q))
        assert omega0_inertia(e.algebra, e.complex_structure, theta) == (2, 1, 0)


class TestVaismanIdentity:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_heisenberg(self, n):
        e = make_heisenberg_x_line(n)
        assert vaisman_identity_residual(e.algebra, e.complex_structure, e.metric).is_zero()

    def test_non_unit_metric(self):
        e = make_heisenberg_x_line(1)
        h = HermitianMetric.diagonal([1, 1, 4, 4])
        assert vaisman_identity_residual(e.algebra, e.complex_structure, h).is_zero()


class TestLeeIdeal:
    def test_heisenberg(self, heis):
        res = lee_ideal_check(heis.algebra, heis.complex_structure, heis.metric)
        assert res.is_ideal and res.quotient_abelian
        assert res.quotient.dim == 2

    def test_abelian(self, abelian4):
        res = lee_ideal_check(abelian4.algebra, abelian4.complex_structure, abelian4.metric,
                              ExtForm.covector([1, 0, 0, 0]))
        assert res.is_ideal and res.quotient_abelian

    def test_non_lck_rejected(self, iwasawa):
        with pytest.raises((ValueError, Degenerate)):
            lee_ideal_check(iwasawa.algebra, iwasawa.complex_structure, HermitianMetric.identity(6))


class TestHeisenbergRecognition:
    def test_examples(self):
        assert is_heisenberg_x_line(make_heisenberg_x_line(1).algebra)
        assert is_heisenberg_x_line(make_heisenberg_x_line(2).algebra)
        assert not is_heisenberg_x_line(LieAlgebra.abelian(4))
        assert not is_heisenberg_x_line(make_iwasawa().algebra)
        h3 = LieAlgebra.from_brackets(["X", "Y", "Z"], {("X", "Y"): {"Z": 1}})
        assert not is_heisenberg_x_line(h3)

    def test_basis_independent(self):
        # h3 x R written with [a, b] = c + d and d central
        g = LieAlgebra.from_brackets(["a", "b", "c", "d"], {("a", "b"): {"c": 1, "d": 1}})
        assert is_heisenberg_x_line(g)


class TestClassify:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_heisenberg_green(self, n):
        e = make_heisenberg_x_line(n)
        cert = classify_lck(e.algebra, e.complex_structure, e.metric)
        assert cert.green
        assert cert.potential_constant == 1
        assert cert.lee == e.theta

    def test_abelian_kahler_branch(self, abelian4):
        cert = classify_lck(abelian4.algebra, abelian4.complex_structure, abelian4.metric)
        assert cert.is_lck and cert.is_kahler and not cert.green

    def test_iwasawa_not_green(self, iwasawa):
        cert = classify_lck(iwasawa.algebra, iwasawa.complex_structure, HermitianMetric.identity(6))
        assert not cert.green

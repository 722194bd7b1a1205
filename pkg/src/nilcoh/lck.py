"""Hermitian metrics on Lie algebras and the LCK / Vaisman checks.

Conventions: the fundamental form is ``omega(x, y) = h(I x, y)``; the Lee
form solves ``d omega = theta ^ omega`` with ``d theta = 0``; ``theta^c = I theta``.
The semi-positive form attached to a Vaisman structure is taken as
``omega_0 = -d(theta^c)``, which for a unit Lee form equals
``omega - theta ^ theta^c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cohomology import _ratio, _split_of
from .differentials import apply_d, as_theta, potential_form, theta_c, twisted_d
from .errors import Degenerate, IncompatibleMetric, NotIntegrable, NotNilpotent, ThetaZero
from .exterior import REAL, ExtForm, basis, wedge
from .lie import (ComplexStructure, LieAlgebra, center, is_integrable,
                  is_nilpotent, lower_central_series)
from .linalg import Matrix, SubspaceBasis, inverse, rank, solve, symmetric_inertia
from .scalars import ZERO, gauss

__all__ = [
    "HermitianMetric", "LckCertificate", "fundamental_form", "extract_lee", "levi_civita",
    "lee_vector", "is_vaisman", "potential_constant", "omega0_form", "omega0_inertia",
    "vaisman_identity_residual", "LeeIdeal", "lee_ideal_check", "is_heisenberg_x_line", "classify_lck",
]


@dataclass(frozen=True)
class HermitianMetric:
    """Positive definite symmetric rational Gram matrix ``h(e_i, e_j)``."""

    gram: Matrix

    def __post_init__(self):
        g = self.gram
        if g.rows != g.cols or not g.is_real or g != g.transpose():
            raise IncompatibleMetric("metric must be a real symmetric matrix")
        pos, _, _ = symmetric_inertia(g)
        if pos != g.rows:
            raise IncompatibleMetric("metric is not positive definite")

    @classmethod
    def identity(cls, n: int) -> "HermitianMetric":
        return cls(Matrix.identity(n))

    @classmethod
    def diagonal(cls, values: Sequence) -> "HermitianMetric":
        return cls(Matrix.diagonal([gauss(v) for v in values]))

    @property
    def dim(self) -> int:
        return self.gram.rows

    def is_compatible(self, j: ComplexStructure) -> bool:
        J = j.matrix
        return J.transpose() @ self.gram @ J == self.gram

    def inner(self, x: Sequence, y: Sequence):
        return sum((a * b for a, b in zip(x, self.gram @ y)), ZERO)

    def dual_norm_sq(self, theta: ExtForm) -> Fraction:
        """``|theta|^2_h = theta G^{-1} theta^T``."""
        c = theta.covector_coeffs()
        return sum((a * b for a, b in zip(c, inverse(self.gram) @ c)), ZERO).re


def fundamental_form(g: LieAlgebra, j: ComplexStructure, h: HermitianMetric) -> ExtForm:
    """``omega(e_a, e_b) = h(I e_a, e_b)``; raises IncompatibleMetric."""
    if not h.is_compatible(j):
        raise IncompatibleMetric("h(I x, I y) != h(x, y)")
    w = j.matrix.transpose() @ h.gram
    n = g.dim
    return ExtForm(n, 2, {(a, b): w[a, b] for a in range(n) for b in range(a + 1, n)}, REAL)


def _form_matrix(omega: ExtForm) -> Matrix:
    n = omega.dim
    entries = {}
    for (a, b), c in omega.terms.items():
        entries[a, b] = c
        entries[b, a] = -c
    return Matrix.from_sparse(n, n, entries)


def _wedge_matrix(omega: ExtForm) -> Matrix:
    """Matrix of ``theta -> theta ^ omega`` from 1-forms to 3-forms."""
    n = omega.dim
    cols = [wedge(ExtForm.covector([1 if i == k else 0 for i in range(n)]), omega).vector()
            for k in range(n)]
    return Matrix.from_rows(cols, len(basis(n, 3))).transpose()


def extract_lee(g: LieAlgebra, omega: ExtForm):
    """Solve ``d omega = theta ^ omega`` jointly with ``d theta = 0``.

    Returns the (echelon-canonical) solution as a real 1-form, or ``None``.
    """
    n = g.dim
    if omega.degree != 2 or rank(_form_matrix(omega)) != n:
        raise Degenerate("omega is not a nondegenerate 2-form")
    d1 = twisted_d(g, None, check=False).blocks[1]
    system = Matrix.vstack([_wedge_matrix(omega), d1])
    rhs = apply_d(g, omega).vector() + [ZERO] * d1.rows
    sol = solve(system, rhs)
    if sol is None:
        return None
    return ExtForm.covector(sol)


def levi_civita(g: LieAlgebra, h: HermitianMetric) -> tuple:
    """``Gamma[a][b][c]`` with ``nabla_{e_a} e_b = sum_c Gamma[a][b][c] e_c``.

    From ``2h(nabla_x y, z) = h([x,y],z) - h([y,z],x) + h([z,x],y)``.
    """
    n = g.dim
    G = h.gram
    c = g.constants
    # hb[a][b][z] = h([e_a, e_b], e_z)
    hb = [[[sum((c[a][b][k] * G[k, z].re for k in range(n)), Fraction(0)) for z in range(n)]
           for b in range(n)] for a in range(n)]
    Ginv = inverse(G)
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            rhs = [(hb[a][b][z] - hb[b][z][a] + hb[z][a][b]) / 2 for z in range(n)]
            row.append(tuple(v.re for v in Ginv @ rhs))
        out.append(tuple(row))
    return tuple(out)


def lee_vector(h: HermitianMetric, theta: ExtForm) -> tuple:
    """Metric dual ``theta^#`` with ``h(theta^#, x) = theta(x)``."""
    return inverse(h.gram) @ theta.covector_coeffs()


def is_vaisman(g: LieAlgebra, j: ComplexStructure, h: HermitianMetric, theta=None) -> bool:
    """``nabla_x theta^# = 0`` for every basis ``x`` (``theta`` defaults to the Lee form)."""
    if theta is None:
        theta = extract_lee(g, fundamental_form(g, j, h))
        if theta is None:
            return False
    theta = as_theta(g, theta)
    gam = levi_civita(g, h)
    v = lee_vector(h, theta)
    n = g.dim
    for a in range(n):
        for c in range(n):
            if sum((v[b] * gam[a][b][c] for b in range(n)), ZERO):
                return False
    return True


def potential_constant(g: LieAlgebra, j, theta, omega: ExtForm):
    """``c`` with ``omega = c d_theta d^c_theta(1)``, or ``None``; raises ThetaZero."""
    theta = as_theta(g, theta)
    if theta.is_zero():
        raise ThetaZero("the potential equation needs theta != 0")
    split = _split_of(g, j)
    c = _ratio(omega, potential_form(g, split, theta))
    if c is None:
        return None
    return c.re if not c.im else c


def omega0_form(g: LieAlgebra, j, theta) -> ExtForm:
    """``omega_0 = -d(theta^c)``."""
    theta = as_theta(g, theta)
    split = _split_of(g, j)
    return -apply_d(g, theta_c(theta, split))


def _eta(g, j, theta):
    J = j.matrix if isinstance(j, ComplexStructure) else j.complex_structure.matrix
    return _form_matrix(omega0_form(g, j, theta)) @ J


def omega0_inertia(g: LieAlgebra, j, theta, real: bool = False) -> tuple:
    """Inertia of ``H(v, w) = omega_0(v, I conj(w))`` on ``g^{1,0}``.

    Positive rescaling of ``theta`` rescales ``omega_0`` positively, so the
    unit normalization never changes the answer and is skipped.  With
    ``real=True`` the inertia of ``eta(x, y) = omega_0(x, I y)`` on ``g`` is
    returned instead (each count doubles).
    """
    eta = _eta(g, j, theta)
    if real:
        return symmetric_inertia(eta)
    split = _split_of(g, j)
    vs = split.holo.vectors
    herm = [[sum((a * b for a, b in zip(v, eta @ [x.conjugate() for x in w])), ZERO)
             for w in vs] for v in vs]
    return symmetric_inertia(Matrix.from_rows(herm, len(vs)))


def vaisman_identity_residual(g: LieAlgebra, j, h: HermitianMetric, theta=None) -> ExtForm:
    """``d theta^c - theta ^ theta^c + |theta|^2 omega`` (zero on Vaisman inputs).

    For a unit Lee form this is ``d theta^c - theta ^ theta^c + omega``; the
    ``|theta|^2`` factor keeps the identity rational for other normalizations.
    """
    omega = fundamental_form(g, j, h)
    if theta is None:
        theta = extract_lee(g, omega)
    theta = as_theta(g, theta)
    split = _split_of(g, j)
    tc = theta_c(theta, split)
    return apply_d(g, tc) - wedge(theta, tc) + omega.scale(h.dual_norm_sq(theta))


@dataclass(frozen=True)
class LeeIdeal:
    span: SubspaceBasis
    is_ideal: bool
    quotient: LieAlgebra | None
    quotient_abelian: bool | None


def _quotient(g: LieAlgebra, s: SubspaceBasis) -> LieAlgebra:
    n = g.dim
    comp = [i for i in range(n) if i not in set(s.pivots)]
    unit = [[1 if k == i else 0 for k in range(n)] for i in comp]
    frame = Matrix.from_rows(list(s.vectors) + unit, n).transpose()
    coords = inverse(frame)
    k = len(comp)
    off = s.dim
    consts = [[[Fraction(0)] * k for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(k):
            if a != b:
                br = coords @ g.bracket(unit[a], unit[b])
                consts[a][b] = [br[off + t].re for t in range(k)]
    return LieAlgebra(tuple(g.names[i] for i in comp), consts)


def lee_ideal_check(g: LieAlgebra, j: ComplexStructure, h: HermitianMetric, theta=None) -> LeeIdeal:
    """Is ``span(theta^#, I theta^#)`` an ideal?  Also the quotient algebra."""
    if theta is None:
        theta = extract_lee(g, fundamental_form(g, j, h))
        if theta is None:
            raise ValueError("no Lee form: the structure is not LCK")
    theta = as_theta(g, theta)
    v = lee_vector(h, theta)
    s = SubspaceBasis.span(g.dim, [v, j.apply(v)])
    units = [[1 if k == i else 0 for k in range(g.dim)] for i in range(g.dim)]
    ideal = all(s.contains(g.bracket(e, x)) for e in units for x in s.vectors)
    if not ideal:
        return LeeIdeal(s, False, None, None)
    q = _quotient(g, s)
    return LeeIdeal(s, True, q, q.is_abelian())


def is_heisenberg_x_line(g: LieAlgebra) -> bool:
    """``g`` is isomorphic to ``h_{2k+1} x R`` for some ``k >= 1``."""
    series = lower_central_series(g)
    if len(series) < 2 or series[1].dim != 1:
        return False
    z = center(g)
    if z.dim != 2 or not z.contains_subspace(series[1]):
        return False
    # [g, g] is spanned by an echelon vector with a 1 at its pivot, so the
    # coefficient of [e_a, e_b] along it is the pivot entry of the bracket
    piv = series[1].pivots[0]
    comp = [i for i in range(g.dim) if i not in set(z.pivots)]
    form = Matrix.from_rows([[g.constants[a][b][piv] for b in comp] for a in comp], len(comp))
    return rank(form) == len(comp)


@dataclass(frozen=True)
class LckCertificate:
    """Outcome of the LCK / Vaisman pipeline; ``None`` marks a check not reached."""

    omega: ExtForm
    lee: ExtForm | None
    is_lck: bool
    is_kahler: bool = False
    lee_closed: bool | None = None
    lee_unit_norm: bool | None = None
    lee_norm_sq: Fraction | None = None
    potential_constant: object = None
    is_vaisman: bool | None = None
    vaisman_identity_ok: bool | None = None
    omega0_inertia: tuple | None = None
    lee_ideal_ok: bool | None = None
    quotient_abelian: bool | None = None
    is_heisenberg_x_line: bool | None = None
    notes: tuple = field(default=())

    @property
    def green(self) -> bool:
        """Every check of the classification chain passed."""
        pc = self.potential_constant
        return bool(self.is_lck and not self.is_kahler and self.lee_closed and self.is_vaisman
                    and pc is not None and not getattr(pc, "imag", 0) and pc > 0
                    and self.vaisman_identity_ok and self.lee_ideal_ok and self.quotient_abelian
                    and self.is_heisenberg_x_line
                    and self.omega0_inertia is not None and self.omega0_inertia[1] == 1
                    and self.omega0_inertia[2] == 0)


def classify_lck(g: LieAlgebra, j: ComplexStructure, h: HermitianMetric) -> LckCertificate:
    """Run fundamental form, Lee form, potential, Vaisman, omega_0 and ideal checks."""
    if not is_nilpotent(g):
        raise NotNilpotent("the classification applies to nilpotent algebras")
    if not is_integrable(g, j):
        raise NotIntegrable("complex structure is not integrable")
    omega = fundamental_form(g, j, h)
    theta = extract_lee(g, omega)
    if theta is None:
        return LckCertificate(omega, None, False, notes=("d omega = theta ^ omega has no closed solution",))
    if theta.is_zero():
        return LckCertificate(omega, theta, True, is_kahler=True, lee_closed=True,
                              notes=("theta = 0: Kahler branch",))
    closed = apply_d(g, theta).is_zero()
    norm = h.dual_norm_sq(theta)
    pc = potential_constant(g, j, theta, omega)
    vaisman = is_vaisman(g, j, h, theta)
    dct = vaisman_identity_residual(g, j, h, theta).is_zero()
    inertia = omega0_inertia(g, j, theta)
    ideal = lee_ideal_check(g, j, h, theta)
    return LckCertificate(omega, theta, True, False, closed, norm == 1, norm, pc, vaisman, dct,
                          inertia, ideal.is_ideal, ideal.quotient_abelian,
                          is_heisenberg_x_line(g))

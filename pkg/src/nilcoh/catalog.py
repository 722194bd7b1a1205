"""Built-in example algebras and a seeded generator of random ones."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .differentials import d_image, structure_terms
from .errors import DimensionTooLarge
from .exterior import ExtForm, basis, wedge
from .lie import MAX_DIM, ComplexStructure, LieAlgebra, is_integrable, is_nilpotent
from .lck import HermitianMetric
from .linalg import Matrix, kernel_basis
from .scalars import ZERO, I_UNIT

__all__ = ["CatalogEntry", "make_heisenberg_x_line", "make_abelian", "make_iwasawa",
           "random_nilpotent_complex", "closed_one_forms", "random_closed_theta",
           "get_entry", "CATALOG_NAMES"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    complex_structure: ComplexStructure | None = None
    metric: HermitianMetric | None = None
    theta: ExtForm | None = None
    notes: str = ""


def make_heisenberg_x_line(n: int = 1) -> CatalogEntry:
    """``h_{2n+1} x R``: ``[X_i, Y_i] = Z``, ``I X_i = Y_i``, ``I Z = -T``, Lee form ``T^*``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if 2 * n + 2 > MAX_DIM:
        raise DimensionTooLarge("heisenberg x line with n=%d has dimension %d > %d"
                                % (n, 2 * n + 2, MAX_DIM))
    if n == 1:
        names = ["X", "Y"]
    else:
        names = [p + str(i) for i in range(1, n + 1) for p in ("X", "Y")]
    names += ["Z", "T"]
    dim = len(names)
    g = LieAlgebra.from_brackets(names, {(2 * i, 2 * i + 1): {dim - 2: 1} for i in range(n)})
    entries = {}
    for i in range(n):
        entries[2 * i + 1, 2 * i] = 1   # I X_i = Y_i
        entries[2 * i, 2 * i + 1] = -1  # I Y_i = -X_i
    entries[dim - 1, dim - 2] = -1      # I Z = -T
    entries[dim - 2, dim - 1] = 1       # I T = Z
    j = ComplexStructure(Matrix.from_sparse(dim, dim, entries))
    theta = ExtForm.covector([0] * (dim - 1) + [1])
    return CatalogEntry("heisenberg", g, j, HermitianMetric.identity(dim), theta,
                        "h_%d x R with orthonormal basis; Lee form T*" % (2 * n + 1))


def make_abelian(n: int = 4) -> CatalogEntry:
    if n < 2 or n % 2:
        raise ValueError("the abelian entry needs an even dimension >= 2")
    if n > MAX_DIM:
        raise DimensionTooLarge("dimension %d > %d" % (n, MAX_DIM))
    g = LieAlgebra.abelian(n)
    return CatalogEntry("abelian", g, ComplexStructure.standard(n), HermitianMetric.identity(n),
                        ExtForm.zero(n, 1), "R^%d with standard J; Kahler" % n)


def make_iwasawa() -> CatalogEntry:
    names = ["e%d" % k for k in range(1, 7)]
    g = LieAlgebra.from_brackets(names, {
        ("e1", "e3"): {"e5": 1}, ("e2", "e4"): {"e5": -1},
        ("e1", "e4"): {"e6": 1}, ("e2", "e3"): {"e6": 1},
    })
    return CatalogEntry("iwasawa", g, ComplexStructure.standard(6), None, None,
                        "real form of [Z1, Z2] = 2 Z3 with Z_k = e_{2k-1} - i e_{2k}")


_COEFFS = (0, 0, 0, 0, 1, -1, I_UNIT, -I_UNIT, 1 + I_UNIT, 2)


def _conj(f: ExtForm) -> ExtForm:
    return ExtForm(f.dim, f.degree, {k: c.conjugate() for k, c in f.terms.items()})


def random_nilpotent_complex(dim: int, seed: int, max_tries: int = 500) -> CatalogEntry:
    """A random non-abelian nilpotent algebra with an integrable standard ``J``.

    Complex structure equations ``d w^k`` are drawn level by level in the span
    of ``w^i ^ w^j`` (``i < j < k``) and ``w^i ^ conj(w^j)`` (``i, j < k``),
    with ``w^k = e^{2k} + i e^{2k+1}``.  This shape makes ``J`` integrable and
    the algebra nilpotent; a level is redrawn until ``d(d w^k) = 0``.
    """
    if dim < 4 or dim % 2:
        raise ValueError("dimension must be even and at least 4")
    if dim > MAX_DIM:
        raise DimensionTooLarge("dimension %d > %d" % (dim, MAX_DIM))
    rng = random.Random(seed)
    m = dim // 2
    w = [ExtForm.covector([ZERO] * (2 * k) + [1, I_UNIT] + [ZERO] * (dim - 2 * k - 2))
         for k in range(m)]
    wbar = [_conj(f) for f in w]
    names = ["e%d" % (k + 1) for k in range(dim)]
    for _ in range(max_tries):
        dw, dwbar = [], []
        for k in range(m):
            for _ in range(max_tries):
                acc = ExtForm.zero(dim, 2)
                d_acc = ExtForm.zero(dim, 3)
                for i in range(k):
                    for jj in range(k):
                        c = rng.choice(_COEFFS)
                        if c:
                            acc = acc + wedge(w[i], wbar[jj]).scale(c)
                            d_acc = d_acc + (wedge(dw[i], wbar[jj])
                                             - wedge(w[i], dwbar[jj])).scale(c)
                        c = rng.choice(_COEFFS) if i < jj else 0
                        if c:
                            acc = acc + wedge(w[i], w[jj]).scale(c)
                            d_acc = d_acc + (wedge(dw[i], w[jj]) - wedge(w[i], dw[jj])).scale(c)
                if d_acc.is_zero():
                    break
            else:
                acc = ExtForm.zero(dim, 2)
            dw.append(acc)
            dwbar.append(_conj(acc))
        consts = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for k, form in enumerate(dw):
            for (a, b), c in form.terms.items():
                for target, val in ((2 * k, c.re), (2 * k + 1, c.im)):
                    consts[a][b][target] = -val
                    consts[b][a][target] = val
        g = LieAlgebra(tuple(names), consts)
        if g.is_abelian():
            continue
        j = ComplexStructure.standard(dim)
        assert is_integrable(g, j) and is_nilpotent(g)
        return CatalogEntry("random", g, j, None, None, "dim %d, seed %d" % (dim, seed))
    raise RuntimeError("no non-abelian algebra found in %d tries" % max_tries)


def closed_one_forms(g: LieAlgebra) -> list:
    """Basis of real closed 1-forms (the annihilator of ``[g, g]``)."""
    d1 = structure_terms(g)
    n = g.dim
    idx = {mi: k for k, mi in enumerate(basis(n, 2))}
    entries = {}
    for i in range(n):
        for mi, v in d_image((i,), d1).items():
            entries[idx[mi], i] = v
    ker = kernel_basis(Matrix.from_sparse(len(idx), n, entries))
    return [[x.re for x in v] for v in ker.vectors]


def random_closed_theta(g: LieAlgebra, rng: random.Random, denominators=(1, 2, 3)) -> ExtForm:
    """A random nonzero closed real 1-form with small rational coefficients."""
    basis_ = closed_one_forms(g)
    if not basis_:
        raise ValueError("the algebra has no nonzero closed 1-form")
    while True:
        coeffs = [Fraction(rng.randint(-3, 3), rng.choice(denominators)) for _ in basis_]
        if any(coeffs):
            vec = [sum((c * v[i] for c, v in zip(coeffs, basis_)), Fraction(0))
                   for i in range(g.dim)]
            return ExtForm.covector(vec)


CATALOG_NAMES = ("heisenberg", "kodaira-thurston", "abelian", "iwasawa", "random")


def get_entry(name: str, n: int | None = None, seed: int = 0) -> CatalogEntry:
    """Lookup by name; ``n`` is the Heisenberg index, the abelian or random dimension."""
    if name in ("heisenberg", "heisenberg-x-line"):
        return make_heisenberg_x_line(1 if n is None else n)
    if name == "kodaira-thurston":
        return make_heisenberg_x_line(1)
    if name == "abelian":
        return make_abelian(4 if n is None else n)
    if name == "iwasawa":
        return make_iwasawa()
    if name == "random":
        return random_nilpotent_complex(6 if n is None else n, seed)
    raise KeyError("unknown catalog entry %r (known: %s)" % (name, ", ".join(CATALOG_NAMES)))

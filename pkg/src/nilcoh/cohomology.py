"""Cohomology of the untwisted, twisted and twisted Dolbeault complexes.

Also the filtration argument behind the vanishing of twisted Dolbeault
cohomology, made concrete (:func:`spectral_pages`), the twisted Bott-Chern
group in bidegree (1,1), and the solver producing a 1-form ``tau`` with
``omega = d_theta tau`` and ``d_theta(I tau) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Sequence

from .differentials import (as_theta, ce_blocks, d_image, dolbeault_row, potential_form,
                            structure_terms, theta_c, twisted_d, wedge_blocks, apply_d,
                            _twisted_image, _theta_coeffs, _block)
from .errors import (ComposeNonzero, HodgeChaseFailure, NotClosed, NotIntegrable,
                     ThetaZero, WrongBidegree, ZeroCovector)
from .exterior import (HODGE, REAL, ExtForm, apply_I, basis, bidegree_basis, bidegree_split,
                       to_hodge, to_real)
from .lie import (HodgeSplit, LieAlgebra, antiholo_central_series,
                  hodge_constants, hodge_split, is_integrable)
from .linalg import Matrix, SubspaceBasis, complex_ranks, inverse, kernel_basis, rank, solve
from .scalars import ZERO, ONE, gauss

__all__ = [
    "CochainComplex", "betti", "twisted_betti", "twisted_dolbeault_pq",
    "twisted_dolbeault_0q", "SpectralPages", "spectral_pages", "koszul_exactness",
    "closed_11_forms", "bott_chern_11_dim", "HodgeChase", "hodge_chase",
]


@dataclass
class CochainComplex:
    """``C^0 -> C^1 -> ... -> C^N`` with ``blocks[k]: C^k -> C^{k+1}``."""

    blocks: list
    label: str = ""
    _ranks: list | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a complex needs at least one block")
        for k in range(len(self.blocks) - 1):
            a, b = self.blocks[k], self.blocks[k + 1]
            if a.rows != b.cols:
                raise ValueError("block %d lands in dimension %d, block %d starts from %d"
                                 % (k, a.rows, k + 1, b.cols))
            if not (b @ a).is_zero():
                raise ComposeNonzero("D_%d D_%d != 0 in %s" % (k + 1, k, self.label or "complex"))

    @property
    def dims(self) -> list:
        return [b.cols for b in self.blocks] + [self.blocks[-1].rows]

    def ranks(self) -> list:
        if self._ranks is None:
            self._ranks = complex_ranks(self.blocks)
        return self._ranks

    def cohomology(self) -> list:
        r = [0] + self.ranks() + [0]
        return [d - r[k] - r[k + 1] for k, d in enumerate(self.dims)]


def _split_of(g, j):
    if isinstance(j, HodgeSplit):
        split = j
    else:
        split = hodge_split(g, j)
    if not is_integrable(g, split.complex_structure):
        raise NotIntegrable("complex structure is not integrable")
    return split


def betti(g: LieAlgebra) -> list:
    """``dim H^k(Lambda g^*, d)`` for ``k = 0..n``."""
    if g.dim == 0:
        return [1]
    blocks = ce_blocks(g.dim, structure_terms(g))
    return CochainComplex([blocks[k] for k in range(g.dim)], "d").cohomology()


def twisted_betti(g: LieAlgebra, theta) -> list:
    """``dim H^k(Lambda g^*, d_theta)``; raises ThetaNotClosed."""
    op = twisted_d(g, theta, check=False)
    return CochainComplex([op.blocks[k] for k in range(g.dim)], "d_theta").cohomology()


def twisted_dolbeault_pq(g: LieAlgebra, j, theta, p: int) -> list:
    """``dim H^q(Lambda^{p,*}, delbar_theta)`` for ``q = 0..n/2``."""
    split = _split_of(g, j)
    if not 0 <= p <= split.m:
        raise ValueError("p must lie in 0..%d" % split.m)
    blocks = dolbeault_row(g, split, theta, p)
    return CochainComplex(blocks, "delbar_theta row %d" % p).cohomology()


def twisted_dolbeault_0q(g: LieAlgebra, j, theta) -> list:
    return twisted_dolbeault_pq(g, j, theta, 0)


def koszul_exactness(dim: int, covector: Sequence) -> bool:
    """Exactness of ``(Lambda^*(V), e ^)`` decided by ranks; raises ZeroCovector."""
    e = [gauss(x) for x in covector]
    if len(e) != dim:
        raise ValueError("covector has %d entries, expected %d" % (len(e), dim))
    if not any(e):
        raise ZeroCovector("Koszul complex of the zero covector")
    blocks = wedge_blocks(dim, e)
    cx = CochainComplex([blocks[k] for k in range(dim)], "koszul")
    return not any(cx.cohomology())


# ---------------------------------------------------------------------------
# filtration of the twisted Dolbeault complex
# ---------------------------------------------------------------------------

def _level_weight(level: int) -> int:
    # 2 u(l-1) > u(l): the weight strictly grows under delbar on generators
    return 1 - 2 ** (level - 1)


@dataclass(frozen=True)
class SpectralPages:
    """Concrete first pages for the twisted Dolbeault complex ``Lambda^{0,*}``.

    Generators of ``(g^{0,1})^*`` are chosen adapted to ``A_1 <= A_2 <= ...``
    (``levels[b]`` is the least ``k`` with generator ``b`` in ``A_k``); a
    monomial has weight ``sum u(level)`` with ``u(l) = 1 - 2^(l-1)``.  The
    spans of monomials of weight ``>= w`` form a decreasing filtration by
    subcomplexes; ``e0_blocks[w, q]`` is the induced differential on weight
    ``w``, degree ``q``.  ``v_subspaces[k][q]`` is ``Lambda^q(A_k)`` in the
    adapted monomial coordinates.
    """

    chain: object
    adapted_basis: tuple
    levels: tuple
    theta01: tuple
    weights: dict
    e0_blocks: dict = field(repr=False)
    wedge_blocks: dict = field(repr=False)
    e1_dims: dict
    annihilator_condition: bool
    filtration_ok: bool
    e0_matches_wedge: bool
    v_subspaces: dict = field(repr=False)
    v_subcomplex: dict
    v_graded_is_wedge: bool

    @property
    def e1_total(self) -> int:
        return sum(self.e1_dims.values())

    @property
    def e1_vanishes(self) -> bool:
        return self.e1_total == 0

    def e1_by_degree(self) -> list:
        m = len(self.levels)
        out = [0] * (m + 1)
        for (_, q), v in self.e1_dims.items():
            out[q] += v
        return out

    @property
    def v_dims(self) -> dict:
        return {k: [s.dim for s in spaces] for k, spaces in self.v_subspaces.items()}


def _adapted_basis(chain):
    vecs, levels = [], []
    m = chain.a_chain[-1].ambient_dim
    span = SubspaceBasis.zero(m)
    for k, a in enumerate(chain.a_chain):
        for v in a.vectors:
            if not span.contains(v):
                vecs.append(v)
                levels.append(k)
                span = SubspaceBasis.span(m, span.vectors + (v,))
    return vecs, levels


def _wedge_span(m, vectors):
    """``Lambda^2`` of the span of the given covectors, in colex coordinates."""
    idx = {mi: k for k, mi in enumerate(basis(m, 2))}
    rows = []
    for x, y in combinations(vectors, 2):
        row = [ZERO] * len(idx)
        for a in range(m):
            for b in range(a + 1, m):
                c = x[a] * y[b] - x[b] * y[a]
                if c:
                    row[idx[a, b]] = c
        rows.append(row)
    return SubspaceBasis.span(len(idx), rows)


def spectral_pages(g: LieAlgebra, j, theta, strict: bool = True) -> SpectralPages:
    """Build the filtration, its ``E_0`` page and ``E_1`` dimensions.

    With ``strict`` (the default) a zero ``theta`` raises ThetaZero; otherwise
    it is allowed, which is useful for checking ``E_1`` against cohomology.
    """
    theta = as_theta(g, theta)
    if strict and theta.is_zero():
        raise ThetaZero("the filtration argument needs theta != 0")
    split = _split_of(g, j)
    m = split.m
    chain = antiholo_central_series(split, g)
    consts = hodge_constants(g, split)
    # delbar on the antiholomorphic coframe, in its own indices 0..m-1
    d01 = [[] for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            for c in range(m):
                v = consts[m + a][m + b][m + c]
                if v:
                    d01[c].append((a, b, -v))
    t01 = to_hodge(theta, split).covector_coeffs()[m:]

    # (a) delbar A_k <= Lambda^2 A_{k-1}
    ann_ok = True
    for k in range(1, len(chain.a_chain)):
        target = _wedge_span(m, chain.a_chain[k - 1].vectors)
        idx = {mi: pos for pos, mi in enumerate(basis(m, 2))}
        for v in chain.a_chain[k].vectors:
            img = [ZERO] * len(idx)
            for c, x in enumerate(v):
                if x:
                    for (a, b), w in d_image((c,), d01).items():
                        img[idx[a, b]] = img[idx[a, b]] + x * w
            if not target.contains(img):
                ann_ok = False

    # adapted generators psi^b = sum_a B[b][a] phibar^a, dual vectors via U = B^{-1}
    vecs, levels = _adapted_basis(chain)
    B = Matrix.from_rows(vecs, m)
    U = inverse(B)
    s = tuple(sum((t01[a] * U[a, b] for a in range(m)), ZERO) for b in range(m))
    dual = [U.column(b) for b in range(m)]
    adapted = [[] for _ in range(m)]
    for b1 in range(m):
        for b2 in range(b1 + 1, m):
            br = [ZERO] * m
            for a1, x in enumerate(dual[b1]):
                if not x:
                    continue
                for a2, y in enumerate(dual[b2]):
                    if y and a1 != a2:
                        f = x * y
                        for c in range(m):
                            v = consts[m + a1][m + a2][m + c]
                            if v:
                                br[c] = br[c] + f * v
            for e in range(m):
                coef = sum((B[e, c] * br[c] for c in range(m)), ZERO)
                if coef:
                    adapted[e].append((b1, b2, -coef))
    dbar = ce_blocks(m, adapted, s)
    wedge = wedge_blocks(m, s, -1)
    u = [_level_weight(lv) for lv in levels]

    def weight(mi):
        return sum(u[i] for i in mi)

    weights = {}
    for q in range(m + 1):
        for mi in basis(m, q):
            weights.setdefault(weight(mi), []).append(mi)

    filtration_ok = True
    e0, wb = {}, {}
    for q in range(m):
        src, tgt = basis(m, q), basis(m, q + 1)
        blk, wbk = dbar[q], wedge[q]
        for (r, c), v in blk.nonzero_entries():
            if weight(tgt[r]) < weight(src[c]):
                filtration_ok = False
        for w in sorted(weights):
            cols = [c for c, mi in enumerate(src) if weight(mi) == w]
            rows = [r for r, mi in enumerate(tgt) if weight(mi) == w]
            if cols or rows:
                e0[w, q] = blk.submatrix(rows, cols)
                wb[w, q] = wbk.submatrix(rows, cols)
    matches = all(e0[k] == wb[k] for k in e0)

    e1 = {}
    for w in sorted(weights):
        counts = [sum(1 for mi in basis(m, q) if weight(mi) == w) for q in range(m + 1)]
        full = [e0.get((w, q)) or Matrix.zeros(counts[q + 1], counts[q]) for q in range(m)]
        for q, h in enumerate(CochainComplex(full, "E0 weight %d" % w).cohomology()):
            if counts[q]:
                e1[w, q] = h

    # Lambda^*(A_k) for every k, plus the literal graded differential
    v_sub, v_cx = {}, {}
    for k in range(len(chain.a_chain)):
        spaces = []
        for q in range(m + 1):
            dimq = len(basis(m, q))
            spaces.append(SubspaceBasis(dimq, tuple(
                tuple(ONE if t == pos else ZERO for t in range(dimq))
                for pos, mi in enumerate(basis(m, q)) if all(levels[i] <= k for i in mi))))
        v_sub[k] = spaces
        ok = True
        for q in range(m):
            inside = {mi for mi in basis(m, q) if all(levels[i] <= k for i in mi)}
            tgt = basis(m, q + 1)
            src = basis(m, q)
            for (r, c), v in dbar[q].nonzero_entries():
                if src[c] in inside and any(levels[i] > k for i in tgt[r]):
                    ok = False
        v_cx[k] = ok

    def top(mi):
        return max((levels[i] for i in mi), default=0)

    graded_ok = True
    for q in range(m):
        src, tgt = basis(m, q), basis(m, q + 1)
        diff = {}
        for (r, c), v in dbar[q].nonzero_entries():
            if top(tgt[r]) == top(src[c]):
                diff[r, c] = v
        for (r, c), v in wedge[q].nonzero_entries():
            if top(tgt[r]) == top(src[c]):
                diff[r, c] = diff.get((r, c), ZERO) - v
        if any(diff.values()):
            graded_ok = False

    return SpectralPages(chain, tuple(tuple(v) for v in vecs), tuple(levels), s,
                         {w: len(v) for w, v in sorted(weights.items())}, e0, wb, e1,
                         ann_ok, filtration_ok, matches, v_sub, v_cx, graded_ok)


# ---------------------------------------------------------------------------
# bidegree (1,1)
# ---------------------------------------------------------------------------

def _closed_11_matrix(g, split, theta):
    m = split.m
    d1 = structure_terms(g, split)
    tc = _theta_coeffs(theta, split)
    images = [_twisted_image(mi, d1, tc) for mi in bidegree_basis(m, 1, 1)]
    return _block(images, basis(g.dim, 3))


def closed_11_forms(g: LieAlgebra, j, theta) -> list:
    """Basis (hodge mode) of ``ker d_theta`` on ``Lambda^{1,1}``."""
    theta = as_theta(g, theta)
    split = _split_of(g, j)
    src = bidegree_basis(split.m, 1, 1)
    ker = kernel_basis(_closed_11_matrix(g, split, theta))
    return [ExtForm(g.dim, 2, zip(src, v), HODGE) for v in ker.vectors]


def bott_chern_11_dim(g: LieAlgebra, j, theta) -> int:
    """``dim(ker d_theta on Lambda^{1,1}) - rank(d_theta d^c_theta: Lambda^0 -> Lambda^{1,1})``."""
    theta = as_theta(g, theta)
    split = _split_of(g, j)
    mat = _closed_11_matrix(g, split, theta)
    pot = to_hodge(potential_form(g, split, theta), split)
    if pot.bidegrees() - {(1, 1)}:
        raise WrongBidegree("d_theta d^c_theta (1) is not a (1,1)-form")
    return mat.cols - rank(mat) - (0 if pot.is_zero() else 1)


class HodgeChase(NamedTuple):
    """``tau`` solves ``omega = d_theta tau``, ``d_theta(I tau) = 0``.

    ``constant`` is ``f`` with ``omega = f d_theta d^c_theta(1)`` (then
    ``tau = d^c_theta f = -f theta^c``); it is ``None`` when ``tau`` came
    from the general linear solve instead.
    """

    tau: ExtForm
    constant: object


def _ratio(target: ExtForm, base: ExtForm):
    """``f`` with ``target = f * base``, or ``None``."""
    if target.is_zero():
        return ZERO
    if base.is_zero():
        return None
    mi = next(iter(base.terms))
    f = target.coefficient(mi) / base.terms[mi]
    return f if base.scale(f) == target else None


def hodge_chase(g: LieAlgebra, j, theta, omega: ExtForm) -> HodgeChase:
    """Find ``tau`` for a ``d_theta``-closed (1,1)-form ``omega``.

    Raises NotClosed, WrongBidegree, or HodgeChaseFailure when no ``tau``
    exists (impossible for nilpotent ``g``, integrable ``I``, ``theta != 0``).
    """
    theta = as_theta(g, theta)
    split = _split_of(g, j)
    if omega.degree != 2:
        raise WrongBidegree("omega must be a 2-form")
    om = to_real(omega, split)
    if set(bidegree_split(om, split)) - {(1, 1)}:
        raise WrongBidegree("omega is not a (1,1)-form")
    if not apply_d(g, om, theta).is_zero():
        raise NotClosed("d_theta omega != 0")
    cs = split.complex_structure
    f = _ratio(om, potential_form(g, split, theta))
    if f is not None:
        tau = theta_c(theta, split).scale(-f)
        constant = f
    else:
        tau = _general_tau(g, cs, theta, om)
        constant = None
    if apply_d(g, tau, theta) != om or not apply_d(g, apply_I(tau, cs), theta).is_zero():
        raise HodgeChaseFailure("residuals of the Hodge-chasing system are nonzero")
    return HodgeChase(tau if omega.mode == REAL else to_hodge(tau, split), constant)


def _general_tau(g, cs, theta, om):
    op = twisted_d(g, theta, check=False)
    d1 = op.blocks[1]
    minus_j = cs.matrix.scale(-1)
    # coefficient vector of I tau is (-J)^T c for tau = sum c_i e^i
    system = Matrix.vstack([d1, d1 @ minus_j.transpose()])
    rhs = list(om.vector()) + [ZERO] * d1.rows
    sol = solve(system, rhs)
    if sol is None:
        raise HodgeChaseFailure("no 1-form tau with omega = d_theta tau and d_theta(I tau) = 0")
    return ExtForm.covector(sol)

"""Chevalley-Eilenberg differentials as explicit per-degree matrices.

On generators ``d e^c = -sum_{a<b} c_ab^c e^a ^ e^b`` (so that
``d lambda(x, y) = -lambda([x, y])``), extended as a graded derivation.  The
twisted differential is ``d_theta = d - theta ^ .`` (left multiplication).
In hodge mode the same formulas run on the complex constants of the
adapted frame, which lets every block be cut into bidegrees.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import NotIntegrable, ThetaNotClosed
from .exterior import (HODGE, REAL, ExtForm, apply_I, basis, bidegree_basis,
                       bidegree_of, to_hodge, to_real)
from .lie import HodgeSplit, LieAlgebra, hodge_constants
from .linalg import Matrix
from .scalars import ZERO, I_UNIT, gauss

__all__ = [
    "DifferentialOperator", "as_theta", "structure_terms", "d_image", "ce_blocks",
    "wedge_blocks", "chevalley_d",
    "twisted_d", "hodge_components", "dolbeault_row", "dc_operator", "theta_c",
    "apply_d", "potential_form",
]

KINDS = ("d", "d_theta", "del", "delbar", "del_theta", "delbar_theta", "dc", "dc_theta")


@dataclass(frozen=True)
class DifferentialOperator:
    """Blocks of a differential keyed by degree ``k`` or bidegree ``(p, q)``.

    ``blocks[key]`` maps the colex basis of the source (bi)degree to that of
    the target.  ``step`` is the bidegree shift for bidegree-keyed kinds.
    """

    kind: str
    mode: str
    dim: int
    blocks: dict = field(repr=False)
    theta: ExtForm | None = None
    split: HodgeSplit | None = field(default=None, repr=False, compare=False)
    algebra: LieAlgebra | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError("unknown operator kind %r" % self.kind)

    @property
    def bigraded(self) -> bool:
        return self.kind in ("del", "delbar", "del_theta", "delbar_theta")

    @property
    def step(self):
        if self.kind.startswith("delbar"):
            return (0, 1)
        if self.kind.startswith("del"):
            return (1, 0)
        return None

    def target(self, key):
        if self.bigraded:
            return (key[0] + self.step[0], key[1] + self.step[1])
        return key + 1

    def _source_basis(self, key):
        if self.bigraded:
            return bidegree_basis(self.dim // 2, *key)
        return basis(self.dim, key)

    def apply(self, f: ExtForm) -> ExtForm:
        """Apply to a form; the result is returned in ``f``'s mode."""
        orig = f.mode
        if f.mode != self.mode:
            if self.split is None:
                raise ValueError("operator has no HodgeSplit to convert %s-mode input" % f.mode)
            f = to_hodge(f, self.split) if self.mode == HODGE else to_real(f, self.split)
        if self.bigraded:
            out = ExtForm.zero(self.dim, f.degree + 1, self.mode)
            by_bd = {}
            for mi, c in f.terms.items():
                by_bd.setdefault(bidegree_of(mi, self.dim // 2), {})[mi] = c
            for key, terms in by_bd.items():
                out = out + self._apply_block(key, terms)
        else:
            out = self._apply_block(f.degree, f.terms)
        if orig != self.mode:
            out = to_hodge(out, self.split) if orig == HODGE else to_real(out, self.split)
        return out

    def _apply_block(self, key, terms) -> ExtForm:
        src = self._source_basis(key)
        tgt = self._source_basis(self.target(key))
        deg = len(src[0]) if src else 0
        block = self.blocks.get(key)
        if block is None or not tgt:
            return ExtForm.zero(self.dim, deg + 1, self.mode)
        pos = {mi: k for k, mi in enumerate(src)}
        vec = [ZERO] * len(src)
        for mi, c in terms.items():
            vec[pos[mi]] = c
        return ExtForm(self.dim, deg + 1, zip(tgt, block @ vec), self.mode)

    def compositions(self):
        """``(key, next_block @ block)`` for each consecutive pair."""
        for key, blk in sorted(self.blocks.items()):
            nxt = self.blocks.get(self.target(key))
            if nxt is not None:
                yield key, nxt @ blk

    def is_square_zero(self) -> bool:
        return all(prod.is_zero() for _, prod in self.compositions())


# ---------------------------------------------------------------------------
# generator data
# ---------------------------------------------------------------------------

@lru_cache(maxsize=64)
def structure_terms(g: LieAlgebra, split: HodgeSplit | None = None) -> tuple:
    """``d`` on generators: entry ``c`` lists ``(a, b, coeff)``, ``a < b``."""
    n = g.dim
    if split is None:
        out = [[] for _ in range(n)]
        for a, b, c, v in g.bracket_terms():
            out[c].append((a, b, gauss(-v)))
    else:
        C = hodge_constants(g, split)
        out = [[] for _ in range(n)]
        for a in range(n):
            for b in range(a + 1, n):
                for c, v in enumerate(C[a][b]):
                    if v:
                        out[c].append((a, b, -v))
    return tuple(tuple(sorted(t)) for t in out)


def d_image(mi: tuple, d1: Sequence) -> dict:
    """Untwisted ``d`` of the monomial ``e^mi`` as ``{multi-index: coeff}``."""
    out = {}
    for t, i in enumerate(mi):
        rest = mi[:t] + mi[t + 1:]
        for a, b, v in d1[i]:
            if a in rest or b in rest:
                continue
            # e^{i_1..}(e^a e^b)e^{..} = sign * e^a e^b e^rest, then sort
            par = t + sum(1 for r in rest if r < a) + sum(1 for r in rest if r < b)
            new = tuple(sorted(rest + (a, b)))
            w = -v if par & 1 else v
            w = out.get(new, ZERO) + w
            if w:
                out[new] = w
            else:
                out.pop(new, None)
    return out


def _wedge_left(mi: tuple, coeffs: Sequence, out: dict, scale=1):
    """Accumulate ``scale * (sum_j coeffs[j] e^j) ^ e^mi`` into ``out``."""
    for j, t in enumerate(coeffs):
        if not t or j in mi:
            continue
        before = sum(1 for r in mi if r < j)
        new = mi[:before] + (j,) + mi[before:]
        w = t * scale
        if before & 1:
            w = -w
        w = out.get(new, ZERO) + w
        if w:
            out[new] = w
        else:
            out.pop(new, None)


def _twisted_image(mi, d1, theta_coeffs):
    img = d_image(mi, d1)
    if theta_coeffs is not None:
        _wedge_left(mi, theta_coeffs, img, -1)
    return img


def _block(images: list, target_basis: Sequence) -> Matrix:
    pos = {mi: k for k, mi in enumerate(target_basis)}
    entries = {}
    for col, img in enumerate(images):
        for mi, v in img.items():
            entries[pos[mi], col] = v
    return Matrix.from_sparse(len(target_basis), len(images), entries)


# ---------------------------------------------------------------------------
# public builders
# ---------------------------------------------------------------------------

def as_theta(g: LieAlgebra, theta, check_closed: bool = True) -> ExtForm:
    """Normalize ``theta`` to a real-mode real 1-form and check ``d theta = 0``."""
    if theta is None:
        theta = [0] * g.dim
    if not isinstance(theta, ExtForm):
        theta = ExtForm.covector([gauss(x) for x in theta])
    if theta.mode != REAL or theta.degree != 1 or theta.dim != g.dim:
        raise ValueError("theta must be a real-mode 1-form on a %d-dimensional algebra" % g.dim)
    if not theta.is_real():
        raise ValueError("theta must have real coefficients")
    if check_closed and not theta.is_zero():
        d1 = structure_terms(g)
        img = {}
        for (i,), c in theta.terms.items():
            for mi, v in d_image((i,), d1).items():
                img[mi] = img.get(mi, ZERO) + c * v
        if any(img.values()):
            raise ThetaNotClosed("d theta != 0")
    return theta


def _theta_coeffs(theta: ExtForm, split: HodgeSplit | None):
    if theta is None or theta.is_zero():
        return None
    if split is None:
        return theta.covector_coeffs()
    return to_hodge(theta, split).covector_coeffs()


def ce_blocks(n: int, d1: Sequence, theta_coeffs=None, degrees=None) -> dict:
    """Blocks ``{k: Lambda^k -> Lambda^{k+1}}`` of ``d - theta ^`` for generator data ``d1``."""
    blocks = {}
    for k in (range(n) if degrees is None else degrees):
        images = [_twisted_image(mi, d1, theta_coeffs) for mi in basis(n, k)]
        blocks[k] = _block(images, basis(n, k + 1))
    return blocks


def wedge_blocks(n: int, coeffs: Sequence, scale=1) -> dict:
    """Blocks of ``scale * e ^`` on ``Lambda^*(C^n)`` for the covector ``coeffs``."""
    blocks = {}
    for k in range(n):
        images = []
        for mi in basis(n, k):
            img = {}
            _wedge_left(mi, coeffs, img, scale)
            images.append(img)
        blocks[k] = _block(images, basis(n, k + 1))
    return blocks


def _degree_blocks(g, split, theta_coeffs):
    return ce_blocks(g.dim, structure_terms(g, split), theta_coeffs)


def _check_square(op: DifferentialOperator):
    for key, prod in op.compositions():
        if not prod.is_zero():
            raise ArithmeticError("%s^2 != 0 at %s" % (op.kind, key))


def chevalley_d(g: LieAlgebra, split: HodgeSplit | None = None,
                check: bool = True) -> DifferentialOperator:
    """Untwisted ``d``; real mode unless a HodgeSplit is given."""
    op = DifferentialOperator("d", HODGE if split else REAL, g.dim,
                              _degree_blocks(g, split, None), None, split, g)
    if check:
        _check_square(op)
    return op


def twisted_d(g: LieAlgebra, theta, split: HodgeSplit | None = None,
              check: bool = True) -> DifferentialOperator:
    """``d_theta = d - theta ^``; raises ThetaNotClosed."""
    theta = as_theta(g, theta)
    op = DifferentialOperator("d_theta", HODGE if split else REAL, g.dim,
                              _degree_blocks(g, split, _theta_coeffs(theta, split)),
                              theta, split, g)
    if check:
        _check_square(op)
    return op


def _bigraded_images(g, split, theta, keys):
    """Images of ``d_theta`` on Hodge monomials of the given bidegrees, cut in two.

    Returns ``{(p, q): (del_images, delbar_images)}``; anything landing outside
    ``(p+1, q)`` and ``(p, q+1)`` raises NotIntegrable.
    """
    m = split.m
    d1 = structure_terms(g, split)
    tc = _theta_coeffs(theta, split)
    out = {}
    for p, q in keys:
        dels, delbars = [], []
        for mi in bidegree_basis(m, p, q):
            a, b = {}, {}
            for t, v in _twisted_image(mi, d1, tc).items():
                bd = bidegree_of(t, m)
                if bd == (p + 1, q):
                    a[t] = v
                elif bd == (p, q + 1):
                    b[t] = v
                else:
                    raise NotIntegrable("d leaks from (%d,%d) into %s" % (p, q, bd))
            dels.append(a)
            delbars.append(b)
        out[p, q] = (dels, delbars)
    return out


def hodge_components(dop: DifferentialOperator, split: HodgeSplit | None = None,
                     check: bool = True):
    """``(del, delbar)`` of a ``d`` or ``d_theta`` operator (twisted when it carries theta).

    Any component outside bidegrees ``(1, 0)`` and ``(0, 1)`` raises NotIntegrable.
    """
    if dop.kind not in ("d", "d_theta") or dop.algebra is None:
        raise ValueError("hodge_components needs an operator from chevalley_d or twisted_d")
    split = split or dop.split
    if split is None:
        raise ValueError("a HodgeSplit is required")
    g, theta = dop.algebra, dop.theta
    twisted = theta is not None and not theta.is_zero()
    m = split.m
    keys = [(p, q) for p in range(m + 1) for q in range(m + 1)]
    imgs = _bigraded_images(g, split, theta, keys)
    del_blocks, delbar_blocks = {}, {}
    for (p, q), (dels, delbars) in imgs.items():
        if p < m:
            del_blocks[p, q] = _block(dels, bidegree_basis(m, p + 1, q))
        if q < m:
            delbar_blocks[p, q] = _block(delbars, bidegree_basis(m, p, q + 1))
    suffix = "_theta" if twisted else ""
    d_op = DifferentialOperator("del" + suffix, HODGE, g.dim, del_blocks, theta, split, g)
    db_op = DifferentialOperator("delbar" + suffix, HODGE, g.dim, delbar_blocks, theta, split, g)
    if check:
        _check_square(d_op)
        _check_square(db_op)
    return d_op, db_op


def dolbeault_row(g: LieAlgebra, split: HodgeSplit, theta=None, p: int = 0) -> list:
    """Blocks of ``delbar_theta`` on ``Lambda^{p,q}``, ``q = 0..m-1``."""
    theta = as_theta(g, theta)
    m = split.m
    imgs = _bigraded_images(g, split, theta, [(p, q) for q in range(m)])
    return [_block(imgs[p, q][1], bidegree_basis(m, p, q + 1)) for q in range(m)]


def theta_c(theta: ExtForm, split: HodgeSplit) -> ExtForm:
    """``I theta`` as a real-mode form; equals ``i(theta^{0,1} - theta^{1,0})``."""
    return apply_I(theta, split.complex_structure)


def dc_operator(g: LieAlgebra, split: HodgeSplit, theta=None,
                check: bool = True) -> DifferentialOperator:
    """``d^c_theta = i(delbar - del) - theta^c ^`` in hodge mode, keyed by degree."""
    theta = as_theta(g, theta) if theta is not None else None
    n, m = g.dim, split.m
    d1 = structure_terms(g, split)
    tcc = None
    if theta is not None and not theta.is_zero():
        tcc = to_hodge(theta_c(theta, split), split).covector_coeffs()
    blocks = {}
    for k in range(n):
        images = []
        for mi in basis(n, k):
            p, q = bidegree_of(mi, m)
            img = {}
            for t, v in d_image(mi, d1).items():
                bd = bidegree_of(t, m)
                if bd == (p, q + 1):
                    img[t] = I_UNIT * v
                elif bd == (p + 1, q):
                    img[t] = -I_UNIT * v
                else:
                    raise NotIntegrable("d leaks from (%d,%d) into %s" % (p, q, bd))
            if tcc is not None:
                _wedge_left(mi, tcc, img, -1)
            images.append(img)
        blocks[k] = _block(images, basis(n, k + 1))
    twisted = tcc is not None
    op = DifferentialOperator("dc_theta" if twisted else "dc", HODGE, n, blocks, theta, split, g)
    if check:
        _check_square(op)
    return op


def apply_d(g: LieAlgebra, f: ExtForm, theta=None, split: HodgeSplit | None = None) -> ExtForm:
    """``d_theta f`` without materializing blocks (``theta=None`` gives ``d``)."""
    if f.mode == HODGE and split is None:
        raise ValueError("hodge-mode forms need their HodgeSplit")
    sp = split if f.mode == HODGE else None
    d1 = structure_terms(g, sp)
    tc = None
    if theta is not None:
        theta = as_theta(g, theta)
        tc = _theta_coeffs(theta, sp)
    out = {}
    for mi, c in f.terms.items():
        for t, v in _twisted_image(mi, d1, tc).items():
            out[t] = out.get(t, ZERO) + c * v
    return ExtForm(f.dim, f.degree + 1, out, f.mode)


def potential_form(g: LieAlgebra, split: HodgeSplit, theta) -> ExtForm:
    """``d_theta d^c_theta (1) = d_theta(-theta^c)`` as a real-mode 2-form."""
    theta = as_theta(g, theta)
    return apply_d(g, -theta_c(theta, split), theta)

"""Exterior forms on ``g_C^*`` stored sparsely by strictly increasing multi-index.

Two coordinate systems are supported:

``real``
    monomials in the real dual basis ``e^0..e^{n-1}`` (coefficients may still
    be complex, e.g. for a (1,0)-component of a real form);
``hodge``
    monomials in the coframe of a :class:`~nilcoh.lie.HodgeSplit`: indices
    ``0..m-1`` are the (1,0)-covectors, ``m..2m-1`` their conjugates, so the
    bidegree of a monomial is read off its indices.

Wedge products follow the determinant convention
``(a^b)(x, y) = a(x) b(y) - a(y) b(x)``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import BasisModeMismatch
from .linalg import Matrix
from .scalars import ZERO, ONE, I_UNIT, GaussianRational, format_scalar, gauss, parse_scalar

__all__ = [
    "REAL", "HODGE", "basis", "basis_index", "bidegree_basis", "sort_sign", "ExtForm",
    "wedge", "evaluate", "conjugate", "to_hodge", "to_real", "bidegree_split",
    "bidegree_of", "pullback", "apply_I", "format_form", "parse_form",
]

REAL = "real"
HODGE = "hodge"

_I_POW = (ONE, I_UNIT, -ONE, -I_UNIT)


@lru_cache(maxsize=None)
def basis(n: int, k: int) -> tuple:
    """Degree-``k`` multi-indices on ``n`` letters in colexicographic order."""
    return tuple(sorted(combinations(range(n), k), key=lambda t: t[::-1]))


@lru_cache(maxsize=None)
def basis_index(n: int, k: int) -> dict:
    return {mi: pos for pos, mi in enumerate(basis(n, k))}


@lru_cache(maxsize=None)
def bidegree_basis(m: int, p: int, q: int) -> tuple:
    """Hodge-mode multi-indices of bidegree ``(p, q)`` (colex order kept)."""
    return tuple(mi for mi in basis(2 * m, p + q) if sum(1 for i in mi if i < m) == p)


def bidegree_of(mi: Sequence[int], m: int) -> tuple:
    p = sum(1 for i in mi if i < m)
    return (p, len(mi) - p)


def sort_sign(seq: Sequence[int]):
    """``(sign, sorted tuple)`` of a sequence of indices, or ``(0, None)`` on a repeat."""
    s = list(seq)
    if len(set(s)) != len(s):
        return 0, None
    inv = 0
    for a in range(len(s)):
        for b in range(a + 1, len(s)):
            if s[a] > s[b]:
                inv += 1
    return (-1 if inv & 1 else 1), tuple(sorted(s))


class ExtForm:
    """Homogeneous exterior form; immutable by convention.

    ``terms`` maps multi-index tuples to nonzero :class:`GaussianRational`
    coefficients.  ``m`` is the number of (1,0)-covectors in hodge mode.
    """

    __slots__ = ("dim", "degree", "mode", "terms")

    def __init__(self, dim: int, degree: int, terms: Mapping | Iterable = (), mode: str = REAL):
        if mode not in (REAL, HODGE):
            raise ValueError("mode must be 'real' or 'hodge'")
        if mode == HODGE and dim % 2:
            raise ValueError("hodge mode needs an even dimension")
        self.dim = dim
        self.degree = degree
        self.mode = mode
        clean = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for mi, c in items:
            mi = tuple(mi)
            if len(mi) != degree or any(a >= b for a, b in zip(mi, mi[1:])):
                raise ValueError("multi-index %r is not strictly increasing of length %d"
                                 % (mi, degree))
            if mi and not (0 <= mi[0] and mi[-1] < dim):
                raise ValueError("multi-index %r out of range for dimension %d" % (mi, dim))
            c = gauss(c)
            if c:
                clean[mi] = clean.get(mi, ZERO) + c
                if not clean[mi]:
                    del clean[mi]
        self.terms = clean

    # -- constructors -------------------------------------------------------
    @classmethod
    def _trusted(cls, dim, degree, terms, mode):
        f = object.__new__(cls)
        f.dim, f.degree, f.mode, f.terms = dim, degree, mode, terms
        return f

    @classmethod
    def zero(cls, dim: int, degree: int, mode: str = REAL) -> "ExtForm":
        return cls._trusted(dim, degree, {}, mode)

    @classmethod
    def constant(cls, dim: int, c=1, mode: str = REAL) -> "ExtForm":
        return cls(dim, 0, {(): c}, mode)

    @classmethod
    def covector(cls, coeffs: Sequence, mode: str = REAL) -> "ExtForm":
        return cls(len(coeffs), 1, {(i,): c for i, c in enumerate(coeffs)}, mode)

    @classmethod
    def from_vector(cls, dim: int, degree: int, vec: Sequence, mode: str = REAL) -> "ExtForm":
        """Inverse of :meth:`vector` (colex coordinates)."""
        b = basis(dim, degree)
        if len(vec) != len(b):
            raise ValueError("expected %d coordinates, got %d" % (len(b), len(vec)))
        return cls(dim, degree, zip(b, vec), mode)

    # -- coordinates --------------------------------------------------------
    @property
    def m(self) -> int:
        return self.dim // 2

    def vector(self) -> list:
        idx = basis_index(self.dim, self.degree)
        v = [ZERO] * len(idx)
        for mi, c in self.terms.items():
            v[idx[mi]] = c
        return v

    def coefficient(self, mi: Sequence[int]):
        return self.terms.get(tuple(mi), ZERO)

    def covector_coeffs(self) -> list:
        if self.degree != 1:
            raise ValueError("not a 1-form")
        return [self.terms.get((i,), ZERO) for i in range(self.dim)]

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        """Real coefficients in real mode (meaningless in hodge mode)."""
        return self.mode == REAL and all(not c.im for c in self.terms.values())

    def bidegrees(self) -> set:
        if self.mode != HODGE:
            raise BasisModeMismatch("bidegrees are read in hodge mode")
        return {bidegree_of(mi, self.m) for mi in self.terms}

    # -- linear structure ---------------------------------------------------
    def _compatible(self, other: "ExtForm"):
        if not isinstance(other, ExtForm):
            raise TypeError("expected ExtForm")
        if self.mode != other.mode:
            raise BasisModeMismatch("cannot combine %s-mode and %s-mode forms" % (self.mode, other.mode))
        if self.dim != other.dim:
            raise ValueError("forms live on different dimensions")

    def __add__(self, other: "ExtForm") -> "ExtForm":
        self._compatible(other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of degree %d and %d" % (self.degree, other.degree))
        terms = dict(self.terms)
        for mi, c in other.terms.items():
            v = terms.get(mi, ZERO) + c
            if v:
                terms[mi] = v
            else:
                terms.pop(mi, None)
        return ExtForm._trusted(self.dim, self.degree, terms, self.mode)

    def __neg__(self) -> "ExtForm":
        return ExtForm._trusted(self.dim, self.degree, {k: -v for k, v in self.terms.items()},
                                self.mode)

    def __sub__(self, other: "ExtForm") -> "ExtForm":
        return self + (-other)

    def scale(self, c) -> "ExtForm":
        c = gauss(c)
        if not c:
            return ExtForm.zero(self.dim, self.degree, self.mode)
        return ExtForm._trusted(self.dim, self.degree, {k: c * v for k, v in self.terms.items()},
                                self.mode)

    def __rmul__(self, c) -> "ExtForm":
        return self.scale(c)

    def __xor__(self, other: "ExtForm") -> "ExtForm":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExtForm):
            return NotImplemented
        return (self.dim, self.degree, self.mode, self.terms) == \
            (other.dim, other.degree, other.mode, other.terms)

    def __hash__(self):
        return hash((self.dim, self.degree, self.mode, frozenset(self.terms.items())))

    def __repr__(self):
        return "ExtForm(%s, deg=%d, %s)" % (self.mode, self.degree, format_form(self))


def wedge(a: ExtForm, b: ExtForm) -> ExtForm:
    a._compatible(b)
    terms = {}
    for i, x in a.terms.items():
        si = set(i)
        for j, y in b.terms.items():
            if si.intersection(j):
                continue
            inv = sum(1 for p in i for q in j if p > q)
            mi = tuple(sorted(i + j))
            v = x * y
            if inv & 1:
                v = -v
            v = terms.get(mi, ZERO) + v
            if v:
                terms[mi] = v
            else:
                terms.pop(mi, None)
    return ExtForm._trusted(a.dim, a.degree + b.degree, terms, a.mode)


def _det(rows: list) -> GaussianRational:
    a = [list(r) for r in rows]
    n = len(a)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c]
        inv = 1 / a[c][c]
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = f * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def evaluate(f: ExtForm, vectors: Sequence[Sequence]):
    """``f(x_1, ..., x_k)`` with vectors given in the coordinates of ``f``'s mode."""
    if len(vectors) != f.degree:
        raise ValueError("a %d-form takes %d arguments" % (f.degree, f.degree))
    vecs = [[gauss(x) for x in v] for v in vectors]
    total = ZERO
    for mi, c in f.terms.items():
        total = total + c * _det([[v[i] for v in vecs] for i in mi])
    return total


def _require_split(split):
    if split is None or not hasattr(split, "coframe"):
        raise TypeError("a HodgeSplit is required")


def _image(f: ExtForm, images: list, mode: str) -> ExtForm:
    """Replace each basis 1-form ``k`` by the 1-form ``images[k]`` (an ExtForm)."""
    out = ExtForm.zero(f.dim, f.degree, mode)
    cache = {}
    for mi, c in f.terms.items():
        acc = ExtForm.constant(f.dim, 1, mode)
        for t, idx in enumerate(mi):
            key = mi[: t + 1]
            if key in cache:
                acc = cache[key]
            else:
                acc = wedge(acc, images[idx])
                cache[key] = acc
        out = out + acc.scale(c)
    return out


def to_hodge(f: ExtForm, split) -> ExtForm:
    """Rewrite a real-mode form in the adapted coframe."""
    if f.mode == HODGE:
        return f
    _require_split(split)
    n = f.dim
    # e^i = sum_alpha P[i][alpha] phi^alpha since phi^alpha(P_beta) = delta
    images = [ExtForm(n, 1, {(a,): split.frame[i, a] for a in range(n)}, HODGE) for i in range(n)]
    return _image(f, images, HODGE)


def to_real(f: ExtForm, split) -> ExtForm:
    if f.mode == REAL:
        return f
    _require_split(split)
    n = f.dim
    images = [ExtForm(n, 1, {(i,): split.coframe[a, i] for i in range(n)}, REAL) for a in range(n)]
    return _image(f, images, REAL)


def conjugate(f: ExtForm) -> ExtForm:
    """Complex conjugate; in hodge mode ``conj(phi^a) = phi^{a+m}`` and vice versa."""
    if f.mode == REAL:
        return ExtForm._trusted(f.dim, f.degree,
                                {k: v.conjugate() for k, v in f.terms.items()}, REAL)
    m = f.m
    terms = {}
    for mi, c in f.terms.items():
        sign, new = sort_sign([i + m if i < m else i - m for i in mi])
        terms[new] = c.conjugate() if sign > 0 else -c.conjugate()
    return ExtForm._trusted(f.dim, f.degree, terms, HODGE)


def bidegree_split(f: ExtForm, split=None) -> dict:
    """``{(p, q): component}``; components are returned in ``f``'s own mode."""
    h = to_hodge(f, split) if f.mode == REAL else f
    parts = {}
    for mi, c in h.terms.items():
        parts.setdefault(bidegree_of(mi, h.m), {})[mi] = c
    out = {}
    for bd, terms in sorted(parts.items()):
        comp = ExtForm._trusted(h.dim, h.degree, terms, HODGE)
        out[bd] = to_real(comp, split) if f.mode == REAL else comp
    return out


def pullback(f: ExtForm, a: Matrix) -> ExtForm:
    """Pullback by the endomorphism ``a`` of ``g`` (real mode): ``(a^*f)(x..) = f(a x, ..)``."""
    if f.mode != REAL:
        raise BasisModeMismatch("pullback acts on real-mode forms")
    n = f.dim
    images = [ExtForm(n, 1, {(k,): a[i, k] for k in range(n)}, REAL) for i in range(n)]
    return _image(f, images, REAL)


def apply_I(f: ExtForm, j) -> ExtForm:
    """``(I f)(x_1, ..) = f(I^{-1} x_1, ..)``; equals ``i^{q-p}`` on ``(p, q)``-forms.

    ``j`` is a ComplexStructure for real-mode forms (a HodgeSplit works for
    either mode).
    """
    if f.mode == HODGE:
        m = f.m
        terms = {}
        for mi, c in f.terms.items():
            p, q = bidegree_of(mi, m)
            terms[mi] = c * _I_POW[(q - p) % 4]
        return ExtForm._trusted(f.dim, f.degree, terms, HODGE)
    cs = getattr(j, "complex_structure", j)
    return pullback(f, cs.matrix.scale(-1))


# -- text -------------------------------------------------------------------

def _names_for(f: ExtForm, names):
    if names is not None:
        return list(names)
    if f.mode == HODGE:
        m = f.m
        return ["phi%d" % (k + 1) for k in range(m)] + ["phibar%d" % (k + 1) for k in range(m)]
    return ["e%d" % (k + 1) for k in range(f.dim)]


def format_form(f: ExtForm, names: Sequence[str] | None = None) -> str:
    """``c1 a^b c2 c^d`` in colex order; the constant monomial prints as ``1``; zero as ``0``."""
    if not f.terms:
        return "0"
    nm = _names_for(f, names)
    idx = basis_index(f.dim, f.degree)
    parts = []
    for mi in sorted(f.terms, key=idx.__getitem__):
        mono = "^".join(nm[i] for i in mi) if mi else "1"
        parts.append("%s %s" % (format_scalar(f.terms[mi]), mono))
    return " ".join(parts)


def parse_form(text: str, names: Sequence[str], degree: int | None = None,
               mode: str = REAL) -> ExtForm:
    """Inverse of :func:`format_form`; monomials need not be sorted."""
    names = list(names)
    pos = {nm: k for k, nm in enumerate(names)}
    toks = text.split()
    if toks == ["0"]:
        if degree is None:
            raise ValueError("the zero form needs an explicit degree")
        return ExtForm.zero(len(names), degree, mode)
    if not toks or len(toks) % 2:
        raise ValueError("form text must be pairs of 'coefficient monomial'")
    terms = {}
    deg = degree
    for k in range(0, len(toks), 2):
        c = parse_scalar(toks[k])
        mono = toks[k + 1]
        if mono == "1":
            seq = []
        else:
            seq = []
            for nm in mono.split("^"):
                if nm not in pos:
                    raise ValueError("unknown basis name %r" % nm)
                seq.append(pos[nm])
        if deg is None:
            deg = len(seq)
        if len(seq) != deg:
            raise ValueError("monomial %r has degree %d, expected %d" % (mono, len(seq), deg))
        sign, mi = sort_sign(seq)
        if sign == 0:
            continue
        terms[mi] = terms.get(mi, ZERO) + (c if sign > 0 else -c)
    return ExtForm(len(names), deg, terms, mode)

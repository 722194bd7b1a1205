"""Lie algebras by structure constants, complex structures and their eigenspaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .errors import (AntisymmetryViolation, DimensionTooLarge, InvalidComplexStructure,
                     JacobiViolation, NotIntegrable, NotNilpotent)
from .linalg import Matrix, SubspaceBasis, inverse, kernel_basis
from .scalars import ZERO, I_UNIT, GaussianRational, gauss, parse_rational

__all__ = [
    "MAX_DIM", "LieAlgebra", "validate_lie", "lower_central_series", "is_nilpotent",
    "center", "ComplexStructure", "HodgeSplit", "hodge_split", "is_integrable",
    "FiltrationChain", "antiholo_central_series",
]

MAX_DIM = 16


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, GaussianRational):
        if x.im:
            raise ValueError("structure constants must be real")
        return x.re
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError("cannot use %r as a rational" % (x,))


@dataclass(frozen=True)
class LieAlgebra:
    """Real Lie algebra with ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Both orientations of every bracket are stored; antisymmetry and the
    Jacobi identity are verified on construction.
    """

    names: tuple
    constants: tuple = field(repr=False)

    def __post_init__(self):
        n = len(self.names)
        if n > MAX_DIM:
            raise DimensionTooLarge("dimension %d exceeds the supported maximum %d" % (n, MAX_DIM))
        if len(set(self.names)) != n:
            raise ValueError("basis names must be distinct")
        c = self.constants
        if len(c) != n or any(len(r) != n or any(len(s) != n for s in r) for r in c):
            raise ValueError("structure constants must be an n x n x n array")
        object.__setattr__(self, "constants",
                           tuple(tuple(tuple(_frac(x) for x in s) for s in r) for r in c))
        _check_lie(self.constants, self.names)
        object.__setattr__(self, "_hash", hash((self.names, self.constants)))

    def __hash__(self):
        return self._hash

    @property
    def dim(self) -> int:
        return len(self.names)

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: Mapping) -> "LieAlgebra":
        """Build from ``{(a, b): {c: coeff}}`` with names or indices; [b, a] is implied."""
        names = tuple(names)
        idx = {nm: k for k, nm in enumerate(names)}

        def pos(x):
            return x if isinstance(x, int) else idx[x]

        n = len(names)
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (a, b), combo in brackets.items():
            i, j = pos(a), pos(b)
            for k, v in combo.items():
                v = _frac(v)
                c[i][j][pos(k)] += v
                c[j][i][pos(k)] -= v
        return cls(names, c)

    @classmethod
    def abelian(cls, n: int, names: Sequence[str] | None = None) -> "LieAlgebra":
        names = tuple(names) if names else tuple("e%d" % (k + 1) for k in range(n))
        z = Fraction(0)
        return cls(names, tuple(tuple((z,) * n for _ in range(n)) for _ in range(n)))

    def index(self, name: str) -> int:
        return self.names.index(name)

    def bracket_terms(self):
        """Nonzero ``(i, j, k, c)`` with ``i < j``."""
        n = self.dim
        for i, j in combinations(range(n), 2):
            for k, v in enumerate(self.constants[i][j]):
                if v:
                    yield i, j, k, v

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """Bracket of two coefficient vectors (real or complexified)."""
        n = self.dim
        x = [gauss(a) for a in x]
        y = [gauss(b) for b in y]
        out = [ZERO] * n
        for i, j, k, v in self.bracket_terms():
            w = x[i] * y[j] - x[j] * y[i]
            if w:
                out[k] = out[k] + w * v
        return tuple(out)

    def is_abelian(self) -> bool:
        return not any(True for _ in self.bracket_terms())


def _check_lie(c, names):
    n = len(names)
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    raise AntisymmetryViolation(i, j, k, (names[i], names[j], names[k]))
    nz = [[[(l, v) for l, v in enumerate(c[i][j]) if v] for j in range(n)] for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        # cyclic sum [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
        acc = {}
        for a, b, e in ((i, j, k), (j, k, i), (k, i, j)):
            for l, v in nz[a][b]:
                for t, w in nz[l][e]:
                    acc[t] = acc.get(t, 0) + v * w
        if any(acc.values()):
            raise JacobiViolation(i, j, k, (names[i], names[j], names[k]))


def validate_lie(names: Sequence[str], constants) -> LieAlgebra:
    """Validate raw constants ``c[i][j][k]``; raises on the first bad triple."""
    return LieAlgebra(tuple(names), constants)


def _bracket_span(g: LieAlgebra, left: Sequence, right: Sequence) -> SubspaceBasis:
    return SubspaceBasis.span(g.dim, [g.bracket(x, y) for x in left for y in right])


def lower_central_series(g: LieAlgebra) -> list:
    """``g, [g,g], [g,[g,g]], ...`` until the series stabilizes."""
    full = SubspaceBasis.full(g.dim)
    series = [full]
    while True:
        nxt = _bracket_span(g, full.vectors, series[-1].vectors)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(g: LieAlgebra) -> bool:
    return lower_central_series(g)[-1].dim == 0


def center(g: LieAlgebra) -> SubspaceBasis:
    n = g.dim
    # z is central iff sum_j z_j c[i][j][k] = 0 for all i, k
    rows = [[g.constants[i][j][k] for j in range(n)] for i in range(n) for k in range(n)]
    return kernel_basis(Matrix.from_rows(rows, n))


@dataclass(frozen=True)
class ComplexStructure:
    """Real operator ``I`` with ``I^2 = -1``; column ``j`` of ``matrix`` is ``I e_j``."""

    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if m.rows != m.cols:
            raise InvalidComplexStructure("J must be square")
        if m.rows % 2:
            raise InvalidComplexStructure("odd dimension %d admits no complex structure" % m.rows)
        if not m.is_real:
            raise InvalidComplexStructure("J must be real")
        if m @ m != Matrix.identity(m.rows).scale(-1):
            raise InvalidComplexStructure("J^2 != -1")

    @classmethod
    def from_images(cls, images: Sequence[Sequence]) -> "ComplexStructure":
        """From the list of images ``I e_j`` (each a coefficient vector)."""
        n = len(images)
        return cls(Matrix.from_rows(images, n).transpose())

    @classmethod
    def standard(cls, n: int) -> "ComplexStructure":
        """``I e_{2k} = e_{2k+1}`` (0-based)."""
        entries = {}
        for k in range(0, n, 2):
            entries[k + 1, k] = 1
            entries[k, k + 1] = -1
        return cls(Matrix.from_sparse(n, n, entries))

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply(self, v: Sequence) -> tuple:
        return self.matrix @ v


@dataclass(frozen=True)
class HodgeSplit:
    """``g_C = g^{1,0} + g^{0,1}`` together with the adapted frame.

    ``frame`` has columns ``v_1..v_m, conj(v_1)..conj(v_m)`` (the echelon
    bases of ``holo`` and ``antiholo``); ``coframe`` is its inverse, whose
    rows are the dual covectors used as the Hodge-adapted basis of forms.
    """

    holo: SubspaceBasis
    antiholo: SubspaceBasis
    complex_structure: ComplexStructure = field(repr=False)
    frame: Matrix = field(init=False, repr=False, compare=False)
    coframe: Matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.holo.ambient_dim
        if self.holo.dim * 2 != n or self.antiholo.dim * 2 != n:
            raise InvalidComplexStructure("eigenspaces do not have half dimension")
        frame = Matrix.from_rows(self.holo.vectors + self.antiholo.vectors, n).transpose()
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "coframe", inverse(frame))

    @property
    def m(self) -> int:
        return self.holo.dim

    @property
    def dim(self) -> int:
        return self.holo.ambient_dim


def hodge_split(g: LieAlgebra | None, j: ComplexStructure) -> HodgeSplit:
    """Exact +i / -i eigenspaces of ``j`` (``g`` is accepted for symmetry, unused)."""
    n = j.dim
    if g is not None and g.dim != n:
        raise InvalidComplexStructure("J has size %d but the algebra has dimension %d" % (n, g.dim))
    holo = kernel_basis(j.matrix - Matrix.identity(n).scale(I_UNIT))
    return HodgeSplit(holo, holo.conjugate(), j)


def hodge_constants(g: LieAlgebra, split: HodgeSplit) -> list:
    """Structure constants ``C[a][b][c]`` of ``g_C`` in the adapted frame."""
    n = g.dim
    cols = [split.frame.column(a) for a in range(n)]
    out = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for a, b in combinations(range(n), 2):
        br = g.bracket(cols[a], cols[b])
        if any(br):
            coords = split.coframe @ br
            out[a][b] = list(coords)
            out[b][a] = [-x for x in coords]
    return out


def is_integrable(g: LieAlgebra, j: ComplexStructure) -> bool:
    """``[g^{1,0}, g^{1,0}] <= g^{1,0}``, by exact membership."""
    split = hodge_split(g, j)
    vecs = split.holo.vectors
    return all(split.holo.contains(g.bracket(vecs[a], vecs[b]))
               for a, b in combinations(range(len(vecs)), 2))


@dataclass(frozen=True)
class FiltrationChain:
    """Central series of ``g^{0,1}`` and the annihilators in ``(g^{0,1})^*``.

    Both chains live in ``C^m``: ``w_chain`` in coordinates along the
    ``antiholo`` echelon basis, ``a_chain`` in the dual coordinates.
    """

    w_chain: tuple
    a_chain: tuple

    @property
    def length(self) -> int:
        return len(self.w_chain)


def antiholo_central_series(split: HodgeSplit, g: LieAlgebra,
                            annihilator_method: str = "kernel") -> FiltrationChain:
    """``W_0 = g^{0,1}``, ``W_k = [W_0, W_{k-1}]``; ``A_k = Ann(W_k)``."""
    m = split.m
    consts = hodge_constants(g, split)
    for a, b in combinations(range(m), 2):
        if any(consts[a][b][c] for c in range(m, 2 * m)):
            raise NotIntegrable("[g^{1,0}, g^{1,0}] leaves g^{1,0}")

    def br(x, y):
        out = [ZERO] * m
        for a in range(m):
            if not x[a]:
                continue
            for b in range(m):
                if y[b] and a != b:
                    f = x[a] * y[b]
                    row = consts[m + a][m + b]
                    for c in range(m):
                        if row[m + c]:
                            out[c] = out[c] + f * row[m + c]
        return out

    w0 = SubspaceBasis.full(m)
    chain = [w0]
    while chain[-1].dim:
        nxt = SubspaceBasis.span(m, [br(x, y) for x in w0.vectors for y in chain[-1].vectors])
        if nxt == chain[-1]:
            raise NotNilpotent("central series of g^{0,1} stabilizes at dimension %d" % nxt.dim)
        chain.append(nxt)
    annihilators = tuple(w.annihilator(annihilator_method) for w in chain)
    return FiltrationChain(tuple(chain), annihilators)

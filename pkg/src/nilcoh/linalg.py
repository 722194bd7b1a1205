"""Exact dense matrices over Q(i) and the elimination routines built on them.

Matrices are stored densely (row-major tuples of :class:`GaussianRational`)
but every elimination works on a sparse row view that skips zeros, since
exterior-algebra differentials are overwhelmingly zero.  Real matrices are
eliminated over ``Fraction`` directly, complex ones over Q(i).

Ranks first try the modular kernel in :mod:`nilcoh._kernels`; that gives a
certified lower bound, which is returned only when it is provably the exact
rank.  Otherwise exact elimination runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels
from .errors import ComposeNonzero, NotHermitian
from .scalars import ZERO, ONE, I_UNIT, GaussianRational, gauss, format_scalar

__all__ = [
    "Matrix", "SubspaceBasis", "rank", "rank_lower_bound", "kernel_basis", "solve",
    "inverse", "rref", "cohomology_dim", "complex_ranks", "symmetric_inertia",
]

# below this many entries the exact path is cheaper than building an int64 array
_MODULAR_MIN_SIZE = 400


class Matrix:
    """Immutable dense matrix of Gaussian rationals."""

    __slots__ = ("rows", "cols", "_data", "_sparse", "_real")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence] | None = None):
        self.rows = rows
        self.cols = cols
        if data is None:
            zero_row = (ZERO,) * cols
            self._data = (zero_row,) * rows
        else:
            if len(data) != rows or any(len(r) != cols for r in data):
                raise ValueError("matrix data does not match %dx%d" % (rows, cols))
            self._data = tuple(tuple(gauss(x) for x in r) for r in data)
        self._sparse = None
        self._real = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_sparse(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return cls.from_sparse(n, n, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries) -> "Matrix":
        """Build from ``{(i, j): value}``; zero values are dropped."""
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        sparse = [dict() for _ in range(rows)]
        items = entries.items() if hasattr(entries, "items") else entries
        for (i, j), v in items:
            v = gauss(v)
            if v:
                sparse[i][j] = v
        data = []
        zero_row = (ZERO,) * cols
        for r in sparse:
            if not r:
                data.append(zero_row)
            else:
                row = [ZERO] * cols
                for j, v in r.items():
                    row[j] = v
                data.append(tuple(row))
        m._data = tuple(data)
        m._sparse = sparse
        m._real = None
        return m

    @classmethod
    def hstack(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        rows = blocks[0].rows
        entries = {}
        off = 0
        for b in blocks:
            if b.rows != rows:
                raise ValueError("hstack: row counts differ")
            for i, r in enumerate(b.sparse_rows()):
                for j, v in r.items():
                    entries[i, off + j] = v
            off += b.cols
        return cls.from_sparse(rows, off, entries)

    @classmethod
    def vstack(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        cols = blocks[0].cols
        entries = {}
        off = 0
        for b in blocks:
            if b.cols != cols:
                raise ValueError("vstack: column counts differ")
            for i, r in enumerate(b.sparse_rows()):
                for j, v in r.items():
                    entries[off + i, j] = v
            off += b.rows
        return cls.from_sparse(off, cols, entries)

    # -- access -------------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def to_lists(self) -> list:
        return [list(r) for r in self._data]

    def sparse_rows(self) -> list:
        """Rows as ``{col: value}`` dicts of the nonzero entries (cached; do not mutate)."""
        if self._sparse is None:
            self._sparse = [{j: v for j, v in enumerate(r) if v} for r in self._data]
        return self._sparse

    def nonzero_entries(self):
        for i, r in enumerate(self.sparse_rows()):
            for j, v in r.items():
                yield (i, j), v

    def nnz(self) -> int:
        return sum(len(r) for r in self.sparse_rows())

    @property
    def is_real(self) -> bool:
        if self._real is None:
            self._real = all(not v.im for r in self.sparse_rows() for v in r.values())
        return self._real

    def is_zero(self) -> bool:
        return not any(self.sparse_rows())

    # -- algebra ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch %s vs %s" % (self.shape, other.shape))
        entries = dict(self.nonzero_entries())
        for k, v in other.nonzero_entries():
            entries[k] = entries.get(k, ZERO) + v
        return Matrix.from_sparse(self.rows, self.cols, entries)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix.from_sparse(self.rows, self.cols, {k: -v for k, v in self.nonzero_entries()})

    def scale(self, c) -> "Matrix":
        c = gauss(c)
        return Matrix.from_sparse(self.rows, self.cols, {k: c * v for k, v in self.nonzero_entries()})

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch %s @ %s" % (self.shape, other.shape))
            right = other.sparse_rows()
            entries = {}
            for i, r in enumerate(self.sparse_rows()):
                acc = {}
                for k, a in r.items():
                    for j, b in right[k].items():
                        acc[j] = acc.get(j, ZERO) + a * b
                for j, v in acc.items():
                    if v:
                        entries[i, j] = v
            return Matrix.from_sparse(self.rows, other.cols, entries)
        vec = [gauss(x) for x in other]
        if len(vec) != self.cols:
            raise ValueError("vector length %d != %d columns" % (len(vec), self.cols))
        out = []
        for r in self.sparse_rows():
            acc = ZERO
            for j, a in r.items():
                b = vec[j]
                if b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix.from_sparse(self.cols, self.rows, {(j, i): v for (i, j), v in self.nonzero_entries()})

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def conjugate(self) -> "Matrix":
        return Matrix.from_sparse(self.rows, self.cols,
                                  {k: v.conjugate() for k, v in self.nonzero_entries()})

    def conjugate_transpose(self) -> "Matrix":
        return Matrix.from_sparse(self.cols, self.rows,
                                  {(j, i): v.conjugate() for (i, j), v in self.nonzero_entries()})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        col_pos = {c: k for k, c in enumerate(cols)}
        src = self.sparse_rows()
        entries = {}
        for a, i in enumerate(rows):
            for j, v in src[i].items():
                b = col_pos.get(j)
                if b is not None:
                    entries[a, b] = v
        return Matrix.from_sparse(len(rows), len(cols), entries)

    def __repr__(self):
        if self.rows * self.cols > 64:
            return "Matrix(%dx%d, nnz=%d)" % (self.rows, self.cols, self.nnz())
        body = "; ".join(" ".join(format_scalar(v) for v in r) for r in self._data)
        return "Matrix(%dx%d: [%s])" % (self.rows, self.cols, body)


# ---------------------------------------------------------------------------
# elimination core
# ---------------------------------------------------------------------------

def _field_rows(m: Matrix):
    """Copy of the sparse rows, over Fraction when the matrix is real."""
    if m.is_real:
        return [{j: v.re for j, v in r.items()} for r in m.sparse_rows()], True
    return [dict(r) for r in m.sparse_rows()], False


def _back(rows, real):
    if real:
        return [{j: GaussianRational._raw(v, Fraction(0)) for j, v in r.items()} for r in rows]
    return rows


def _eliminate(rows, ncols, reduce_above):
    """Gauss-Jordan on sparse rows in place.

    Pivots are taken column by column; among candidate rows the shortest is
    chosen to limit fill-in.  The reduced row-echelon form is unique, so the
    pivot heuristic does not affect canonical outputs.  Returns the pivot
    rows (normalized, ordered by pivot column) and their pivot columns.
    """
    remaining = [r for r in rows if r]
    pivots = []
    pivot_cols = []
    for c in range(ncols):
        best = None
        best_len = 0
        for idx, r in enumerate(remaining):
            if c in r and (best is None or len(r) < best_len):
                best, best_len = idx, len(r)
        if best is None:
            continue
        prow = remaining.pop(best)
        inv = 1 / prow[c]
        if inv != 1:
            prow = {j: v * inv for j, v in prow.items()}
        keep = []
        for r in remaining:
            f = r.get(c)
            if f is not None:
                for j, v in prow.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = nv
                    else:
                        r.pop(j, None)
            if r:
                keep.append(r)
        remaining = keep
        pivots.append(prow)
        pivot_cols.append(c)
        if not remaining:
            break
    if reduce_above:
        for k in range(len(pivots) - 1, -1, -1):
            c = pivot_cols[k]
            prow = pivots[k]
            for t in range(k):
                r = pivots[t]
                f = r.get(c)
                if f is not None:
                    for j, v in prow.items():
                        nv = r.get(j, 0) - f * v
                        if nv:
                            r[j] = nv
                        else:
                            r.pop(j, None)
    return pivots, pivot_cols


def rref(m: Matrix):
    """Reduced row-echelon form: ``(pivot_rows, pivot_cols)``.

    ``pivot_rows`` are ``{col: GaussianRational}`` dicts with a 1 in their
    pivot column and zeros in every other pivot column.
    """
    rows, real = _field_rows(m)
    pivots, cols = _eliminate(rows, m.cols, reduce_above=True)
    return _back(pivots, real), cols


def rank_lower_bound(m: Matrix):
    """Certified lower bound for ``rank(m)`` from the F_p kernel, or ``None``."""
    if m.rows == 0 or m.cols == 0:
        return 0
    for p in _kernels.PRIMES:
        a = _kernels.reduce_entries((m.rows, m.cols), m.nonzero_entries(), p)
        if a is not None:
            return _kernels.rank_mod_p(a, p)
    return None


def _exact_rank(m: Matrix) -> int:
    rows, _ = _field_rows(m)
    pivots, _ = _eliminate(rows, m.cols, reduce_above=False)
    return len(pivots)


def rank(m: Matrix, method: str = "auto") -> int:
    """Exact rank over Q(i).

    ``method="auto"`` accepts the modular bound when it equals
    ``min(rows, cols)`` (a lower bound at the maximum is exact) and falls
    back to exact elimination otherwise.  ``method="exact"`` always
    eliminates.
    """
    if method not in ("auto", "exact"):
        raise ValueError("method must be 'auto' or 'exact'")
    if m.rows == 0 or m.cols == 0:
        return 0
    if method == "auto" and m.rows * m.cols >= _MODULAR_MIN_SIZE:
        lb = rank_lower_bound(m)
        if lb is not None and lb == min(m.rows, m.cols):
            return lb
    return _exact_rank(m)


def kernel_basis(m: Matrix) -> "SubspaceBasis":
    """Canonical basis of the right null space."""
    pivots, pcols = rref(m)
    pset = set(pcols)
    vecs = []
    for f in range(m.cols):
        if f in pset:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for prow, c in zip(pivots, pcols):
            a = prow.get(f)
            if a is not None:
                v[c] = -a
        vecs.append(v)
    return SubspaceBasis.span(m.cols, vecs)


def solve(m: Matrix, b: Sequence):
    """One exact solution of ``m x = b``, or ``None`` if inconsistent.

    Free variables are set to zero, which makes the returned particular
    solution canonical (it depends only on the reduced row-echelon form).
    """
    b = [gauss(x) for x in b]
    if len(b) != m.rows:
        raise ValueError("right-hand side has length %d, expected %d" % (len(b), m.rows))
    aug = Matrix.hstack([m, Matrix.from_rows([[x] for x in b], 1)]) if m.rows else m
    if m.rows == 0:
        return tuple([ZERO] * m.cols)
    pivots, pcols = rref(aug)
    if pcols and pcols[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for prow, c in zip(pivots, pcols):
        x[c] = prow.get(m.cols, ZERO)
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    pivots, pcols = rref(Matrix.hstack([m, Matrix.identity(n)]))
    if len(pcols) < n or pcols[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    entries = {}
    for i, prow in enumerate(pivots[:n]):
        for j, v in prow.items():
            if j >= n:
                entries[i, j - n] = v
    return Matrix.from_sparse(n, n, entries)


def cohomology_dim(d_in: Matrix, d_out: Matrix) -> int:
    """``dim ker(d_out) - rank(d_in)`` for ``C' -> C -> C''`` with ``d_out d_in = 0``."""
    if d_in.rows != d_out.cols:
        raise ValueError("d_in lands in dimension %d but d_out starts from %d"
                         % (d_in.rows, d_out.cols))
    if not (d_out @ d_in).is_zero():
        raise ComposeNonzero("d_out . d_in != 0")
    return d_out.cols - sum(complex_ranks([d_in, d_out]))


def complex_ranks(blocks: Sequence[Matrix]) -> list:
    """Exact ranks of consecutive blocks ``C^0 -> C^1 -> ...`` of a complex.

    Each block first gets a certified lower bound (modular, or exact when
    small).  Wherever the bounds already force ``H^k = 0`` they are exact;
    only blocks left undecided are eliminated over Q(i).  The caller must
    know that consecutive blocks compose to zero.
    """
    k = len(blocks)
    lbs, exact = [], []
    for b in blocks:
        if b.rows * b.cols < _MODULAR_MIN_SIZE:
            r = rank(b, "exact")
            lbs.append(r)
            exact.append(True)
            continue
        lb = rank_lower_bound(b)
        if lb is None:
            lb = 0
        lbs.append(lb)
        exact.append(lb == min(b.rows, b.cols))
    for t in range(k + 1):
        dim = blocks[t].cols if t < k else blocks[k - 1].rows
        r_in = lbs[t - 1] if t > 0 else 0
        r_out = lbs[t] if t < k else 0
        if dim - r_in - r_out == 0:
            if t > 0:
                exact[t - 1] = True
            if t < k:
                exact[t] = True
    return [lb if ok else rank(b, "exact") for b, lb, ok in zip(blocks, lbs, exact)]


def symmetric_inertia(s: Matrix):
    """Sylvester inertia ``(n_pos, n_zero, n_neg)`` of a Hermitian matrix.

    Exact congruence diagonalization: pivot on a nonzero diagonal entry and
    take the Schur complement; when the remaining diagonal is all zero but
    some off-diagonal entry ``a_ij`` is not, the congruence
    ``e_i -> e_i + t e_j`` (t = 1 or i) creates a nonzero diagonal pivot.
    """
    if s.rows != s.cols:
        raise NotHermitian("matrix is not square")
    if s != s.conjugate_transpose():
        raise NotHermitian("matrix is not Hermitian")
    n = s.rows
    a = s.to_lists()
    active = list(range(n))
    pos = neg = 0
    while active:
        k = next((i for i in active if a[i][i]), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if j != i and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            t = ONE if a[i][j].re else I_UNIT
            tc = t.conjugate()
            for r in active:  # column i += t * column j
                a[r][i] = a[r][i] + a[r][j] * t
            for c in active:  # row i += conj(t) * row j
                a[i][c] = a[i][c] + tc * a[j][c]
            k = i
        d = a[k][k]
        if d.re > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        inv = 1 / d
        for i in active:
            f = a[i][k]
            if f:
                f = f * inv
                row_i = a[i]
                row_k = a[k]
                for j in active:
                    if row_k[j]:
                        row_i[j] = row_i[j] - f * row_k[j]
    return pos, n - pos - neg, neg


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of Q(i)^n stored by its reduced row-echelon basis.

    Equal subspaces have identical ``vectors``, so ``==`` is subspace equality.
    """

    ambient_dim: int
    vectors: tuple

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "SubspaceBasis":
        vectors = [tuple(gauss(x) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length differs from ambient dimension %d" % ambient_dim)
        if not vectors:
            return cls(ambient_dim, ())
        pivots, _ = rref(Matrix.from_rows(vectors, ambient_dim))
        out = []
        for prow in pivots:
            v = [ZERO] * ambient_dim
            for j, x in prow.items():
                v[j] = x
            out.append(tuple(v))
        return cls(ambient_dim, tuple(out))

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "SubspaceBasis":
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    @property
    def pivots(self) -> tuple:
        return tuple(next(j for j, x in enumerate(v) if x) for v in self.vectors)

    def coordinates(self, v: Sequence):
        """Coefficients of ``v`` in this basis, or ``None`` if ``v`` is outside."""
        v = [gauss(x) for x in v]
        coeffs = [v[p] for p in self.pivots]
        residual = list(v)
        for c, b in zip(coeffs, self.vectors):
            if c:
                for j, x in enumerate(b):
                    if x:
                        residual[j] = residual[j] - c * x
        if any(residual):
            return None
        return tuple(coeffs)

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return SubspaceBasis.span(self.ambient_dim, self.vectors + other.vectors)

    def conjugate(self) -> "SubspaceBasis":
        # conjugating an RREF basis keeps it in RREF (pivots are real 1s)
        return SubspaceBasis(self.ambient_dim,
                             tuple(tuple(x.conjugate() for x in v) for v in self.vectors))

    def matrix(self) -> Matrix:
        """Basis vectors as the rows of a matrix."""
        return Matrix.from_rows(self.vectors, self.ambient_dim)

    def complement(self) -> "SubspaceBasis":
        """Echelon complement: unit vectors at the non-pivot positions."""
        piv = set(self.pivots)
        return SubspaceBasis(self.ambient_dim, tuple(
            tuple(ONE if j == i else ZERO for j in range(self.ambient_dim))
            for i in range(self.ambient_dim) if i not in piv))

    def annihilator(self, method: str = "kernel") -> "SubspaceBasis":
        """Covectors (in dual coordinates) vanishing on the subspace.

        ``method="kernel"`` takes the null space of the evaluation matrix;
        ``method="complement"`` extends the basis by the echelon complement,
        inverts, and keeps the dual vectors of the complement part.
        """
        n = self.ambient_dim
        if method == "kernel":
            if not self.vectors:
                return SubspaceBasis.full(n)
            return kernel_basis(self.matrix())
        if method == "complement":
            comp = self.complement()
            if not comp.vectors:
                return SubspaceBasis.zero(n)
            basis = Matrix.from_rows(self.vectors + comp.vectors, n).transpose()
            dual = inverse(basis)  # row r of the inverse is the r-th dual covector
            return SubspaceBasis.span(n, [dual.row(r) for r in range(self.dim, n)])
        raise ValueError("unknown annihilator method %r" % method)

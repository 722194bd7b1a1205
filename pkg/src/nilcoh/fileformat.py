"""Plain-text algebra files.

::

    dim 4
    basis X Y Z T
    bracket X Y -> 1 Z
    J X -> 1 Y
    J Z -> -1 T
    metric diag 1 1 1 1
    theta 0 0 0 1

``#`` starts a comment.  ``dim`` comes first and ``basis`` second; the other
lines may appear in any order.  Unlisted brackets are zero.  ``J`` lines
give ``I e``; images implied by ``I^2 = -1`` may be omitted and are filled
in.  ``metric rows`` is followed by ``dim`` lines of entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import CatalogEntry
from .errors import AlgebraSyntaxError, InvalidComplexStructure, SemanticError
from .exterior import ExtForm
from .lck import HermitianMetric
from .lie import MAX_DIM, ComplexStructure, LieAlgebra
from .linalg import Matrix, rank, solve
from .scalars import parse_rational

__all__ = ["AlgebraFile", "parse", "format_file", "from_entry"]


@dataclass
class AlgebraFile:
    """Parsed sections; ``brackets[(i, j)]`` (``i < j``) and ``j_images[i]`` map index -> coefficient."""

    dim: int
    basis: tuple
    brackets: dict = field(default_factory=dict)
    j_images: dict | None = None
    metric: tuple | None = None
    theta: tuple | None = None

    def algebra(self) -> LieAlgebra:
        return LieAlgebra.from_brackets(self.basis, {k: dict(v) for k, v in self.brackets.items()})

    def complex_structure(self) -> ComplexStructure | None:
        if self.j_images is None:
            return None
        n = self.dim
        return ComplexStructure(Matrix.from_sparse(
            n, n, {(k, e): c for e, img in self.j_images.items() for k, c in img.items()}))

    def hermitian_metric(self) -> HermitianMetric | None:
        if self.metric is None:
            return None
        return HermitianMetric(Matrix.from_rows(self.metric, self.dim))

    def theta_form(self) -> ExtForm | None:
        return None if self.theta is None else ExtForm.covector(list(self.theta))

    def entry(self, name: str = "file") -> CatalogEntry:
        return CatalogEntry(name, self.algebra(), self.complex_structure(),
                            self.hermitian_metric(), self.theta_form())


def _tokens(line: str):
    """``(column, token)`` pairs, 1-based columns, comment stripped."""
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    out = []
    k = 0
    while k < len(line):
        if line[k].isspace():
            k += 1
            continue
        start = k
        while k < len(line) and not line[k].isspace():
            k += 1
        out.append((start + 1, line[start:k]))
    return out


def _rational(lineno, col, tok):
    try:
        return parse_rational(tok)
    except ValueError:
        raise AlgebraSyntaxError(lineno, col, "expected a rational number, got %r" % tok) from None


def _combo(lineno, toks, names, what):
    if not toks or len(toks) % 2:
        col = toks[-1][0] if toks else 1
        raise AlgebraSyntaxError(lineno, col, "%s: expected pairs 'coefficient name'" % what)
    out = {}
    for k in range(0, len(toks), 2):
        c = _rational(lineno, *toks[k])
        col, nm = toks[k + 1]
        if nm not in names:
            raise SemanticError(lineno, col, "unknown basis name %r" % nm)
        idx = names[nm]
        out[idx] = out.get(idx, Fraction(0)) + c
    return {i: c for i, c in out.items() if c}


def parse(text: str) -> AlgebraFile:
    lines = text.splitlines()
    body = [(no, _tokens(l)) for no, l in enumerate(lines, 1)]
    body = [(no, t) for no, t in body if t]
    if not body:
        raise AlgebraSyntaxError(1, 1, "empty file")
    it = iter(body)
    no, toks = next(it)
    if toks[0][1] != "dim" or len(toks) != 2:
        raise AlgebraSyntaxError(no, toks[0][0], "first line must be 'dim <n>'")
    try:
        dim = int(toks[1][1])
    except ValueError:
        raise AlgebraSyntaxError(no, toks[1][0], "dimension must be an integer") from None
    if not 1 <= dim <= MAX_DIM:
        raise SemanticError(no, toks[1][0], "dimension must lie in 1..%d" % MAX_DIM)
    try:
        no, toks = next(it)
    except StopIteration:
        raise AlgebraSyntaxError(no + 1, 1, "missing 'basis' line") from None
    if toks[0][1] != "basis":
        raise AlgebraSyntaxError(no, toks[0][0], "second line must be 'basis <names>'")
    names = [t for _, t in toks[1:]]
    if len(names) != dim:
        raise SemanticError(no, toks[0][0], "basis has %d names, dim is %d" % (len(names), dim))
    pos = {}
    for col, nm in toks[1:]:
        if nm in pos:
            raise SemanticError(no, col, "duplicate basis name %r" % nm)
        if not (nm[0].isalpha() or nm[0] == "_") or not all(ch.isalnum() or ch == "_" for ch in nm):
            raise AlgebraSyntaxError(no, col, "basis names must be identifiers, got %r" % nm)
        pos[nm] = len(pos)
    af = AlgebraFile(dim, tuple(names))
    seen = {}
    j_lines = {}
    j_first = None
    rows = list(it)
    k = 0
    while k < len(rows):
        no, toks = rows[k]
        k += 1
        key, col0 = toks[0][1], toks[0][0]
        if key == "bracket":
            if len(toks) < 4 or toks[3][1] != "->":
                raise AlgebraSyntaxError(no, col0, "expected 'bracket a b -> c1 e1 ...'")
            (ca, a), (cb, b) = toks[1], toks[2]
            for col, nm in ((ca, a), (cb, b)):
                if nm not in pos:
                    raise SemanticError(no, col, "unknown basis name %r" % nm)
            combo = _combo(no, toks[4:], pos, "bracket")
            i, j = pos[a], pos[b]
            if i == j:
                if combo:
                    raise SemanticError(no, ca, "[%s, %s] must be zero" % (a, a))
                continue
            key2 = (min(i, j), max(i, j))
            oriented = combo if i < j else {t: -c for t, c in combo.items()}
            if (i, j) in seen:
                raise SemanticError(no, ca, "bracket [%s, %s] listed twice" % (a, b))
            if key2 in af.brackets or (j, i) in seen:
                if af.brackets.get(key2, {}) != oriented:
                    raise SemanticError(no, ca, "[%s, %s] and [%s, %s] are not antisymmetric"
                                        % (a, b, b, a))
            seen[i, j] = True
            if oriented:
                af.brackets[key2] = oriented
            else:
                af.brackets.setdefault(key2, {})
                if not af.brackets[key2]:
                    del af.brackets[key2]
        elif key == "J":
            if len(toks) < 4 or toks[2][1] != "->":
                raise AlgebraSyntaxError(no, col0, "expected 'J e -> c1 e1 ...'")
            col, e = toks[1]
            if e not in pos:
                raise SemanticError(no, col, "unknown basis name %r" % e)
            if pos[e] in j_lines:
                raise SemanticError(no, col, "J %s given twice" % e)
            j_lines[pos[e]] = (no, _combo(no, toks[3:], pos, "J"))
            j_first = j_first or no
        elif key == "metric":
            if af.metric is not None:
                raise SemanticError(no, col0, "metric given twice")
            if len(toks) < 2 or toks[1][1] not in ("diag", "rows"):
                raise AlgebraSyntaxError(no, col0, "expected 'metric diag ...' or 'metric rows'")
            if toks[1][1] == "diag":
                if len(toks) != dim + 2:
                    raise SemanticError(no, col0, "metric diag needs %d entries" % dim)
                vals = [_rational(no, *t) for t in toks[2:]]
                af.metric = tuple(tuple(vals[r] if r == c else Fraction(0) for c in range(dim))
                                  for r in range(dim))
            else:
                if len(toks) != 2:
                    raise AlgebraSyntaxError(no, toks[2][0], "'metric rows' takes no arguments")
                mat = []
                for _ in range(dim):
                    if k >= len(rows):
                        raise AlgebraSyntaxError(no, col0, "metric rows: expected %d rows" % dim)
                    rno, rtoks = rows[k]
                    k += 1
                    if len(rtoks) != dim:
                        raise SemanticError(rno, rtoks[0][0], "metric row needs %d entries" % dim)
                    mat.append(tuple(_rational(rno, *t) for t in rtoks))
                af.metric = tuple(mat)
        elif key == "theta":
            if af.theta is not None:
                raise SemanticError(no, col0, "theta given twice")
            if len(toks) != dim + 1:
                raise SemanticError(no, col0, "theta needs %d components" % dim)
            af.theta = tuple(_rational(no, *t) for t in toks[1:])
        else:
            raise AlgebraSyntaxError(no, col0, "unknown keyword %r" % key)
    if j_lines:
        af.j_images = _complete_j(dim, j_lines, j_first)
    return af


def _complete_j(dim, j_lines, j_first):
    """Fill in ``J`` from the given images using ``I^2 = -1``; cross-check."""
    dom, img = [], []
    for e, (_, combo) in sorted(j_lines.items()):
        v = [combo.get(t, Fraction(0)) for t in range(dim)]
        unit = [Fraction(1 if t == e else 0) for t in range(dim)]
        dom += [unit, v]
        img += [v, [-x for x in unit]]
    D = Matrix.from_rows(dom, dim)  # rows are domain vectors
    if rank(D) < dim:
        raise SemanticError(j_first, 1, "J is not determined on every basis vector")
    cols = []
    for r in range(dim):
        # row r of J solves D x = (img vectors)[r]
        sol = solve(D, [v[r] for v in img])
        if sol is None:
            raise SemanticError(j_first, 1, "J lines are inconsistent with I^2 = -1")
        cols.append(sol)
    J = Matrix.from_rows(cols, dim)
    try:
        ComplexStructure(J)
    except InvalidComplexStructure as exc:
        raise SemanticError(j_first, 1, str(exc)) from None
    out = {}
    for e in range(dim):
        out[e] = {k: J[k, e].re for k in range(dim) if J[k, e]}
    return out


def _fmt_combo(combo, names):
    return " ".join("%s %s" % (c, names[k]) for k, c in sorted(combo.items()))


def format_file(af: AlgebraFile) -> str:
    """Canonical text: all brackets ``i < j``, every ``J`` image, diagonal metrics as ``diag``."""
    names = af.basis
    out = ["dim %d" % af.dim, "basis " + " ".join(names)]
    for (i, j), combo in sorted(af.brackets.items()):
        if combo:
            out.append("bracket %s %s -> %s" % (names[i], names[j], _fmt_combo(combo, names)))
    if af.j_images is not None:
        for e in range(af.dim):
            out.append("J %s -> %s" % (names[e], _fmt_combo(af.j_images[e], names)))
    if af.metric is not None:
        m = af.metric
        if all(m[r][c] == 0 for r in range(af.dim) for c in range(af.dim) if r != c):
            out.append("metric diag " + " ".join(str(m[r][r]) for r in range(af.dim)))
        else:
            out.append("metric rows")
            out += [" ".join(str(x) for x in row) for row in m]
    if af.theta is not None:
        out.append("theta " + " ".join(str(x) for x in af.theta))
    return "\n".join(out) + "\n"


def from_entry(entry: CatalogEntry) -> AlgebraFile:
    g = entry.algebra
    n = g.dim
    brackets = {}
    for i, j, k, v in g.bracket_terms():
        brackets.setdefault((i, j), {})[k] = v
    af = AlgebraFile(n, g.names, brackets)
    if entry.complex_structure is not None:
        J = entry.complex_structure.matrix
        af.j_images = {e: {k: J[k, e].re for k in range(n) if J[k, e]} for e in range(n)}
    if entry.metric is not None:
        G = entry.metric.gram
        af.metric = tuple(tuple(G[r, c].re for c in range(n)) for r in range(n))
    if entry.theta is not None:
        af.theta = tuple(c.re for c in entry.theta.covector_coeffs())
    return af

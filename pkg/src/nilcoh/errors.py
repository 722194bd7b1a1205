"""Exception hierarchy.

Every failure the library can signal derives from :class:`NilcohError`, so
callers (the CLI in particular) can catch the whole family in one place.
Inconsistent linear systems are *not* errors; :func:`nilcoh.linalg.solve`
returns ``None`` for those.
"""

from __future__ import annotations


class NilcohError(Exception):
    """Base class for all library errors."""


class CheckFailure(NilcohError):
    """An exact mathematical check did not pass (CLI exit code 1)."""


class DimensionTooLarge(NilcohError):
    pass


class AntisymmetryViolation(CheckFailure):
    def __init__(self, i, j, k, names=None):
        self.triple = (i, j, k)
        self.names = names
        label = names if names else (i, j, k)
        super().__init__(
            "structure constants not antisymmetric: c[%s][%s][%s] != -c[%s][%s][%s]"
            % (label[0], label[1], label[2], label[1], label[0], label[2])
        )


class JacobiViolation(CheckFailure):
    def __init__(self, i, j, k, names=None):
        self.triple = (i, j, k)
        self.names = names
        label = names if names else (i, j, k)
        super().__init__("Jacobi identity fails on (%s, %s, %s)" % tuple(label))


class InvalidComplexStructure(CheckFailure):
    pass


class NotIntegrable(CheckFailure):
    pass


class NotNilpotent(CheckFailure):
    pass


class ThetaNotClosed(CheckFailure):
    pass


class ThetaZero(NilcohError):
    pass


class ZeroCovector(NilcohError):
    pass


class ComposeNonzero(CheckFailure):
    pass


class NotHermitian(NilcohError):
    pass


class BasisModeMismatch(NilcohError):
    pass


class IncompatibleMetric(CheckFailure):
    pass


class Degenerate(CheckFailure):
    pass


class NotClosed(CheckFailure):
    pass


class WrongBidegree(CheckFailure):
    pass


class HodgeChaseFailure(CheckFailure):
    """No 1-form solves the Hodge-chasing system.

    Under the vanishing theorem's hypotheses this cannot happen, so seeing it
    means either the input violates a hypothesis or the theorem is wrong.
    """


class FormatError(NilcohError):
    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        self.message = message
        super().__init__("%d:%d: %s" % (line, col, message))


class AlgebraSyntaxError(FormatError):
    pass


class SemanticError(FormatError):
    pass

"""Rank of an int64 matrix over F_p, the one hot numeric loop in the package.

Reducing a Q(i) matrix modulo a prime p = 1 (mod 4), sending i to a square
root of -1, is a ring homomorphism on the entries, so every minor that
survives mod p was nonzero over Q(i).  The F_p rank is therefore a *lower
bound* for the exact rank; callers turn it into an exact answer only when
the bound is tight (full rank, or a cohomology group squeezed to zero).

Two interchangeable kernels compute the F_p rank:

* ``rank_mod_p_jit``: scalar loops compiled with ``numba.njit``;
* ``rank_mod_p_numpy``: vectorized row operations in plain numpy.

Set ``NILCOH_NO_JIT=1`` to force the numpy kernel (also used automatically
when numba is not importable).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None

# primes below 2**31, all = 1 mod 4; p**2 < 2**62 keeps int64 products exact
PRIMES = (2147483629, 2147483549, 2147483497, 2147483489)


def _inv_mod(a, p):
    result = 1
    e = p - 2
    a = a % p
    while e > 0:
        if e & 1:
            result = (result * a) % p
        a = (a * a) % p
        e >>= 1
    return result


def rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            f = a[below, c][:, None]
            a[below, c:] = (a[below, c:] - f * a[r, c:]) % p
        r += 1
    return r


if numba is not None:
    _inv_mod_jit = numba.njit(cache=True)(_inv_mod)

    @numba.njit(cache=True)
    def _rank_mod_p_jit_impl(a, p):
        a = a.copy()
        rows, cols = a.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = _inv_mod_jit(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r

    def rank_mod_p_jit(a: np.ndarray, p: int) -> int:
        return int(_rank_mod_p_jit_impl(np.ascontiguousarray(a, dtype=np.int64) % p, np.int64(p)))
else:  # pragma: no cover
    rank_mod_p_jit = None


def jit_enabled() -> bool:
    return rank_mod_p_jit is not None and os.environ.get("NILCOH_NO_JIT", "") in ("", "0")


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """F_p rank with whichever kernel the environment selects."""
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    if jit_enabled():
        return rank_mod_p_jit(a, p)
    return rank_mod_p_numpy(a, p)


_SQRT_M1 = {}


def sqrt_minus_one(p: int) -> int:
    """A square root of -1 modulo a prime p = 1 (mod 4)."""
    if p not in _SQRT_M1:
        if p % 4 != 1:
            raise ValueError("p must be 1 mod 4")
        g = 2
        while pow(g, (p - 1) // 2, p) != p - 1:
            g += 1
        _SQRT_M1[p] = pow(g, (p - 1) // 4, p)
    return _SQRT_M1[p]


def reduce_entries(shape, entries, p):
    """Build the F_p image of a sparse Q(i) matrix.

    ``entries`` yields ``((row, col), GaussianRational)``.  Returns ``None``
    when p divides some denominator (the reduction is then undefined).
    """
    s = sqrt_minus_one(p)
    out = np.zeros(shape, dtype=np.int64)
    for (i, j), z in entries:
        re, im = z.re, z.im
        v = 0
        if re:
            den = re.denominator % p
            if den == 0:
                return None
            v = re.numerator * pow(den, -1, p)
        if im:
            den = im.denominator % p
            if den == 0:
                return None
            v += im.numerator * pow(den, -1, p) * s
        out[i, j] = v % p
    return out

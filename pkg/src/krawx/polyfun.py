"""Univariate building blocks: Pochhammer symbols, terminating hypergeometric
series, the classical polynomials used throughout the package, and exact
trinomial coefficients.

Every series here terminates, so evaluation is a finite term-by-term sum
with a running-product term update, accumulated with ``math.fsum``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


class PreconditionError(ValueError):
    """Raised when an argument falls outside an operation's domain."""


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)``; ``(a)_0 = 1``."""
    if n < 0:
        raise PreconditionError(f"pochhammer needs n >= 0, got {n}")
    out = 1.0
    for j in range(n):
        out *= a + j
    return out


def pochhammer_exact(a: Fraction | int, n: int) -> Fraction:
    """Rising factorial in exact rational arithmetic."""
    out = Fraction(1)
    a = Fraction(a)
    for j in range(n):
        out *= a + j
    return out


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


def trinomial_exact(N: int, i: int, k: int) -> int:
    """``N! / (i! k! (N-i-k)!)`` as a Python integer."""
    if min(N, i, k) < 0 or i + k > N:
        raise PreconditionError(f"trinomial needs i + k <= N, got N={N}, i={i}, k={k}")
    return math.comb(N, i) * math.comb(N - i, k)


def trinomial(N: int, i: int, k: int) -> float:
    return float(trinomial_exact(N, i, k))


def _terminating_sum(terms) -> float:
    return math.fsum(terms)


def _krawtchouk_terms(n: int, x, p, N: int, one=1.0) -> list:
    if n < 0 or n > N:
        raise PreconditionError(f"krawtchouk needs 0 <= n <= N, got n={n}, N={N}")
    if p == 0:
        raise PreconditionError("krawtchouk needs p != 0")
    jmax = n
    if float(x).is_integer() and x >= 0:
        jmax = min(n, int(x))
    inv_p = one / p
    t = one
    out = [t]
    for j in range(jmax):
        t = t * ((j - n) * (j - x)) / ((j - N) * (j + 1)) * inv_p
        out.append(t)
    return out


def krawtchouk(n: int, x: float, p: float, N: int) -> float:
    """Krawtchouk polynomial ``K_n(x; p, N) = 2F1(-n, -x; -N; 1/p)``.

    ``x`` may be non-integer; the series then runs over all ``n+1`` terms.
    For integer ``0 <= x`` it stops at ``min(n, x)``.
    """
    return _terminating_sum(_krawtchouk_terms(n, x, p, N))


def krawtchouk_with_bound(n: int, x: float, p: float, N: int) -> tuple[float, float]:
    """``K_n(x; p, N)`` together with ``sum |term|``, the scale of its rounding error."""
    terms = _krawtchouk_terms(n, x, p, N)
    return _terminating_sum(terms), math.fsum(abs(t) for t in terms)


def krawtchouk_mp(n: int, x, p, N: int):
    """Same series in the ambient :mod:`mpmath` precision; ``p`` should be an ``mpf``."""
    import mpmath

    return mpmath.fsum(_krawtchouk_terms(n, x, p, N, one=mpmath.mpf(1)))


def dual_hahn(n: int, x: int, gamma: float, delta: float, N: int) -> float:
    """Dual Hahn polynomial ``R_n(lambda(x); gamma, delta, N)``.

    Evaluated as ``3F2(-n, -x, x+gamma+delta+1; gamma+1, -N; 1)``.
    """
    if not (0 <= n <= N and 0 <= x <= N):
        raise PreconditionError(f"dual_hahn needs 0 <= n, x <= N, got n={n}, x={x}, N={N}")
    if gamma <= -1:
        raise PreconditionError(f"dual_hahn needs gamma > -1, got {gamma}")
    c = x + gamma + delta + 1

    def terms():
        t = 1.0
        yield t
        for j in range(min(n, x)):
            t *= (j - n) * (j - x) * (c + j) / ((gamma + 1 + j) * (j - N) * (j + 1))
            yield t

    return _terminating_sum(terms())


def hermite(n: int, x: float) -> float:
    """Physicists' Hermite polynomial via ``H_{j+1} = 2x H_j - 2j H_{j-1}``."""
    if n == 0:
        return 1.0
    h_prev, h = 1.0, 2.0 * x
    for j in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * j * h_prev
    return h


def hermite_table(n_max: int, xs):
    """Rows ``H_0..H_{n_max}`` evaluated at every point of ``xs`` (numpy array)."""
    import numpy as np

    xs = np.asarray(xs, dtype=float)
    out = np.empty((n_max + 1,) + xs.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2.0 * xs
    for j in range(1, n_max):
        out[j + 1] = 2.0 * xs * out[j] - 2.0 * j * out[j - 1]
    return out


def laguerre(n: int, alpha: float, x: float) -> float:
    """Generalized Laguerre polynomial ``L_n^(alpha)(x)`` by forward recurrence."""
    if n == 0:
        return 1.0
    l_prev, l = 1.0, 1.0 + alpha - x
    for j in range(1, n):
        l_prev, l = l, ((2 * j + 1 + alpha - x) * l - (j + alpha) * l_prev) / (j + 1)
    return l

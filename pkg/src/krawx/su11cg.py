"""Clebsch-Gordan coefficients of su(1,1) for the positive discrete series.

Two routes are provided:

* :func:`cg_explicit` -- closed form, a positive square-root prefactor times a
  dual Hahn polynomial in the quadratic lattice ``lambda(x)``.
* :func:`cg_recurrence_row` / :func:`cg_block_recurrence` -- the monic
  three-term recurrence, normalized column by column.

Representation labels are kept as :class:`fractions.Fraction` whenever the
caller passes rationals (1/4, 3/4, half-integers), which keeps the radicand
exact until the final square root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .polyfun import PreconditionError, dual_hahn, pochhammer_exact


def _as_label(nu) -> Fraction | float:
    if isinstance(nu, Rational):
        return Fraction(nu)
    nu = float(nu)
    # floats with short binary expansions (1/4, 3/4, 5/2, ...) are exact
    frac = Fraction(nu)
    if frac.denominator <= 1 << 10:
        return frac
    return nu


@dataclass(frozen=True)
class CgLabel:
    """Labels ``(nu1, n1; nu2, n2 | nu12, n12)`` of one coefficient."""

    nu1: Fraction | float
    n1: int
    nu2: Fraction | float
    n2: int
    nu12: Fraction | float
    n12: int

    @property
    def x(self) -> int:
        return self.n1 + self.n2 - self.n12

    def admissible(self) -> bool:
        """Selection rules: ``0 <= x <= n1+n2`` and ``nu12 = nu1 + nu2 + x``."""
        x = self.x
        if self.n12 < 0 or x < 0:
            return False
        return _as_label(self.nu12) == _as_label(self.nu1) + _as_label(self.nu2) + x


def lattice(x: int, nu1, nu2):
    """``lambda(x) = x (x + 2 nu1 + 2 nu2 - 1)``."""
    return x * (x + 2 * nu1 + 2 * nu2 - 1)


def _rising(num: int, den: int, n: int) -> tuple[int, int]:
    """``(num/den)_n`` as an unreduced integer pair."""
    top = 1
    for i in range(n):
        top *= num + i * den
    return top, den**n


def _dual_hahn_exact(n: int, x: int, gamma: Fraction, delta: Fraction, N: int) -> tuple[int, int]:
    """Terminating 3F2 of the dual Hahn polynomial as an unreduced integer pair.

    Nested (Horner) evaluation ``1 + a_0 (1 + a_1 (1 + ...))`` with each ratio
    ``a_j`` kept as integers; no gcd is taken until the caller converts.
    """
    c = x + gamma + delta + 1
    g1 = gamma + 1
    # common denominator for the two rational shifts
    d = math.lcm(c.denominator, g1.denominator)
    cn, gn = int(c * d), int(g1 * d)
    s_num, s_den = 1, 1
    for j in reversed(range(min(n, x))):
        p = (j - n) * (j - x) * (cn + j * d)
        q = (gn + j * d) * (j - N) * (j + 1)
        s_num, s_den = q * s_den + p * s_num, q * s_den
    return s_num, s_den


def cg_explicit(label: CgLabel) -> float:
    """Closed-form Clebsch-Gordan coefficient; exactly 0 off the selection rules."""
    nu1, nu2 = _as_label(label.nu1), _as_label(label.nu2)
    if nu1 <= 0 or nu2 <= 0:
        raise PreconditionError(f"need nu1, nu2 > 0, got {label.nu1}, {label.nu2}")
    n1, n2, n12 = label.n1, label.n2, label.n12
    if min(n1, n2) < 0:
        raise PreconditionError("occupation numbers must be nonnegative")
    if not label.admissible():
        return 0.0
    x = label.x
    N = n1 + n2
    exact = isinstance(nu1, Fraction) and isinstance(nu2, Fraction)
    if exact:
        a1, a2 = 2 * nu1, 2 * nu2
        terms_num = [
            _rising(a1.numerator, a1.denominator, n1),
            _rising(a2.numerator, a2.denominator, n2),
            _rising(a1.numerator, a1.denominator, x),
        ]
        s2 = a1 + a2 + 2 * x
        s1 = a1 + a2 + x - 1
        terms_den = [
            _rising(a2.numerator, a2.denominator, x),
            _rising(s2.numerator, s2.denominator, n12),
            _rising(s1.numerator, s1.denominator, x),
        ]
        top = math.factorial(x + n12) ** 2
        bottom = math.factorial(n1) * math.factorial(n2) * math.factorial(n12) * math.factorial(x)
        for a, b in terms_num:
            top, bottom = top * a, bottom * b
        for a, b in terms_den:
            top, bottom = top * b, bottom * a
        # radicand = top / bottom, with (x + n12)! folded in so one root is taken
        if bottom < 0:
            top, bottom = -top, -bottom
        assert top >= 0, (top, bottom)
        p_num, p_den = _dual_hahn_exact(n1, x, a1 - 1, a2 - 1, N)
        return math.sqrt(top / bottom) * (p_num / p_den)

    from .polyfun import pochhammer

    num = pochhammer(2 * nu1, n1) * pochhammer(2 * nu2, n2) * pochhammer(2 * nu1, x)
    den = (
        math.factorial(n1) * math.factorial(n2) * math.factorial(n12) * math.factorial(x)
        * pochhammer(2 * nu2, x)
        * pochhammer(2 * nu1 + 2 * nu2 + 2 * x, n12)
        * pochhammer(2 * nu1 + 2 * nu2 + x - 1, x)
    )
    radicand = num / den
    assert radicand >= 0, radicand
    return math.sqrt(radicand) * math.factorial(x + n12) * dual_hahn(n1, x, 2 * nu1 - 1, 2 * nu2 - 1, N)


def cg(nu1, n1: int, nu2, n2: int, nu12, n12: int) -> float:
    """Shorthand for ``cg_explicit(CgLabel(...))``."""
    return cg_explicit(CgLabel(nu1, n1, nu2, n2, nu12, n12))


def recurrence_coefficients(nu1, nu2, N: int, n: int) -> tuple[float, float]:
    """``(A_n, C_n)`` with ``A_n = (n-N)(n+2 nu1)`` and ``C_n = n(n - 2 nu2 - N)``."""
    return (n - N) * (n + 2 * nu1), n * (n - 2 * nu2 - N)


def cg_recurrence_row(nu1, nu2, N: int, x: int) -> np.ndarray:
    """Monic dual Hahn values ``P^_n(lambda(x))`` for ``n = 0..N`` from the recurrence

    ``P^_{n+1} = (lambda + A_n + C_n) P^_n - A_{n-1} C_n P^_{n-1}``.
    """
    nu1, nu2 = float(nu1), float(nu2)
    if nu1 <= 0 or nu2 <= 0:
        raise PreconditionError("need nu1, nu2 > 0")
    if not 0 <= x <= N:
        raise PreconditionError(f"need 0 <= x <= N, got x={x}, N={N}")
    lam = lattice(x, nu1, nu2)
    out = np.empty(N + 1)
    out[0] = 1.0
    prev, cur = 0.0, 1.0
    for n in range(N):
        a_n, c_n = recurrence_coefficients(nu1, nu2, N, n)
        a_prev = (n - 1 - N) * (n - 1 + 2 * nu1)
        nxt = (lam + a_n + c_n) * cur - a_prev * c_n * prev
        prev, cur = cur, nxt
        out[n + 1] = cur
    return out


def monic_dual_hahn(n: int, x: int, nu1, nu2, N: int) -> float:
    """Monic normalization of ``R_n``: ``(gamma+1)_n (-N)_n R_n`` with ``gamma = 2 nu1 - 1``."""
    from .polyfun import pochhammer

    nu1, nu2 = float(nu1), float(nu2)
    return pochhammer(2 * nu1, n) * pochhammer(-N, n) * dual_hahn(n, x, 2 * nu1 - 1, 2 * nu2 - 1, N)


def _cg_column(a1n: int, a2n: int, d: int, N: int, x: int) -> list[float]:
    """Column ``x`` of the explicit block, all ``n1 = 0..N`` at once.

    ``2 nu1 = a1n / d`` and ``2 nu2 = a2n / d``.  Same closed form as
    :func:`cg_explicit`, still in exact integers: the dual Hahn values
    ``R_n1(lambda(x))`` come from the monic three-term recurrence in ``n1``,

        M_{n+1} = (lambda + A_n + C_n) M_n - A_{n-1} C_n M_{n-1},

    scaled by ``d^n`` so every coefficient is an integer, and the radicand is
    updated by its exact ratio between consecutive ``n1``.
    """
    n12 = N - x

    # radicand at n1 = 0 as an unreduced integer pair, then exact ratios in n1
    top = math.factorial(x + n12) ** 2
    bottom = math.factorial(N) * math.factorial(n12) * math.factorial(x)
    for r, n, up in (
        (a2n, N, True),
        (a1n, x, True),
        (a2n, x, False),
        (a1n + a2n + 2 * x * d, n12, False),
        (a1n + a2n + (x - 1) * d, x, False),
    ):
        num, den = _rising(r, d, n)
        if up:
            top, bottom = top * num, bottom * den
        else:
            top, bottom = top * den, bottom * num

    # d * lambda(x), d * A_n = (n d + a1n)(n - N), d * C_n = n (n d - a2n - N d)
    lam = x * (x * d + a1n + a2n - d)
    q_prev, q = 0, 1  # d^n M_n for n - 1 and n
    k = 1  # d^n (2 nu1)_n (-N)_n, so R_n = q / k
    out = []
    for n1 in range(N + 1):
        out.append(math.sqrt(top / bottom) * (q / k))
        if n1 == N:
            break
        a_n = (n1 * d + a1n) * (n1 - N)
        c_n = n1 * (n1 * d - a2n - N * d)
        a_prev = ((n1 - 1) * d + a1n) * (n1 - 1 - N)
        q_prev, q = q, (lam + a_n + c_n) * q - a_prev * c_n * q_prev
        k *= a_n
        n2 = N - n1
        # (2nu1 + n1) n2 / ((n1 + 1)(2nu2 + n2 - 1))
        top *= (a1n + n1 * d) * n2
        bottom *= (n1 + 1) * (a2n + (n2 - 1) * d)
    return out


def cg_block(nu1, nu2, N: int) -> np.ndarray:
    """Orthogonal ``(N+1) x (N+1)`` matrix ``M[n1, x]`` with ``n2 = N - n1``, ``n12 = N - x``.

    Entries are the closed-form coefficients, ``nu12 = nu1 + nu2 + x``.
    """
    nu1, nu2 = _as_label(nu1), _as_label(nu2)
    if nu1 <= 0 or nu2 <= 0:
        raise PreconditionError(f"need nu1, nu2 > 0, got {nu1}, {nu2}")
    out = np.empty((N + 1, N + 1))
    if isinstance(nu1, Fraction) and isinstance(nu2, Fraction):
        a1, a2 = 2 * nu1, 2 * nu2
        d = math.lcm(a1.denominator, a2.denominator)
        a1n, a2n = int(a1 * d), int(a2 * d)
        for x in range(N + 1):
            out[:, x] = _cg_column(a1n, a2n, d, N, x)
        return out
    for n1 in range(N + 1):
        for x in range(N + 1):
            out[n1, x] = cg_explicit(CgLabel(nu1, n1, nu2, N - n1, nu1 + nu2 + x, N - x))
    return out


def _offdiag(nu1: float, nu2: float, N: int) -> np.ndarray:
    """``W_n = -sqrt(n (N-n+1)(n+2nu1-1)(N-n+2nu2))`` for ``n = 0..N`` (``W_0 = 0``)."""
    n = np.arange(N + 1, dtype=float)
    return -np.sqrt(n * (N - n + 1) * (n + 2 * nu1 - 1) * (N - n + 2 * nu2))


def cg_block_recurrence(nu1, nu2, N: int) -> np.ndarray:
    """Same block as :func:`cg_block`, built from the three-term recurrence.

    Column ``x`` is the eigenvector of the Casimir of the coupled algebra,
    tridiagonal in ``n1``: ``nu12 (nu12 - 1) P_n = b_n P_n + W_n P_{n-1} + W_{n+1} P_{n+1}``
    with ``b_n = 2 (n + nu1)(N - n + nu2) + nu1 (nu1 - 1) + nu2 (nu2 - 1)``.  The recurrence is run upward from ``n = 0`` and downward from
    ``n = N``; the two solutions are spliced at the column's largest entry,
    where both directions are stable.  The result is rescaled to unit norm
    with a positive ``n1 = 0`` entry.
    """
    nu1, nu2 = float(nu1), float(nu2)
    if nu1 <= 0 or nu2 <= 0:
        raise PreconditionError("need nu1, nu2 > 0")
    w = _offdiag(nu1, nu2, N)
    n = np.arange(N + 1, dtype=float)
    diag = 2 * (n + nu1) * (N - n + nu2) + nu1 * (nu1 - 1) + nu2 * (nu2 - 1)
    w, diag = w.tolist(), diag.tolist()
    out = np.empty((N + 1, N + 1))
    for x in range(N + 1):
        nu12 = nu1 + nu2 + x
        ev = nu12 * (nu12 - 1)
        up = [0.0] * (N + 1)
        up[0] = 1.0
        for k in range(N):
            prev = w[k] * up[k - 1] if k else 0.0
            up[k + 1] = ((ev - diag[k]) * up[k] - prev) / w[k + 1]
        down = [0.0] * (N + 1)
        down[N] = 1.0
        for k in range(N, 0, -1):
            nxt = w[k + 1] * down[k + 1] if k < N else 0.0
            down[k - 1] = ((ev - diag[k]) * down[k] - nxt) / w[k]
        peak = max(range(N + 1), key=lambda k: abs(up[k]))
        ratio = up[peak] / down[peak]
        col = np.array(up[: peak + 1] + [v * ratio for v in down[peak + 1 :]])
        col /= math.copysign(np.linalg.norm(col), col[0])
        out[:, x] = col
    return out

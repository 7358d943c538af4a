"""General bivariate Krawtchouk polynomials ``P_{r,s}(i, k; N)``.

The polynomials are parametrized by a rotation ``R`` in SO(3) and are the
Cartesian matrix elements of ``U(R)`` divided by a weight:

    <i, k, l| U(R) |r, s, t> = W_{i,k;N} P_{r,s}(i, k; N).

Routes implemented here:

* :func:`p_aomoto` -- terminating quadruple hypergeometric sum in cross ratios
  of ``R``;
* :func:`p_genfun` -- coefficients of the product of three trinomial powers;
* :func:`p_interbasis` -- sum over irreducible components using Wigner
  D-matrices and Cartesian/spherical overlaps.

The Gauss-Hermite route lives in :mod:`krawx.oracles`; the matrix-exponential
route is :func:`krawx.oscrep.matrix_element_oracle` divided by :func:`weight`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .oscrep import basis_index, enumerate_basis, exp_generator, unitary_matrix
from .overlaps import overlap_matrix, spherical_labels
from .polyfun import PreconditionError, krawtchouk, pochhammer, trinomial_exact
from .rotations import EulerAngles, euler_to_rotation, wigner_block

ENTRY_ATOL = 1e-10


class SingularParameterError(ValueError):
    """A rotation-matrix entry the chosen route divides by is (numerically) zero."""

    def __init__(self, entry: str, value: float):
        super().__init__(f"rotation entry {entry} = {value:.3g} vanishes; use the representation oracle")
        self.entry = entry
        self.value = value


def _require(R: np.ndarray, *entries: str) -> None:
    for name in entries:
        i, j = int(name[1]) - 1, int(name[2]) - 1
        if abs(R[i, j]) < ENTRY_ATOL:
            raise SingularParameterError(name, float(R[i, j]))


def _as_matrix(rotation) -> np.ndarray:
    if isinstance(rotation, EulerAngles):
        return euler_to_rotation(rotation)
    return np.asarray(rotation, dtype=float)


@dataclass(frozen=True)
class BiKrawArgs:
    r: int
    s: int
    i: int
    k: int
    N: int

    def __post_init__(self):
        if min(self.r, self.s, self.i, self.k) < 0 or self.r + self.s > self.N or self.i + self.k > self.N:
            raise PreconditionError(f"need r+s <= N and i+k <= N, got {self}")

    @property
    def t(self) -> int:
        return self.N - self.r - self.s

    @property
    def l(self) -> int:
        return self.N - self.i - self.k


@dataclass(frozen=True)
class AomotoU:
    u11: float
    u12: float
    u21: float
    u22: float

    @classmethod
    def from_rotation(cls, R: np.ndarray) -> "AomotoU":
        _require(R, "R13", "R23", "R31", "R32", "R33")
        return cls(
            R[0, 0] * R[2, 2] / (R[0, 2] * R[2, 0]),
            R[0, 1] * R[2, 2] / (R[0, 2] * R[2, 1]),
            R[1, 0] * R[2, 2] / (R[1, 2] * R[2, 0]),
            R[1, 1] * R[2, 2] / (R[1, 2] * R[2, 1]),
        )


def weight(i: int, k: int, N: int, rotation) -> float:
    """``W_{i,k;N} = C(N; i, k)^(1/2) R33^N (R13/R33)^i (R23/R33)^k``."""
    R = _as_matrix(rotation)
    _require(R, "R33")
    return math.sqrt(trinomial_exact(N, i, k)) * R[2, 2] ** (N - i - k) * R[0, 2] ** i * R[1, 2] ** k


# rounding bound on the Aomoto series, relative to max(1, |P|), above which it
# is re-summed in extended precision
AOMOTO_ERR_BUDGET = 1e-12
AOMOTO_DPS = 30


def _aomoto_terms(r: int, s: int, i: int, k: int, N: int, xs, one=1.0) -> list:
    x11, x21, x12, x22 = xs
    terms = []
    for a in range(min(r, i) + 1):
        for b in range(min(r - a, k) + 1):
            for c in range(min(s, i - a) + 1):
                for d in range(min(s - c, k - b) + 1):
                    num = (
                        _falling(r, a + b) * _falling(s, c + d) * _falling(i, a + c) * _falling(k, b + d)
                    )
                    den = (
                        math.factorial(a) * math.factorial(b) * math.factorial(c) * math.factorial(d)
                        * _falling(N, a + b + c + d)
                    )
                    sign = -1 if (a + b + c + d) % 2 else 1
                    terms.append(sign * (one * num) / den * x11**a * x21**b * x12**c * x22**d)
    return terms


def p_aomoto(args: BiKrawArgs, rotation) -> float:
    """Gel'fand-Aomoto series.

    ``sum (-r)_{a+b} (-s)_{c+d} (-i)_{a+c} (-k)_{b+d} / (a! b! c! d! (-N)_{a+b+c+d})
    (1-u11)^a (1-u21)^b (1-u12)^c (1-u22)^d`` times
    ``C(N; r, s)^(1/2) (R31/R33)^r (R32/R33)^s``.  Only the index box where no
    Pochhammer factor vanishes is visited.

    When ``R33`` is small the cross ratios are large and the alternating series
    cancels; if the float rounding bound exceeds ``AOMOTO_ERR_BUDGET`` (relative
    to ``max(1, |P|)``) the sum
    is redone in :mod:`mpmath` from the same matrix entries.
    """
    R = _as_matrix(rotation)
    u = AomotoU.from_rotation(R)
    r, s, i, k, N = args.r, args.s, args.i, args.k, args.N
    pref = math.sqrt(trinomial_exact(N, r, s)) * (R[2, 0] / R[2, 2]) ** r * (R[2, 1] / R[2, 2]) ** s
    terms = _aomoto_terms(r, s, i, k, N, (1 - u.u11, 1 - u.u21, 1 - u.u12, 1 - u.u22))
    series = math.fsum(terms)
    magnitude = math.fsum(abs(t) for t in terms)
    value = pref * series
    if abs(pref) * magnitude * 8 * N * 2.3e-16 <= AOMOTO_ERR_BUDGET * max(1.0, abs(value)):
        return value
    return _p_aomoto_extended(args, R, magnitude / max(abs(series), 1e-300))


def _p_aomoto_extended(args: BiKrawArgs, R: np.ndarray, cancellation: float) -> float:
    import mpmath

    dps = AOMOTO_DPS + int(math.log10(max(cancellation, 1.0)))
    with mpmath.workdps(dps):
        m = [[mpmath.mpf(float(R[a, b])) for b in range(3)] for a in range(3)]
        u11 = m[0][0] * m[2][2] / (m[0][2] * m[2][0])
        u12 = m[0][1] * m[2][2] / (m[0][2] * m[2][1])
        u21 = m[1][0] * m[2][2] / (m[1][2] * m[2][0])
        u22 = m[1][1] * m[2][2] / (m[1][2] * m[2][1])
        terms = _aomoto_terms(
            args.r, args.s, args.i, args.k, args.N, (1 - u11, 1 - u21, 1 - u12, 1 - u22), one=mpmath.mpf(1)
        )
        pref = (
            mpmath.sqrt(trinomial_exact(args.N, args.r, args.s))
            * (m[2][0] / m[2][2]) ** args.r * (m[2][1] / m[2][2]) ** args.s
        )
        return float(pref * mpmath.fsum(terms))


def _falling(n: int, j: int) -> int:
    # |(-n)_j| = n! / (n-j)!; the four numerator signs multiply to +1, leaving
    # only the (-1)^(a+b+c+d) of (-N)_{a+b+c+d}
    return math.perm(n, j)


def _trinomial_power(e: int, a: float, b: float, N: int) -> np.ndarray:
    """Coefficients of ``(1 + a u + b v)^e`` as a ``(N+1, N+1)`` array in ``(u, v)`` degrees."""
    out = np.zeros((N + 1, N + 1))
    for p in range(e + 1):
        for q in range(e - p + 1):
            out[p, q] = trinomial_exact(e, p, q) * a**p * b**q
    return out


def _truncated_product(x: np.ndarray, y: np.ndarray, N: int) -> np.ndarray:
    out = np.zeros((N + 1, N + 1))
    for p in range(N + 1):
        for q in range(N + 1 - p):
            if x[p, q] == 0:
                continue
            out[p:, q:] += x[p, q] * y[: N + 1 - p, : N + 1 - q]
    # drop total degree > N
    deg = np.add.outer(np.arange(N + 1), np.arange(N + 1))
    out[deg > N] = 0
    return out


def p_genfun_table(i: int, k: int, N: int, rotation) -> np.ndarray:
    """``P_{r,s}(i, k; N)`` for all ``r + s <= N`` (array indexed ``[r, s]``, zero elsewhere).

    Expands ``(1 + R11/R13 u + R12/R13 v)^i (1 + R21/R23 u + R22/R23 v)^k
    (1 + R31/R33 u + R32/R33 v)^(N-i-k)``.
    """
    R = _as_matrix(rotation)
    _require(R, "R33")
    if i:
        _require(R, "R13")
    if k:
        _require(R, "R23")
    l = N - i - k
    if min(i, k, l) < 0:
        raise PreconditionError(f"need i + k <= N, got i={i}, k={k}, N={N}")
    f1 = _trinomial_power(i, R[0, 0] / R[0, 2] if i else 0.0, R[0, 1] / R[0, 2] if i else 0.0, N)
    f2 = _trinomial_power(k, R[1, 0] / R[1, 2] if k else 0.0, R[1, 1] / R[1, 2] if k else 0.0, N)
    f3 = _trinomial_power(l, R[2, 0] / R[2, 2], R[2, 1] / R[2, 2], N)
    coeffs = _truncated_product(_truncated_product(f1, f2, N), f3, N)
    out = np.zeros((N + 1, N + 1))
    for r in range(N + 1):
        for s in range(N + 1 - r):
            out[r, s] = coeffs[r, s] / math.sqrt(trinomial_exact(N, r, s))
    return out


def p_genfun(args: BiKrawArgs, rotation) -> float:
    return float(p_genfun_table(args.i, args.k, args.N, rotation)[args.r, args.s])


@lru_cache(maxsize=256)
def _interbasis_matrix(N: int, angles: EulerAngles) -> np.ndarray:
    """``sum_{ell, m, m'} <C|n_r, ell, m'> D^ell_{m' m} <n_r, ell, m|C>`` for all Cartesian pairs."""
    labels = spherical_labels(N)
    blocks = [wigner_block(ell, angles) for ell in range(N % 2, N + 1, 2)]
    D = scipy.linalg.block_diag(*blocks)
    assert D.shape[0] == len(labels)
    C = overlap_matrix(N, "cart_spher")
    out = C @ D @ C.conj().T
    out.setflags(write=False)
    return out


def p_interbasis(r: int, s: int, i: int, k: int, N: int, angles: EulerAngles, imag_atol: float = 1e-9) -> float:
    """Decomposition into irreducible components, divided by ``W_{i,k;N}``.

    The Wigner D factor is paired so that its row index ``m'`` matches the
    bra-side overlap ``<C i,k,l | n_r, ell, m'>``.
    """
    BiKrawArgs(r, s, i, k, N)
    w = weight(i, k, N, angles)
    if abs(w) < ENTRY_ATOL:
        raise SingularParameterError("W", w)
    value = _interbasis_matrix(N, angles)[basis_index(N, i, k), basis_index(N, r, s)] / w
    if abs(value.imag) > imag_atol * max(1.0, abs(value.real)):
        raise ArithmeticError(f"interbasis sum has imaginary part {value.imag:.3g}")
    return float(value.real)


def p_matexp(r: int, s: int, i: int, k: int, N: int, angles: EulerAngles) -> float:
    """Representation oracle: the matrix-exponential entry over the weight."""
    BiKrawArgs(r, s, i, k, N)
    w = weight(i, k, N, angles)
    if abs(w) < ENTRY_ATOL:
        raise SingularParameterError("W", w)
    value = unitary_matrix(N, angles)[basis_index(N, i, k), basis_index(N, r, s)] / w
    return float(value.real)


# Tratnik specialization -----------------------------------------------------


@dataclass(frozen=True)
class TratnikParams:
    p1: float
    p2: float

    def __post_init__(self):
        if not (self.p1 > 0 and self.p2 > 0 and self.p1 + self.p2 < 1):
            raise PreconditionError(f"need p1, p2 > 0 and p1 + p2 < 1, got {self.p1}, {self.p2}")


def tratnik_k2(m: int, n: int, i: int, k: int, params: TratnikParams, N: int) -> float:
    """``(n-N)_m (i-N)_n / (-N)_{m+n} K_m(i; p1; N-n) K_n(k; p2/(1-p1); N-i)``."""
    if min(m, n, i, k) < 0 or m + n > N or i + k > N:
        raise PreconditionError(f"need m+n <= N and i+k <= N, got m={m}, n={n}, i={i}, k={k}, N={N}")
    pref = pochhammer(n - N, m) * pochhammer(i - N, n) / pochhammer(-N, m + n)
    if pref == 0:
        return 0.0
    return (
        pref
        * krawtchouk(m, i, params.p1, N - n)
        * krawtchouk(n, k, params.p2 / (1 - params.p1), N - i)
    )


def tratnik_rotation(theta: float, chi: float) -> np.ndarray:
    """Rotation represented by ``exp(i theta Lx) exp(i chi Ly)``; its ``R12`` vanishes."""
    c1, s1, c2, s2 = math.cos(theta), math.sin(theta), math.cos(chi), math.sin(chi)
    rx = np.array([[1, 0, 0], [0, c1, s1], [0, -s1, c1]])
    ry = np.array([[c2, 0, -s2], [0, 1, 0], [s2, 0, c2]])
    return rx @ ry


def tratnik_params(theta: float, chi: float) -> TratnikParams:
    R = tratnik_rotation(theta, chi)
    return TratnikParams(R[0, 2] ** 2, R[1, 2] ** 2)


def tratnik_unitary(N: int, theta: float, chi: float) -> np.ndarray:
    """``exp(i theta Lx) exp(i chi Ly)`` on the ``N`` eigenspace, Cartesian basis."""
    return exp_generator(N, 0, -theta) @ exp_generator(N, 1, -chi)


def tratnik_one_check(theta: float, chi: float, N: int) -> float:
    """Max deviation of ``<i,k,l| e^{i theta Lx} e^{i chi Ly} |r,s,t>`` from
    ``R33^-N W_{i,k} W~_{r,s} K2(r, s; i, k)``, ``W~`` built from ``R^T``."""
    R = tratnik_rotation(theta, chi)
    params = tratnik_params(theta, chi)
    U = tratnik_unitary(N, theta, chi)
    worst = 0.0
    for r, s, i, k in all_indices(N):
        rhs = R[2, 2] ** -N * weight(i, k, N, R) * weight(r, s, N, R.T) * tratnik_k2(r, s, i, k, params, N)
        worst = max(worst, abs(U[basis_index(N, i, k), basis_index(N, r, s)] - rhs))
    return worst


def tratnik_bridge_check(theta: float, chi: float, N: int) -> float:
    """Max deviation over both halves of the conjugation bridge.

    First ``<i,k,l| e^{i theta Lx} e^{i chi Ly} |r,s,t> =
    (-1)^(l+t) <l,k,i| e^{i theta Lz} e^{i chi Ly} |t,s,r>`` entrywise, then the
    right-hand side against the decomposition formula at Euler angles
    ``(alpha, beta, gamma) = (0, -chi, -theta)``.  The second half needs the
    weight at those angles to be nonzero and is skipped where it vanishes.
    """
    lhs = tratnik_unitary(N, theta, chi)
    rhs = exp_generator(N, 2, -theta) @ exp_generator(N, 1, -chi)
    angles = EulerAngles(0.0, -chi, -theta)
    worst = 0.0
    for r, s, i, k in all_indices(N):
        t, l = N - r - s, N - i - k
        flipped = rhs[basis_index(N, l, k), basis_index(N, t, s)]
        sign = -1 if (l + t) % 2 else 1
        worst = max(worst, abs(lhs[basis_index(N, i, k), basis_index(N, r, s)] - sign * flipped))
        w = weight(l, k, N, angles)
        if abs(w) >= ENTRY_ATOL:
            worst = max(worst, abs(flipped - w * p_interbasis(t, s, l, k, N, angles)))
    return worst


def half_turn_check(N: int) -> float:
    """Max deviation of ``e^{+-i pi/2 Ly}`` from the signed permutations
    ``<a,b,c| e^{i pi/2 Ly} |r,s,t> = (-1)^t d_{a t} d_{b s}`` and
    ``<i,k,l| e^{-i pi/2 Ly} |a,b,c> = (-1)^l d_{i c} d_{k b}``."""
    plus = exp_generator(N, 1, -0.5 * math.pi)
    minus = exp_generator(N, 1, 0.5 * math.pi)
    states = enumerate_basis(N).states
    worst = 0.0
    for row in states:
        for col in states:
            a, b, c = row
            r, s, t = col
            hit = a == t and b == s
            want_plus = (-1) ** t if hit else 0
            want_minus = (-1) ** c if hit else 0
            ri, ci = basis_index(N, a, b), basis_index(N, r, s)
            worst = max(worst, abs(plus[ri, ci] - want_plus), abs(minus[ri, ci] - want_minus))
    return worst


def orthonormality_defect(N: int, rotation) -> float:
    """``max | sum_{i+k<=N} W^2 P_{r,s} P_{r',s'} - delta |`` via the generating-function route."""
    R = _as_matrix(rotation)
    degs = [(r, s) for r in range(N + 1) for s in range(N + 1 - r)]
    gram = np.zeros((len(degs), len(degs)))
    for i in range(N + 1):
        for k in range(N + 1 - i):
            table = p_genfun_table(i, k, N, R)
            vec = np.array([table[r, s] for r, s in degs])
            gram += weight(i, k, N, R) ** 2 * np.outer(vec, vec)
    return float(np.abs(gram - np.eye(len(degs))).max())


def all_indices(N: int):
    """Every ``(r, s, i, k)`` with ``r + s <= N`` and ``i + k <= N``, lexicographic."""
    for r in range(N + 1):
        for s in range(N + 1 - r):
            for i in range(N + 1):
                for k in range(N + 1 - i):
                    yield r, s, i, k


__all__ = [
    "AomotoU",
    "BiKrawArgs",
    "SingularParameterError",
    "TratnikParams",
    "all_indices",
    "enumerate_basis",
    "half_turn_check",
    "orthonormality_defect",
    "p_aomoto",
    "p_genfun",
    "p_genfun_table",
    "p_interbasis",
    "p_matexp",
    "tratnik_bridge_check",
    "tratnik_k2",
    "tratnik_one_check",
    "tratnik_params",
    "tratnik_rotation",
    "tratnik_unitary",
    "weight",
]

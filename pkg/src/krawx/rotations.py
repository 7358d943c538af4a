"""Euler-angle rotation matrices and Wigner D-matrix elements.

The D-matrix entries are computed from a univariate Krawtchouk polynomial in
the variable ``m' + ell`` with ``p = sin^2(beta/2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polyfun import PreconditionError, krawtchouk_mp, krawtchouk_with_bound

POLE_ATOL = 1e-12
# absolute rounding bound above which an entry is recomputed in extended precision
FLOAT_ERR_BUDGET = 1e-12
EXTENDED_DPS = 40


@dataclass(frozen=True)
class EulerAngles:
    """``(alpha, beta, gamma)`` in radians; ``U = e^{-i gamma Lz} e^{-i beta Ly} e^{-i alpha Lz}``."""

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma))


def euler_to_rotation(angles: EulerAngles) -> np.ndarray:
    ca, sa = math.cos(angles.alpha), math.sin(angles.alpha)
    cb, sb = math.cos(angles.beta), math.sin(angles.beta)
    cg, sg = math.cos(angles.gamma), math.sin(angles.gamma)
    return np.array(
        [
            [ca * cb * cg - sa * sg, -sa * cb * cg - ca * sg, sb * cg],
            [ca * cb * sg + sa * cg, ca * cg - sa * cb * sg, sb * sg],
            [-ca * sb, sa * sb, cb],
        ]
    )


def is_rotation(R: np.ndarray, atol: float = 1e-12) -> bool:
    return bool(np.allclose(R.T @ R, np.eye(3), rtol=0, atol=atol) and abs(np.linalg.det(R) - 1) <= atol)


def _near(beta: float, target: float) -> bool:
    d = math.remainder(beta - target, 2 * math.pi)
    return abs(d) <= POLE_ATOL


def small_d(ell: int, m_prime: int, m: int, beta: float) -> float:
    """Real factor ``d^ell_{m' m}(beta)`` of the D-matrix entry.

    ``(-1)^(m'+ell) sin^(2 ell)(b/2) tan^(m+m')(b/2) [C(2l, m+l) C(2l, m'+l)]^(1/2)
    K_{m+ell}(m'+ell; sin^2(b/2); 2 ell)``, with the sine and tangent powers
    merged into ``sin^(2l+m+m') cos^-(m+m')`` and the poles at ``beta = 0, pi``
    replaced by their limits.

    Near ``beta = pi`` the Krawtchouk series cancels heavily before being
    divided by a small cosine power, so angles with ``|beta| > pi/2`` are first
    composed with the rotation by ``pi``.  If the rounding bound still exceeds
    ``FLOAT_ERR_BUDGET`` the entry is re-evaluated in extended precision.
    """
    if ell < 0 or abs(m) > ell or abs(m_prime) > ell:
        raise PreconditionError(f"need |m|, |m'| <= ell, got ell={ell}, m'={m_prime}, m={m}")
    if _near(beta, 0.0):
        return 1.0 if m == m_prime else 0.0
    if _near(beta, math.pi):
        return float((-1) ** (ell + m_prime)) if m_prime == -m else 0.0
    beta = math.remainder(beta, 2 * math.pi)
    if abs(beta) > 0.5 * math.pi:
        # e^{-i b Ly} = e^{-i pi Ly} e^{-i (b - pi) Ly}; keeps the series away from its
        # ill-conditioned half
        shifted = beta - math.copysign(math.pi, beta)
        sign = -1.0 if (ell + m_prime) % 2 else 1.0
        return sign * small_d(ell, -m_prime, m, shifted)
    half = 0.5 * beta
    s, c = math.sin(half), math.cos(half)
    power = m + m_prime
    binoms = math.sqrt(math.comb(2 * ell, m + ell) * math.comb(2 * ell, m_prime + ell))
    sign = -1.0 if (m_prime + ell) % 2 else 1.0
    scale = sign * s ** (2 * ell + power) * c ** (-power) * binoms
    try:
        kraw, magnitude = krawtchouk_with_bound(m + ell, m_prime + ell, s * s, 2 * ell)
        bound = abs(scale) * magnitude * (2 * ell + 1) * 2.3e-16
    except (OverflowError, ValueError):
        bound = math.inf
    if bound <= FLOAT_ERR_BUDGET:
        return scale * kraw
    # worst-case digits lost: every power of 1/sin^2 and 1/cos in the series
    lost = 2 * ell * (abs(math.log10(abs(s))) + abs(math.log10(abs(c))) + 1)
    return _small_d_extended(ell, m_prime, m, beta, EXTENDED_DPS + int(lost))


def _small_d_extended(ell: int, m_prime: int, m: int, beta: float, dps: int) -> float:
    import mpmath

    with mpmath.workdps(dps):
        half = mpmath.mpf(beta) / 2
        s, c = mpmath.sin(half), mpmath.cos(half)
        power = m + m_prime
        binoms = mpmath.sqrt(math.comb(2 * ell, m + ell) * math.comb(2 * ell, m_prime + ell))
        kraw = krawtchouk_mp(m + ell, m_prime + ell, s * s, 2 * ell)
        sign = -1 if (m_prime + ell) % 2 else 1
        return float(sign * s ** (2 * ell + power) * c ** (-power) * binoms * kraw)


def wigner_d(ell: int, m_prime: int, m: int, angles: EulerAngles) -> complex:
    """``D^ell_{m' m}(alpha, beta, gamma) = e^{-i(gamma m' + alpha m)} d^ell_{m' m}(beta)``."""
    d = small_d(ell, m_prime, m, angles.beta)
    phase = -(angles.gamma * m_prime + angles.alpha * m)
    return complex(d * math.cos(phase), d * math.sin(phase))


def small_d_block(ell: int, beta: float) -> np.ndarray:
    """``d^ell(beta)`` with rows ``m'`` and columns ``m`` from ``-ell`` to ``ell``.

    Only the wedge ``m' >= |m|`` is evaluated; the rest follows from
    ``d_{m'm} = (-1)^(m'-m) d_{mm'} = d_{-m,-m'}``.
    """
    out = np.empty((2 * ell + 1, 2 * ell + 1))
    for a in range(ell + 1):
        for b in range(-a, a + 1):
            v = small_d(ell, a, b, beta)
            sv = -v if (a - b) % 2 else v
            out[a + ell, b + ell] = v
            out[-b + ell, -a + ell] = v
            out[b + ell, a + ell] = sv
            out[-a + ell, -b + ell] = sv
    return out


def wigner_block(ell: int, angles: EulerAngles) -> np.ndarray:
    """``(2l+1) x (2l+1)`` matrix, rows ``m'`` and columns ``m`` running from ``-ell`` to ``ell``."""
    ms = np.arange(-ell, ell + 1)
    phase = np.exp(-1j * (angles.gamma * ms[:, None] + angles.alpha * ms[None, :]))
    return phase * small_d_block(ell, angles.beta)


def spherical_to_cartesian_l1() -> np.ndarray:
    """Columns are the ``m = -1, 0, 1`` standard vectors expressed in ``(x, y, z)``.

    ``|1,+-1> = (-+ e_x - i e_y)/sqrt(2)``, ``|1,0> = e_z`` (Condon-Shortley).
    """
    r = 1 / math.sqrt(2)
    return np.array(
        [
            [r, 0, -r],
            [-1j * r, 0, -1j * r],
            [0, 1, 0],
        ]
    )


def random_angles(rng, min_entry: float = 0.0, max_tries: int = 10_000) -> EulerAngles:
    """Haar-distributed Euler angles (``cos beta`` uniform); rejection-sampled
    until every entry of the rotation matrix has ``|R_ij| >= min_entry``."""
    for _ in range(max_tries):
        angles = EulerAngles(
            rng.uniform(0, 2 * math.pi), math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi)
        )
        if min_entry <= 0 or np.abs(euler_to_rotation(angles)).min() >= min_entry:
            return angles
    raise PreconditionError(f"no rotation with all |R_ij| >= {min_entry} in {max_tries} draws")

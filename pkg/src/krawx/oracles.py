"""Independent numerical backends: Gauss-Hermite quadrature of the Hermite
integral representation, and oscillator wavefunctions used to pin the phases
of the Cartesian/polar overlaps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .polyfun import PreconditionError, hermite, hermite_table, laguerre, trinomial_exact


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def order(self) -> int:
        return len(self.nodes)


@lru_cache(maxsize=None)
def gauss_hermite(order: int) -> QuadratureRule:
    """Golub-Welsch rule for ``int exp(-x^2) f(x) dx``, exact for degree ``<= 2 order - 1``.

    Nodes are the eigenvalues of the symmetric Jacobi matrix with zero diagonal
    and off-diagonal ``sqrt(j/2)``; weights are ``sqrt(pi)`` times the squared
    first eigenvector components.
    """
    if order < 1:
        raise PreconditionError(f"order must be >= 1, got {order}")
    if order == 1:
        return QuadratureRule(np.zeros(1), np.array([math.sqrt(math.pi)]))
    off = np.sqrt(np.arange(1, order) / 2.0)
    nodes, vecs = scipy.linalg.eigh_tridiagonal(np.zeros(order), off)
    weights = math.sqrt(math.pi) * vecs[0] ** 2
    # symmetrize: the rule is exactly even
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return QuadratureRule(nodes, weights)


def quadrature_order(N: int) -> int:
    return max(N + 1, 8)


def p_quadrature(args, rotation) -> float:
    """Hermite integral representation of ``P_{r,s}(i, k; N)`` on a tensor Gauss-Hermite grid.

    ``R13^-i R23^-k R33^-l C(N; r, s)^(1/2) / (2^N pi^(3/2) N!)`` times
    ``int e^{-|x|^2} H_r(y1) H_s(y2) H_t(y3) H_i(x1) H_k(x2) H_l(x3) dx`` with
    ``y = R^T x``.  The integrand over the Gaussian is a polynomial of degree
    ``2N``, so ``N + 1`` nodes per axis are already exact.
    """
    from .bikraw import SingularParameterError, _as_matrix

    r, s, i, k, N = args.r, args.s, args.i, args.k, args.N
    R = _as_matrix(rotation)
    t, l = args.t, args.l
    for name, val, power in (("R13", R[0, 2], i), ("R23", R[1, 2], k), ("R33", R[2, 2], l)):
        if power and abs(val) < 1e-10:
            raise SingularParameterError(name, float(val))
    rule = gauss_hermite(quadrature_order(N))
    x = rule.nodes
    g1, g2, g3 = np.meshgrid(x, x, x, indexing="ij")
    w3 = np.einsum("a,b,c->abc", rule.weights, rule.weights, rule.weights)
    # rotated coordinates y_j = sum_a R[a, j] x_a
    y1 = R[0, 0] * g1 + R[1, 0] * g2 + R[2, 0] * g3
    y2 = R[0, 1] * g1 + R[1, 1] * g2 + R[2, 1] * g3
    y3 = R[0, 2] * g1 + R[1, 2] * g2 + R[2, 2] * g3
    # Hermite values on each axis computed once and broadcast
    hx = hermite_table(N, x)
    fixed = hx[i][:, None, None] * hx[k][None, :, None] * hx[l][None, None, :]
    rotated = hermite_table(r, y1)[r] * hermite_table(s, y2)[s] * hermite_table(t, y3)[t]
    integral = math.fsum((w3 * fixed * rotated).ravel())
    pref = math.sqrt(trinomial_exact(N, r, s)) / (2.0**N * math.pi**1.5 * math.factorial(N))
    return pref * integral / (R[0, 2] ** i * R[1, 2] ** k * R[2, 2] ** l)


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    @classmethod
    def from_polar(cls, rho: float, phi: float, z: float) -> "Point3":
        return cls(rho * math.cos(phi), rho * math.sin(phi), z)

    @property
    def rho(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def phi(self) -> float:
        return math.atan2(self.y, self.x) % (2 * math.pi)


def psi_cartesian(state, pt: Point3) -> float:
    nx, ny, nz = state
    N = nx + ny + nz
    norm = math.sqrt(1.0 / (2.0**N * math.pi**1.5 * math.factorial(nx) * math.factorial(ny) * math.factorial(nz)))
    gauss = math.exp(-(pt.x**2 + pt.y**2 + pt.z**2) / 2)
    return norm * gauss * hermite(nx, pt.x) * hermite(ny, pt.y) * hermite(nz, pt.z)


def psi_polar(state, pt: Point3) -> complex:
    """Polar wavefunction, ``(-1)^n_rho`` phase and ``e^{i m phi}`` included."""
    n_rho, m, n_z = state.n_rho, state.m, state.n_z
    am = abs(m)
    rho, phi = pt.rho, pt.phi
    norm = math.sqrt(math.factorial(n_rho) / (2.0**n_z * math.factorial(n_z) * math.factorial(n_rho + am)))
    radial = rho**am * laguerre(n_rho, am, rho * rho) * math.exp(-(rho * rho + pt.z**2) / 2)
    amp = (-1) ** n_rho * math.pi**-0.75 * norm * radial * hermite(n_z, pt.z)
    return amp * complex(math.cos(m * phi), math.sin(m * phi))

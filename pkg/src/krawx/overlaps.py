"""Overlap coefficients between the Cartesian, polar and spherical bases of one
oscillator energy eigenspace, each written through su(1,1) Clebsch-Gordan
coefficients.

Label orders used for matrices (stable contract):

* Cartesian ``(nx, ny, nz)``: as :func:`krawx.oscrep.enumerate_basis`.
* polar ``(n_rho, m, n_z)``: ``m`` ascending, then ``n_rho`` ascending
  (``n_z = N - 2 n_rho - |m|``).
* spherical ``(n_r, ell, m)``: ``ell`` ascending (same parity as ``N``), then
  ``m`` ascending (``n_r = (N - ell) / 2``).

Selection-rule zeros are returned as exact ``0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .oscrep import enumerate_basis
from .su11cg import cg

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)
_I_POWERS = (1, 1j, -1, -1j)
_SQRT_HALF = 1 / math.sqrt(2)


@dataclass(frozen=True, order=True)
class PolarLabel:
    n_rho: int
    m: int
    n_z: int

    @property
    def N(self) -> int:
        return 2 * self.n_rho + abs(self.m) + self.n_z


@dataclass(frozen=True, order=True)
class SphericalLabel:
    n_r: int
    ell: int
    m: int

    @property
    def N(self) -> int:
        return 2 * self.n_r + self.ell


@dataclass(frozen=True)
class ParitySplit:
    """``w = 2 * w_tilde + q_w`` with ``q_w`` in ``{0, 1}``."""

    w: int

    @property
    def w_tilde(self) -> int:
        return self.w // 2

    @property
    def q_w(self) -> int:
        return self.w % 2


def _ipow(k: int, sign: int = 1) -> complex:
    """``(sign * i)^k`` exactly."""
    return _I_POWERS[(k * sign) % 4]


def _sigma(m: int) -> int:
    return 1 if m >= 0 else -1


def _nu_parity(q: int) -> Fraction:
    # 1/4 + q/2, the su(1,1) label of a one-axis state of parity q
    return QUARTER + Fraction(q, 2)


def cartesian_polar(cart, pol: PolarLabel) -> complex:
    """``<C nx, ny, nz | n_rho, m, n_z' P>``."""
    nx, ny, nz = cart
    if nz != pol.n_z or nx + ny != 2 * pol.n_rho + abs(pol.m):
        return 0
    px, py = ParitySplit(nx), ParitySplit(ny)
    coeff = cg(
        _nu_parity(px.q_w), px.w_tilde,
        _nu_parity(py.q_w), py.w_tilde,
        Fraction(1 + abs(pol.m), 2), pol.n_rho,
    )
    if coeff == 0:
        return 0
    phase = (-1) ** (px.w_tilde + pol.n_rho) * _ipow(ny, _sigma(pol.m))
    if pol.m != 0:
        coeff *= _SQRT_HALF
    return phase * coeff


def polar_spherical(pol: PolarLabel, sph: SphericalLabel) -> complex:
    """``<P n_rho, m, n_z | n_r, ell, m' S>``."""
    if pol.m != sph.m or pol.N != sph.N:
        return 0
    pz = ParitySplit(pol.n_z)
    coeff = cg(
        Fraction(1 + abs(pol.m), 2), pol.n_rho,
        _nu_parity(pz.q_w), pz.w_tilde,
        (sph.ell + Fraction(3, 2)) / 2, sph.n_r,
    )
    if coeff == 0:
        return 0
    return _ipow(sph.m + abs(sph.m)) * coeff


def cartesian_spherical(cart, sph: SphericalLabel) -> complex:
    """``<S n_r, ell, m | r, s, t C>``, the only surviving ``n_rho`` term of the
    intermediate polar sum."""
    r, s, t = cart
    m = sph.m
    if r + s + t != sph.N:
        return 0
    twice = r + s - abs(m)
    if twice < 0 or twice % 2:
        return 0
    n_rho = twice // 2
    pr, ps, pt = ParitySplit(r), ParitySplit(s), ParitySplit(t)
    nu_rho = Fraction(1 + abs(m), 2)
    first = cg(_nu_parity(pr.q_w), pr.w_tilde, _nu_parity(ps.q_w), ps.w_tilde, nu_rho, n_rho)
    if first == 0:
        return 0
    second = cg(nu_rho, n_rho, _nu_parity(pt.q_w), pt.w_tilde, (sph.ell + Fraction(3, 2)) / 2, sph.n_r)
    if second == 0:
        return 0
    phase = (-1) ** (pr.w_tilde + n_rho) * _ipow(m + abs(m), -1) * _ipow(s, -_sigma(m))
    value = first * second
    if m != 0:
        value *= _SQRT_HALF
    return phase * value


def spherical_cartesian(cart, sph: SphericalLabel) -> complex:
    """``<C r, s, t | n_r, ell, m S>``, the complex conjugate of :func:`cartesian_spherical`."""
    return complex(cartesian_spherical(cart, sph)).conjugate()


@lru_cache(maxsize=None)
def polar_labels(N: int) -> tuple[PolarLabel, ...]:
    out = []
    for m in range(-N, N + 1):
        for n_rho in range((N - abs(m)) // 2 + 1):
            out.append(PolarLabel(n_rho, m, N - 2 * n_rho - abs(m)))
    return tuple(out)


@lru_cache(maxsize=None)
def spherical_labels(N: int) -> tuple[SphericalLabel, ...]:
    return tuple(
        SphericalLabel((N - ell) // 2, ell, m)
        for ell in range(N % 2, N + 1, 2)
        for m in range(-ell, ell + 1)
    )


KINDS = ("cart_polar", "polar_spher", "cart_spher")


@lru_cache(maxsize=None)
def overlap_matrix(N: int, kind: str) -> np.ndarray:
    """Change-of-basis matrix over the ``N`` eigenspace.

    ``cart_polar[C, P] = <C|P>``, ``polar_spher[P, S] = <P|S>`` and
    ``cart_spher[C, S] = <C|S>``; rows and columns follow the label orders in
    the module docstring.
    """
    cart = enumerate_basis(N).states
    if kind == "cart_polar":
        rows, cols, fn = cart, polar_labels(N), cartesian_polar
    elif kind == "polar_spher":
        rows, cols, fn = polar_labels(N), spherical_labels(N), polar_spherical
    elif kind == "cart_spher":
        rows, cols, fn = cart, spherical_labels(N), spherical_cartesian
    else:
        raise ValueError(f"unknown overlap kind {kind!r}; expected one of {KINDS}")
    out = np.array([[fn(a, b) for b in cols] for a in rows], dtype=complex)
    out.setflags(write=False)
    return out

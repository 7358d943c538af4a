"""Named validation suites.

Each suite takes ``(n_max, seed)`` and returns a list of :class:`CaseRecord`;
a case's ``defect`` is the quantity compared against the tolerance.  Suites
draw their random inputs from ``numpy.random.default_rng(seed)`` in a fixed
order, so the records are a pure function of the arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import bikraw, oracles, oscrep, overlaps, rotations, su11cg
from .bikraw import BiKrawArgs


@dataclass(frozen=True)
class CaseRecord:
    labels: dict
    value: float
    defect: float


@dataclass(frozen=True)
class SuiteSpec:
    run: Callable[[int, int], list]
    n_max: int
    tolerance: float
    doc: str = field(default="")


CG_NUS = (Fraction(1, 4), Fraction(3, 4), Fraction(1), Fraction(3, 2), Fraction(5, 2))
TRATNIK_ANGLES = (0.5, 0.9, 1.7)
GENERIC_FLOOR = 0.05


def _maxabs(a) -> float:
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def orthogonality(n_max: int, seed: int) -> list[CaseRecord]:
    rng = np.random.default_rng(seed)
    out = []
    for N in range(n_max + 1):
        angles = rotations.random_angles(rng, GENERIC_FLOOR)
        d = bikraw.orthonormality_defect(N, angles)
        out.append(CaseRecord({"N": N, "euler": list(angles)}, d, d))
    return out


def unitarity(n_max: int, seed: int) -> list[CaseRecord]:
    rng = np.random.default_rng(seed)
    out = []
    for N in range(n_max + 1):
        for kind in overlaps.KINDS:
            M = overlaps.overlap_matrix(N, kind)
            d = _maxabs(M.conj().T @ M - np.eye(M.shape[1]))
            out.append(CaseRecord({"N": N, "check": kind}, d, d))
        prod = overlaps.overlap_matrix(N, "cart_polar") @ overlaps.overlap_matrix(N, "polar_spher")
        d = _maxabs(prod - overlaps.overlap_matrix(N, "cart_spher"))
        out.append(CaseRecord({"N": N, "check": "composition"}, d, d))
        U = oscrep.unitary_matrix(N, rotations.random_angles(rng))
        d = _maxabs(U.conj().T @ U - np.eye(U.shape[0]))
        out.append(CaseRecord({"N": N, "check": "U"}, d, d))
    return out


CROSS_ROUTES = ("aomoto", "genfun", "interbasis", "quadrature")


def route_value(route: str, args: BiKrawArgs, angles: rotations.EulerAngles) -> float:
    if route == "aomoto":
        return bikraw.p_aomoto(args, angles)
    if route == "genfun":
        return bikraw.p_genfun(args, angles)
    if route == "interbasis":
        return bikraw.p_interbasis(args.r, args.s, args.i, args.k, args.N, angles)
    if route == "quadrature":
        return oracles.p_quadrature(args, angles)
    if route == "matexp":
        return bikraw.p_matexp(args.r, args.s, args.i, args.k, args.N, angles)
    raise ValueError(f"unknown route {route!r}")


def cross_route(n_max: int, seed: int, rotations_count: int = 5) -> list[CaseRecord]:
    """Every route against the matrix-exponential oracle over the weight.

    The defect is ``|P_route - P_oracle| / max(1, |P_oracle|)``: absolute for
    moderate values, relative once ``P`` grows like ``1 / W``.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(rotations_count):
        angles = rotations.random_angles(rng, GENERIC_FLOOR)
        for N in range(n_max + 1):
            worst = {name: 0.0 for name in CROSS_ROUTES}
            for r, s, i, k in bikraw.all_indices(N):
                args = BiKrawArgs(r, s, i, k, N)
                ref = route_value("matexp", args, angles)
                scale = max(1.0, abs(ref))
                for name in CROSS_ROUTES:
                    worst[name] = max(worst[name], abs(route_value(name, args, angles) - ref) / scale)
            for name in CROSS_ROUTES:
                out.append(CaseRecord({"N": N, "route": name, "euler": list(angles)}, worst[name], worst[name]))
    return out


def tratnik(n_max: int, seed: int) -> list[CaseRecord]:
    out = []
    for theta in TRATNIK_ANGLES:
        for chi in TRATNIK_ANGLES:
            for N in range(n_max + 1):
                d1 = bikraw.tratnik_one_check(theta, chi, N)
                d2 = bikraw.tratnik_bridge_check(theta, chi, N)
                out.append(CaseRecord({"N": N, "theta": theta, "chi": chi, "check": "tratnik-1"}, d1, d1))
                out.append(CaseRecord({"N": N, "theta": theta, "chi": chi, "check": "tratnik-2"}, d2, d2))
    for N in range(n_max + 1):
        d = bikraw.half_turn_check(N)
        out.append(CaseRecord({"N": N, "check": "half-turn"}, d, d))
    return out


def cg(n_max: int, seed: int) -> list[CaseRecord]:
    """Both orthonormality relations of each block, and closed form against recurrence."""
    out = []
    for nu1 in CG_NUS:
        for nu2 in CG_NUS:
            for N in range(n_max + 1):
                M = su11cg.cg_block(nu1, nu2, N)
                eye = np.eye(N + 1)
                d = max(_maxabs(M.T @ M - eye), _maxabs(M @ M.T - eye))
                labels = {"nu1": str(nu1), "nu2": str(nu2), "N": N}
                out.append(CaseRecord({**labels, "check": "orthonormality"}, d, d))
                d = _maxabs(M - su11cg.cg_block_recurrence(nu1, nu2, N))
                out.append(CaseRecord({**labels, "check": "recurrence"}, d, d))
    return out


def wigner(n_max: int, seed: int, triples: int = 20) -> list[CaseRecord]:
    rng = np.random.default_rng(seed)
    S = rotations.spherical_to_cartesian_l1()
    out = []
    for _ in range(triples):
        angles = rotations.random_angles(rng)
        for ell in range(n_max + 1):
            D = rotations.wigner_block(ell, angles)
            d = _maxabs(D.conj().T @ D - np.eye(2 * ell + 1))
            out.append(CaseRecord({"ell": ell, "euler": list(angles), "check": "unitarity"}, d, d))
        d = _maxabs(S @ rotations.wigner_block(1, angles) @ S.conj().T - rotations.euler_to_rotation(angles))
        out.append(CaseRecord({"ell": 1, "euler": list(angles), "check": "rotation"}, d, d))
    return out


def wavefunction(n_max: int, seed: int, points: int = 20) -> list[CaseRecord]:
    """Polar states rebuilt from the Cartesian expansion; defect is relative per state."""
    rng = np.random.default_rng(seed)
    pts = [oracles.Point3(*rng.uniform(-2.5, 2.5, 3)) for _ in range(points)]
    out = []
    for N in range(n_max + 1):
        cart = oscrep.enumerate_basis(N).states
        for label in overlaps.polar_labels(N):
            ref = np.array([oracles.psi_polar(label, p) for p in pts])
            got = np.array(
                [sum(overlaps.cartesian_polar(c, label) * oracles.psi_cartesian(c, p) for c in cart) for p in pts]
            )
            d = _maxabs(got - ref) / _maxabs(ref)
            out.append(CaseRecord({"N": N, "n_rho": label.n_rho, "m": label.m, "n_z": label.n_z}, d, d))
    return out


def casimir(n_max: int, seed: int) -> list[CaseRecord]:
    out = []
    for N in range(n_max + 1):
        lx, ly, lz = oscrep.angular_momentum_matrices(N)
        d = max(
            _maxabs(lx @ ly - ly @ lx - 1j * lz),
            _maxabs(ly @ lz - lz @ ly - 1j * lx),
            _maxabs(lz @ lx - lx @ lz - 1j * ly),
        )
        out.append(CaseRecord({"N": N, "check": "commutators"}, d, d))
        match = oscrep.casimir_spectrum_check(N) == oscrep.expected_casimir_content(N)
        out.append(CaseRecord({"N": N, "check": "spectrum"}, float(match), 0.0 if match else math.inf))
    return out


SUITES: dict[str, SuiteSpec] = {
    "orthogonality": SuiteSpec(orthogonality, 8, 1e-9, "trinomial orthonormality of P"),
    "unitarity": SuiteSpec(unitarity, 8, 1e-10, "overlap matrices and U(R)"),
    "cross-route": SuiteSpec(cross_route, 6, 1e-8, "all routes against the oracle"),
    "tratnik": SuiteSpec(tratnik, 5, 1e-9, "Tratnik specialization and half-turn identities"),
    "cg": SuiteSpec(cg, 20, 1e-10, "su(1,1) Clebsch-Gordan blocks"),
    "wigner": SuiteSpec(wigner, 10, 1e-10, "Wigner D blocks"),
    "wavefunction": SuiteSpec(wavefunction, 4, 1e-8, "polar phases from wavefunctions"),
    "casimir": SuiteSpec(casimir, 10, 1e-12, "so(3) generators"),
}

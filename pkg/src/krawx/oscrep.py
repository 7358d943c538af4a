"""The SO(3) representation on one energy eigenspace of the 3D oscillator.

Everything here is brute force on purpose: the Cartesian basis is enumerated,
the angular momentum generators are assembled from ladder-operator actions,
and ``U(R)`` is a product of matrix exponentials.  Other modules are checked
against these matrices.

Basis order (public contract): states ``(a, b, c)`` with ``a + b + c = N`` in
lexicographic order of ``(a, b)``, so that

    index(a, b, c) = sum_{a' < a} (N - a' + 1) + b.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .polyfun import PreconditionError
from .rotations import EulerAngles


@dataclass(frozen=True, order=True)
class Composition3:
    a: int
    b: int
    c: int

    @property
    def N(self) -> int:
        return self.a + self.b + self.c

    def __iter__(self):
        return iter((self.a, self.b, self.c))


@dataclass(frozen=True)
class EigenspaceBasis:
    N: int
    states: tuple[Composition3, ...]

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state) -> int:
        a, b, c = state
        if a + b + c != self.N or min(a, b, c) < 0:
            raise PreconditionError(f"state {tuple(state)} is not in the N={self.N} eigenspace")
        return basis_index(self.N, a, b)


def basis_index(N: int, a: int, b: int) -> int:
    """Closed-form position of ``(a, b, N-a-b)``; see the module docstring."""
    return a * (N + 1) - a * (a - 1) // 2 + b


@lru_cache(maxsize=None)
def enumerate_basis(N: int) -> EigenspaceBasis:
    states = tuple(Composition3(a, b, N - a - b) for a in range(N + 1) for b in range(N - a + 1))
    return EigenspaceBasis(N, states)


def _hop(N: int, src: int, dst: int) -> np.ndarray:
    """Matrix of ``a_dst^dagger a_src`` on the eigenspace (axes 0, 1, 2 = x, y, z)."""
    basis = enumerate_basis(N)
    out = np.zeros((len(basis), len(basis)))
    for col, state in enumerate(basis.states):
        occ = list(state)
        if occ[src] == 0:
            continue
        amp = math.sqrt(occ[src] * (occ[dst] + 1))
        occ[src] -= 1
        occ[dst] += 1
        out[basis.index(occ), col] = amp
    return out


@lru_cache(maxsize=None)
def angular_momentum_matrices(N: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(Lx, Ly, Lz)`` with ``L_x = -i(a_y^+ a_z - a_z^+ a_y)`` and cyclic."""
    def gen(i: int, j: int) -> np.ndarray:
        # -i (a_i^+ a_j - a_j^+ a_i)
        m = -1j * (_hop(N, j, i) - _hop(N, i, j))
        m.setflags(write=False)
        return m

    return gen(1, 2), gen(2, 0), gen(0, 1)


@lru_cache(maxsize=None)
def _eig(N: int, axis: int):
    w, v = np.linalg.eigh(angular_momentum_matrices(N)[axis])
    return w, v


def exp_generator(N: int, axis: int, theta: float) -> np.ndarray:
    """``exp(-i theta L_axis)`` through the eigendecomposition of the Hermitian generator."""
    w, v = _eig(N, axis)
    return (v * np.exp(-1j * theta * w)) @ v.conj().T


def unitary_matrix(N: int, angles: EulerAngles) -> np.ndarray:
    """``U(R) = exp(-i gamma Lz) exp(-i beta Ly) exp(-i alpha Lz)`` in the Cartesian basis."""
    return exp_generator(N, 2, angles.gamma) @ exp_generator(N, 1, angles.beta) @ exp_generator(N, 2, angles.alpha)


def matrix_element_oracle(N: int, angles: EulerAngles, row, col) -> complex:
    """``<row| U(R) |col>`` for Cartesian states ``row = (i, k, l)``, ``col = (r, s, t)``."""
    basis = enumerate_basis(N)
    if sum(row) != N or sum(col) != N:
        raise PreconditionError(f"states {tuple(row)}, {tuple(col)} are not both in the N={N} eigenspace")
    return complex(unitary_matrix(N, angles)[basis.index(row), basis.index(col)])


def casimir_spectrum_check(N: int, atol: float = 1e-8) -> dict[int, int]:
    """Decompose ``Lx^2 + Ly^2 + Lz^2`` into ``{ell: multiplicity}``.

    Raises if an eigenvalue is not of the form ``ell (ell + 1)``.
    """
    lx, ly, lz = angular_momentum_matrices(N)
    evals = np.linalg.eigvalsh(lx @ lx + ly @ ly + lz @ lz)
    counts: Counter[int] = Counter()
    for ev in evals:
        ell = int(round((-1 + math.sqrt(1 + 4 * max(ev, 0.0))) / 2))
        if abs(ell * (ell + 1) - ev) > atol:
            raise ArithmeticError(f"Casimir eigenvalue {ev} is not ell(ell+1)")
        counts[ell] += 1
    return dict(sorted(counts.items(), reverse=True))


def expected_casimir_content(N: int) -> dict[int, int]:
    """``{ell: 2 ell + 1}`` for ``ell = N, N-2, ..., 1 or 0``."""
    return {ell: 2 * ell + 1 for ell in range(N, -1, -2)}

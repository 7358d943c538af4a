import math

import numpy as np
import pytest

from krawx.oscrep import angular_momentum_matrices, enumerate_basis, unitary_matrix
from krawx.overlaps import (
    KINDS,
    ParitySplit,
    PolarLabel,
    SphericalLabel,
    cartesian_polar,
    cartesian_spherical,
    overlap_matrix,
    polar_labels,
    polar_spherical,
    spherical_cartesian,
    spherical_labels,
)
from krawx.rotations import EulerAngles, wigner_block

import scipy.linalg

R2 = 1 / math.sqrt(2)


def test_parity_split():
    assert (ParitySplit(7).w_tilde, ParitySplit(7).q_w) == (3, 1)
    assert (ParitySplit(4).w_tilde, ParitySplit(4).q_w) == (2, 0)


def test_label_counts():
    for N in range(8):
        n = (N + 1) * (N + 2) // 2
        assert len(polar_labels(N)) == n == len(spherical_labels(N))
        assert all(p.N == N for p in polar_labels(N))
        assert all(s.N == N for s in spherical_labels(N))


@pytest.mark.parametrize("t", [0, 1, 3])
def test_cartesian_polar_examples(t):
    assert cartesian_polar((0, 0, t), PolarLabel(0, 0, t)) == 1
    assert cartesian_polar((1, 0, t), PolarLabel(0, 1, t)) == pytest.approx(R2, abs=1e-15)
    assert cartesian_polar((0, 1, t), PolarLabel(0, -1, t)) == pytest.approx(-1j * R2, abs=1e-15)
    # n_z mismatch
    assert cartesian_polar((1, 0, t), PolarLabel(0, 1, t + 1)) == 0


def test_polar_spherical_examples():
    assert polar_spherical(PolarLabel(0, 0, 0), SphericalLabel(0, 0, 0)) == 1
    assert polar_spherical(PolarLabel(0, 1, 0), SphericalLabel(0, 1, 1)) == -1
    assert polar_spherical(PolarLabel(0, 1, 0), SphericalLabel(0, 1, -1)) == 0


def test_cartesian_spherical_examples():
    assert cartesian_spherical((0, 0, 0), SphericalLabel(0, 0, 0)) == 1
    # r + s - |m| odd
    assert cartesian_spherical((1, 1, 0), SphericalLabel(0, 2, 1)) == 0
    v = cartesian_spherical((1, 0, 1), SphericalLabel(0, 2, 1))
    assert spherical_cartesian((1, 0, 1), SphericalLabel(0, 2, 1)) == complex(v).conjugate()


@pytest.mark.parametrize("N", range(9))
@pytest.mark.parametrize("kind", KINDS)
def test_unitary(N, kind):
    M = overlap_matrix(N, kind)
    np.testing.assert_allclose(M.conj().T @ M, np.eye(M.shape[0]), atol=1e-10)


@pytest.mark.parametrize("N", range(9))
def test_composition(N):
    prod = overlap_matrix(N, "cart_polar") @ overlap_matrix(N, "polar_spher")
    np.testing.assert_allclose(prod, overlap_matrix(N, "cart_spher"), atol=1e-10)


@pytest.mark.parametrize("N", range(6))
def test_polar_states_diagonalize_lz(N):
    lz = angular_momentum_matrices(N)[2]
    P = overlap_matrix(N, "cart_polar")
    ms = [p.m for p in polar_labels(N)]
    np.testing.assert_allclose(P.conj().T @ lz @ P, np.diag(ms), atol=1e-12)


@pytest.mark.parametrize("N", range(6))
def test_spherical_states_carry_standard_d_matrices(N):
    # C^dagger U C is block diagonal with the Wigner blocks, so the family is a
    # standard (Condon-Shortley) basis of each irreducible component
    a = EulerAngles(0.4, 1.2, -0.7)
    C = overlap_matrix(N, "cart_spher")
    blocks = scipy.linalg.block_diag(*[wigner_block(ell, a) for ell in range(N % 2, N + 1, 2)])
    np.testing.assert_allclose(C.conj().T @ unitary_matrix(N, a) @ C, blocks, atol=1e-12)


def test_matrices_are_read_only():
    with pytest.raises(ValueError):
        overlap_matrix(2, "cart_polar")[0, 0] = 0


def test_unknown_kind():
    with pytest.raises(ValueError):
        overlap_matrix(1, "polar_cart")


def test_polar_cartesian_rows_cover_eigenspace():
    assert overlap_matrix(3, "cart_polar").shape == (len(enumerate_basis(3).states), 10)

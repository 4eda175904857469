import math

import numpy as np
import pytest
from pydantic import ValidationError

from app.middleware.error import DomainError, ValidationFailure
from app.models import ParabolicChainPotential
from app.schemas import ChainHamiltonian, RingHamiltonian
from app.services.lattice import (
    bloch_rotation_check, chain_from_band, chain_matrix, chain_spectrum,
    circulant_nearest_neighbor, circulant_spectrum, distinct_levels,
    eigenstate_coefficients, intraband_symmetry_check, ring_from_nearest_neighbor,
    ring_labels, ring_matrix, toeplitz_spectrum,
)
from app.services.potentials import build_context
from app.services.semiclassics import band_energies
from app.services.tridiagonal import sturm_eigenvalues


def _symmetric_couplings(rng, N):
    h = rng.normal(size=N)
    return (h + np.roll(h[::-1], 1)) / 2.0


# Test small Toeplitz spectra
def test_toeplitz_small():
    values, _ = toeplitz_spectrum(2)
    assert values == pytest.approx([1.0, -1.0])
    values, _ = toeplitz_spectrum(3)
    assert values == pytest.approx([math.sqrt(2.0), 0.0, -math.sqrt(2.0)], abs=1e-15)


# Test the Toeplitz closed form against Sturm bisection
def test_toeplitz_against_bisection():
    for N in range(1, 201):
        values, vectors = toeplitz_spectrum(N)
        numeric = sturm_eigenvalues(np.zeros(N), np.ones(N - 1))
        np.testing.assert_allclose(np.sort(values), numeric, atol=1e-10)

        T = np.diag(np.ones(N - 1), 1) + np.diag(np.ones(N - 1), -1)
        residual = T @ vectors - vectors * np.array(values)
        assert np.max(np.linalg.norm(residual, axis=0)) < 1e-10


# Test chain eigenvectors are orthonormal
def test_chain_eigenvectors_orthonormal():
    for N in (1, 2, 7, 50, 200):
        _, vectors = toeplitz_spectrum(N)
        np.testing.assert_allclose(vectors.T @ vectors, np.eye(N), atol=1e-12)


# Test symmetric and antisymmetric two-well states
def test_eigenstate_coefficients_two_wells():
    symmetric = eigenstate_coefficients(2, 1)
    antisymmetric = eigenstate_coefficients(2, 2)
    assert symmetric[0] == pytest.approx(symmetric[1])
    assert antisymmetric[0] == pytest.approx(-antisymmetric[1])
    assert np.linalg.norm(symmetric) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        eigenstate_coefficients(2, 3)


# Test chain levels from a band equal the band energies
def test_chain_from_band():
    model = ParabolicChainPotential(omega=1.0, a=6.0, n_wells=5)
    ctx = build_context(model)
    for n in (0, 1):
        band = band_energies(model, ctx, n)
        chain = chain_from_band(band)
        assert chain.N == 5
        assert chain_spectrum(chain) == band.energies


# Test the parity convention of a two-level chain
def test_chain_two_levels():
    levels = chain_spectrum(ChainHamiltonian(N=2, diagonal=0.0, off_diagonal=-0.5))
    assert levels == pytest.approx([-0.5, 0.5])


# Test the chain spectrum against dense diagonalization
def test_chain_against_dense():
    rng = np.random.default_rng(11)
    chain = ChainHamiltonian(N=50, diagonal=0.3, off_diagonal=float(rng.uniform(-1, 1)))
    dense = np.linalg.eigvalsh(chain_matrix(chain))
    np.testing.assert_allclose(np.sort(chain_spectrum(chain)), dense, atol=1e-10)
    assert distinct_levels(chain_spectrum(chain)) == 50


# Test the intraband symmetry identity
def test_intraband_symmetry_sweep():
    assert intraband_symmetry_check(5, 2) < 1e-14
    assert intraband_symmetry_check(7, 4) < 1e-14
    worst = max(intraband_symmetry_check(N, s) for N in range(1, 65) for s in range(1, N + 1))
    assert worst < 1e-12


# Test ring labels
def test_ring_labels():
    assert ring_labels(4) == [-2, -1, 0, 1]
    assert ring_labels(5) == [-2, -1, 0, 1, 2]


# Test small ring spectra
def test_circulant_small():
    levels = circulant_spectrum(RingHamiltonian(h=[0.5, 0.2, 0.2]))
    energies = {level.label: level.energy for level in levels}
    assert energies[0] == pytest.approx(0.9)
    assert energies[1] == pytest.approx(0.3)
    assert energies[-1] == energies[1]

    levels = circulant_spectrum(RingHamiltonian(h=[1.0, 0.25, 0.0, 0.25]))
    assert sorted(level.energy for level in levels) == pytest.approx([0.5, 1.0, 1.0, 1.5])


# Test ring spectra against dense and FFT diagonalization
def test_circulant_against_dense():
    rng = np.random.default_rng(3)
    for N in range(2, 65):
        ring = RingHamiltonian(h=_symmetric_couplings(rng, N).tolist())
        levels = circulant_spectrum(ring)
        energies = np.sort([level.energy for level in levels])
        np.testing.assert_allclose(energies, np.linalg.eigvalsh(ring_matrix(ring)), atol=1e-10)
        np.testing.assert_allclose(energies, np.sort(np.fft.fft(ring.h).real), atol=1e-10)

        by_label = {level.label: level.energy for level in levels}
        for label, energy in by_label.items():
            if -label in by_label:
                assert by_label[-label] == energy

        single = [level for level in levels if not level.degenerate]
        assert len(single) == (2 if N % 2 == 0 else 1)
        assert distinct_levels(energies) == N // 2 + 1


# Test asymmetric couplings are rejected
def test_ring_rejects_asymmetric_couplings():
    with pytest.raises(ValidationError):
        RingHamiltonian(h=[0.0, 0.1, 0.0, 0.2])


# Test the nearest-neighbour ring
def test_circulant_nearest_neighbor():
    levels = circulant_nearest_neighbor(1.0, 0.25, 2)
    assert sorted(level.energy for level in levels) == pytest.approx([0.5, 1.5])

    for N in (2, 3, 8, 13):
        direct = sorted(level.energy for level in circulant_nearest_neighbor(0.1, -0.3, N))
        general = sorted(level.energy for level in circulant_spectrum(ring_from_nearest_neighbor(0.1, -0.3, N)))
        assert direct == pytest.approx(general, abs=1e-12)

    with pytest.raises(ValidationFailure):
        circulant_nearest_neighbor(0.0, 1.0, 1)


# Test ring versus chain degeneracy counts
def test_ring_versus_chain_levels():
    ring = circulant_nearest_neighbor(0.0, -0.1, 8)
    chain = chain_spectrum(ChainHamiltonian(N=8, diagonal=0.0, off_diagonal=-0.1))
    assert distinct_levels([level.energy for level in ring]) == 5
    assert distinct_levels(chain) == 8
    assert [level.label for level in ring if not level.degenerate] == [-4, 0]

    odd = circulant_nearest_neighbor(0.0, -0.1, 5)
    assert [level.label for level in odd if not level.degenerate] == [0]


# Test the Bloch rotation identity
def test_bloch_rotation():
    assert bloch_rotation_check(6, 2, 0) == 0.0
    assert bloch_rotation_check(6, 2, 6) < 1e-14
    worst = max(bloch_rotation_check(N, s, k)
                for N in range(1, 33) for s in ring_labels(N) for k in range(N + 1))
    assert worst < 1e-12

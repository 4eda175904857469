import logging
import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.linalg import circulant

from app.config import DEGENERACY_TOL
from app.middleware.error import DomainError, ValidationFailure
from app.schemas import BandResult, ChainHamiltonian, RingHamiltonian, RingLevel
from app.services.semiclassics import bloch_phases, phase_cosine

logger = logging.getLogger(__name__)


# Open chain
def toeplitz_spectrum(N: int) -> Tuple[List[float], np.ndarray]:
    """
    Eigenvalues 2cos(s pi/(N+1)), s = 1..N, of the matrix with ones on the
    first off-diagonals, and the matching unit eigenvectors as columns.
    """
    phases = bloch_phases(N)
    eigenvalues = [2.0 * phase_cosine(phase) for phase in phases]
    vectors = np.column_stack([eigenstate_coefficients(N, s) for s in range(1, N + 1)])
    return eigenvalues, vectors


def eigenstate_coefficients(N: int, s: int) -> np.ndarray:
    if N < 1:
        raise ValidationFailure(f"N must be at least 1, got {N}")
    if not 1 <= s <= N:
        raise DomainError(f"level s must be in 1..{N}, got {s}")
    j = np.arange(1, N + 1)
    return math.sqrt(2.0 / (N + 1)) * np.sin(j * (math.pi * (s / (N + 1))))


def chain_from_band(band: BandResult) -> ChainHamiltonian:
    sign = 1.0 if band.n % 2 else -1.0
    return ChainHamiltonian(N=band.N, diagonal=band.E_n0,
                            off_diagonal=sign * band.Delta_n / 2.0, n=band.n)


def chain_spectrum(H: ChainHamiltonian) -> List[float]:
    """Chain levels in s order (s = 1..N), not sorted"""
    return [H.diagonal + 2.0 * H.off_diagonal * phase_cosine(phase) for phase in bloch_phases(H.N)]


def chain_matrix(H: ChainHamiltonian) -> np.ndarray:
    matrix = np.diag(np.full(H.N, H.diagonal))
    if H.N > 1:
        off = np.full(H.N - 1, H.off_diagonal)
        matrix += np.diag(off, 1) + np.diag(off, -1)
    return matrix


def intraband_symmetry_check(N: int, s: int) -> float:
    """max_j |(-1)^j sin((j+1)(N+1-s)pi/(N+1)) - sin((j+1)s pi/(N+1))|"""
    if not 1 <= s <= N:
        raise DomainError(f"level s must be in 1..{N}, got {s}")
    j = np.arange(N)
    mirrored = (-1.0) ** j * np.sin((j + 1) * (math.pi * ((N + 1 - s) / (N + 1))))
    direct = np.sin((j + 1) * (math.pi * (s / (N + 1))))
    return float(np.max(np.abs(mirrored - direct)))


# Ring
def ring_labels(N: int) -> List[int]:
    """Crystal momenta -floor(N/2) <= s < ceil(N/2)"""
    return list(range(-(N // 2), (N + 1) // 2))


def _levels(labels: Sequence[int], energy_of) -> List[RingLevel]:
    # one evaluation per |s| so that E_s and E_-s agree bitwise
    cache = {}
    levels = []
    label_set = set(labels)
    for label in labels:
        key = abs(label)
        if key not in cache:
            cache[key] = float(energy_of(key))
        partner = -label if (-label in label_set and label != -label) else None
        levels.append(RingLevel(label=label, energy=cache[key], partner=partner))
    return levels


def circulant_spectrum(H: RingHamiltonian) -> List[RingLevel]:
    """E_s = h_0 + sum_m h_m cos(2 pi m s / N)"""
    h = np.asarray(H.h, dtype=float)
    N = H.N
    m = np.arange(1, N)

    def energy(s: int) -> float:
        return h[0] + float(np.dot(h[1:], np.cos(2.0 * math.pi * m * s / N)))

    return _levels(ring_labels(N), energy)


def circulant_nearest_neighbor(h0: float, h1: float, N: int) -> List[RingLevel]:
    if N < 2:
        raise ValidationFailure(f"a ring needs at least two sites, got N={N}")

    def energy(s: int) -> float:
        return h0 + 2.0 * h1 * math.cos(2.0 * math.pi * s / N)

    return _levels(ring_labels(N), energy)


def ring_matrix(H: RingHamiltonian) -> np.ndarray:
    return circulant(np.asarray(H.h, dtype=float))


def ring_from_nearest_neighbor(h0: float, h1: float, N: int) -> RingHamiltonian:
    """Ring couplings (h0, h1, 0, ..., 0, h1); for N = 2 both bonds join the same pair"""
    if N < 2:
        raise ValidationFailure(f"a ring needs at least two sites, got N={N}")
    h = [0.0] * N
    h[0] = h0
    h[1] += h1
    h[N - 1] += h1
    return RingHamiltonian(h=h)


def bloch_rotation_check(N: int, s: int, k: int) -> float:
    """
    Rotating the well labels j -> j + k multiplies the ring eigenvector
    (e^{2 pi i j s/N})_j by e^{-2 pi i k s/N}; returns the max deviation.
    """
    if N < 1:
        raise ValidationFailure(f"N must be at least 1, got {N}")
    j = np.arange(N)
    vector = np.exp(2j * np.pi * j * s / N) / math.sqrt(N)
    rotated = np.roll(vector, k)
    expected = np.exp(-2j * np.pi * k * s / N) * vector
    return float(np.max(np.abs(rotated - expected)))


def distinct_levels(energies: Sequence[float], tol: float = DEGENERACY_TOL) -> int:
    """Number of distinct levels; neighbours closer than tol*max(1, |E|) count once"""
    values = np.sort(np.asarray(energies, dtype=float))
    if values.size == 0:
        return 0
    gaps = np.diff(values)
    scale = tol * np.maximum(1.0, np.abs(values[1:]))
    return int(1 + np.count_nonzero(gaps >= scale))

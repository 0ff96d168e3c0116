"""Dense diagonalization and spectral / entanglement diagnostics.

Gap-ratio statistics follow the standard convention r_i = min(d_i, d_{i+1}) /
max(d_i, d_{i+1}) on consecutive level spacings within a single symmetry
block, with a trimmed fraction of levels dropped at each spectral edge.
Reference values: GOE ~ 0.531, Poisson ~ 0.386.

Half-chain entanglement entropies are von Neumann entropies of the contiguous
cut sites {0..L/2-1} | {L/2..L-1}, computed from the singular values of the
2^{L/2} x 2^{L/2} reshape.  The chaotic-background reference value is

    S_RMT = (L/2) ln 2 + (1/2 + ln(1/2))/2 - 1/2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NonNormalizedError, SolverError, TooFewLevelsError

GOE_GAP_RATIO = 0.5307
POISSON_GAP_RATIO = 2.0 * np.log(2.0) - 1.0  # ~ 0.3863

_DEGENERACY_REL_TOL = 1e-12
_SCHMIDT_CUTOFF = 1e-12
_NORM_TOL = 1e-8


@dataclass
class EigenSolution:
    """Spectrum and eigenvectors of one sector block (energies ascending)."""

    energies: np.ndarray
    vectors: np.ndarray
    basis: object = None

    @property
    def dim(self):
        return len(self.energies)

    def residual(self, matrix):
        """max ||H v - E v|| over the block, for verification."""
        r = matrix @ self.vectors - self.vectors * self.energies[None, :]
        return np.abs(r).max()

    def eigenstate_full(self, index):
        """Unfold eigenvector `index` into the full 2^L basis."""
        if self.basis is None:
            raise SolverError("solution has no attached sector basis to unfold with")
        return self.basis.sector_to_full(self.vectors[:, index])


def diagonalize(sector_matrix):
    """Dense eigendecomposition of a SectorMatrix."""
    try:
        energies, vectors = np.linalg.eigh(sector_matrix.entries)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise SolverError(f"dense eigensolver failed: {exc}") from exc
    return EigenSolution(energies=energies, vectors=vectors, basis=sector_matrix.basis)


def gap_ratios(energies, trim_fraction=0.1):
    """Per-level gap ratios of a sorted spectrum after edge trimming.

    trim_fraction is the total fraction of levels dropped, split evenly
    between the two spectral edges (0.1 retains the central 90%).  Spacings
    degenerate to within 1e-12 of the bandwidth count as r = 0.
    """
    if not 0.0 <= trim_fraction < 0.5:
        raise TooFewLevelsError(f"trim_fraction must lie in [0, 0.5), got {trim_fraction}")
    e = np.sort(np.asarray(energies, dtype=float))
    n = len(e)
    cut = int(np.floor(0.5 * trim_fraction * n))
    e = e[cut : n - cut] if cut > 0 else e
    if len(e) < 3:
        raise TooFewLevelsError(f"need at least 3 levels after trimming, have {len(e)}")
    gaps = np.diff(e)
    bandwidth = e[-1] - e[0]
    tol = _DEGENERACY_REL_TOL * max(bandwidth, 1.0)
    gaps = np.where(gaps < tol, 0.0, gaps)
    lo = np.minimum(gaps[:-1], gaps[1:])
    hi = np.maximum(gaps[:-1], gaps[1:])
    with np.errstate(invalid="ignore", divide="ignore"):
        r = np.where(hi > 0, lo / np.where(hi > 0, hi, 1.0), 0.0)
    return r


def mean_gap_ratio(energies, trim_fraction=0.1):
    return float(np.mean(gap_ratios(energies, trim_fraction)))


def entanglement_entropy(psi, L):
    """Half-chain von Neumann entropy of a full-basis pure state.

    The first L/2 sites (low bits) form one factor; Schmidt values below 1e-12
    are dropped.  Raises NonNormalizedError if |psi| deviates from 1.
    """
    psi = np.asarray(psi)
    if psi.shape != (1 << L,):
        raise NonNormalizedError(f"expected full vector of length {1 << L}, got {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > _NORM_TOL:
        raise NonNormalizedError(f"state norm {norm} deviates from 1 beyond {_NORM_TOL}")
    half = 1 << (L // 2)
    # index = s_high * 2^{L/2} + s_low: rows are the upper half-chain
    mat = psi.reshape(half, half)
    sv = np.linalg.svd(mat, compute_uv=False)
    p = sv[sv > _SCHMIDT_CUTOFF] ** 2
    return float(-np.sum(p * np.log(p)))


def rmt_entropy(L):
    """Chaotic-eigenstate reference entropy for the half-chain cut."""
    return (L / 2) * np.log(2.0) + (0.5 + np.log(0.5)) / 2.0 - 0.5


def solution_entropies(solution, indices=None):
    """Half-chain entropies of (a subset of) eigenstates of a sector solution."""
    indices = list(range(solution.dim)) if indices is None else list(indices)
    L = solution.basis.L
    out = np.empty(len(indices))
    for j, idx in enumerate(indices):
        psi = solution.eigenstate_full(idx)
        out[j] = entanglement_entropy(psi / np.linalg.norm(psi), L)
    return out

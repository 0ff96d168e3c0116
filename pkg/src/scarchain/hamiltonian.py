"""Mixed-field Ising chain on a ring and its dimer-conserving effective model.

The microscopic Hamiltonian is

    H = sum_i  (mu/2) Z_i Z_{i+1}  -  t X_i  -  h Z_i        (periodic)

and the effective Hamiltonian obtained by rotating away the dimer-number
changing part of the transverse field at first order is

    H_eff = sum_i  (mu/2) Z_i Z_{i+1}  -  h Z_i  -  (t/2) (X_i - Z_{i-1} X_i Z_{i+1}).

H_eff conserves the dimer operator D = sum_i Z_i Z_{i+1} (it only flips spins
whose neighbors are anti-aligned).  The generating rotation S (antisymmetric,
real) is available for small chains to check the construction order by order.
"""

from dataclasses import dataclass

import numpy as np

from .basis import SectorBasis, _popcount, translate
from .errors import BadParamsError, ChainTooLargeError, DimensionMismatchError

SW_L_MAX = 12


@dataclass(frozen=True)
class ModelParams:
    """Couplings of the chain. mu sets the unit of energy (default 1)."""

    t: float
    h: float
    mu: float = 1.0

    def __post_init__(self):
        if self.t < 0 or self.h < 0:
            raise BadParamsError(f"t and h must be >= 0, got t={self.t}, h={self.h}")
        if self.mu <= 0:
            raise BadParamsError(f"mu must be > 0, got mu={self.mu}")


@dataclass
class SectorMatrix:
    """Dense Hamiltonian block in a symmetry-adapted basis."""

    entries: np.ndarray
    basis: SectorBasis
    params: ModelParams

    @property
    def dim(self):
        return self.entries.shape[0]

    def hermiticity_defect(self):
        scale = max(np.abs(self.entries).max(), 1.0)
        return np.abs(self.entries - self.entries.conj().T).max() / scale


def dimer_count(state, L):
    """D = sum_i z_i z_{i+1} of a configuration (aligned bonds minus walls)."""
    disagree = _popcount(np.asarray(state) ^ translate(np.asarray(state), L))
    out = L - 2 * disagree
    return int(out) if np.isscalar(state) else out


def _magnetization(states, L):
    return L - 2 * _popcount(states)


def diagonal_energy(states, L, params):
    """Classical (t=0) energy of configurations: (mu/2) D - h * sum_i z_i."""
    return 0.5 * params.mu * dimer_count(states, L) - params.h * _magnetization(states, L)


def _effective_hop_mask(states, L, site):
    """True where H_eff may flip `site`: its two neighbors are anti-aligned."""
    left = (states >> ((site - 1) % L)) & 1
    right = (states >> ((site + 1) % L)) & 1
    return left != right


def _build_sector(basis, params, effective):
    L = basis.L
    reps = basis.reps
    n = basis.dim
    mat = np.zeros((n, n), dtype=basis.dtype)
    cols = np.arange(n)
    mat[cols, cols] = diagonal_energy(reps, L, params)
    inv_norm = 1.0 / basis.norms
    for site in range(L):
        flipped = reps ^ (1 << site)
        if effective:
            active = _effective_hop_mask(reps, L, site)
        else:
            active = np.ones(n, dtype=bool)
        if not active.any():
            continue
        src = cols[active]
        tgt_rep = basis.rep_full[flipped[active]]
        tgt = basis.pos_of[tgt_rep]
        # hops into zero-norm orbits project to nothing in this sector
        keep = tgt >= 0
        src, tgt = src[keep], tgt[keep]
        amp = -params.t * basis.phase_to_rep(flipped[src]) * basis.norms[tgt] * inv_norm[src]
        np.add.at(mat, (tgt, src), amp)
    return SectorMatrix(entries=mat, basis=basis, params=params)


def build_ising(params, basis):
    """Hamiltonian block of the mixed-field chain in `basis`."""
    return _build_sector(basis, params, effective=False)


def build_effective(params, basis):
    """Hamiltonian block of the dimer-conserving effective model in `basis`."""
    return _build_sector(basis, params, effective=True)


def _check_full_L(L):
    # full-space builds have no evenness requirement (sector machinery does)
    if L < 2:
        raise DimensionMismatchError(f"L must be >= 2, got {L}")
    if L > 20:
        raise ChainTooLargeError(f"full-space build refused for L={L}")


def build_ising_full(params, L):
    """Dense 2^L x 2^L matrix of the chain (no symmetry reduction)."""
    _check_full_L(L)
    dim = 1 << L
    states = np.arange(dim)
    mat = np.zeros((dim, dim))
    mat[states, states] = diagonal_energy(states, L, params)
    for site in range(L):
        mat[states ^ (1 << site), states] += -params.t
    return mat


def build_effective_full(params, L):
    """Dense 2^L x 2^L matrix of the effective model."""
    _check_full_L(L)
    dim = 1 << L
    states = np.arange(dim)
    mat = np.zeros((dim, dim))
    mat[states, states] = diagonal_energy(states, L, params)
    for site in range(L):
        active = _effective_hop_mask(states, L, site)
        src = states[active]
        mat[src ^ (1 << site), src] += -params.t
    return mat


def apply_ising(params, L, psi):
    """Matrix-free H |psi> on the full basis."""
    psi = np.asarray(psi)
    _check_full_L(L)
    if psi.shape != (1 << L,):
        raise DimensionMismatchError(f"expected vector of length {1 << L}")
    states = np.arange(1 << L)
    out = diagonal_energy(states, L, params) * psi
    for site in range(L):
        out += -params.t * psi[states ^ (1 << site)]
    return out


def apply_effective(params, L, psi):
    """Matrix-free H_eff |psi> on the full basis."""
    psi = np.asarray(psi)
    _check_full_L(L)
    if psi.shape != (1 << L,):
        raise DimensionMismatchError(f"expected vector of length {1 << L}")
    states = np.arange(1 << L)
    out = diagonal_energy(states, L, params) * psi
    for site in range(L):
        active = _effective_hop_mask(states, L, site)
        src = states[active]
        out[src ^ (1 << site)] += -params.t * psi[src]
    return out


def build_sw_generator(params, L):
    """Real antisymmetric generator S of the first-order rotation.

    S = (-i t / 2 mu) sum_j [ P+_{j-1} Y_j P+_{j+1}  -  P-_{j-1} Y_j P-_{j+1} ],
    P± = (1 ± Z)/2.  It satisfies [S, H_0] = -(dimer-changing part of -t sum X)
    exactly, with H_0 the bond term.  Dense full-space build, capped at L=12.
    """
    _check_full_L(L)
    if L > SW_L_MAX:
        raise ChainTooLargeError(f"generator build capped at L={SW_L_MAX}, got {L}")
    coeff = params.t / (2.0 * params.mu)
    dim = 1 << L
    states = np.arange(dim)
    mat = np.zeros((dim, dim))
    for site in range(L):
        left = (states >> ((site - 1) % L)) & 1
        right = (states >> ((site + 1) % L)) & 1
        bit = (states >> site) & 1
        aligned = left == right
        # (-i)Y flips 0 -> 1 with +1 and 1 -> 0 with -1; the P- branch enters
        # with an overall minus sign.
        sign_flip = 1.0 - 2.0 * bit
        sign_branch = 1.0 - 2.0 * left
        src = states[aligned]
        amp = coeff * sign_flip[aligned] * sign_branch[aligned]
        mat[src ^ (1 << site), src] += amp
    return mat


def dimer_operator_full(L):
    """Diagonal of D = sum_i Z_i Z_{i+1} on the full basis."""
    return dimer_count(np.arange(1 << L), L).astype(float)

"""Quench dynamics: return fidelity of scar superpositions.

The canonical initial state is the equal superposition of the n=0 and n=2
antimagnon tower members.  Because it lives entirely in the (k=0, parity +1)
sector, the fidelity

    F(tau) = |<psi(0)| e^{-i H tau} |psi(0)>|^2
           = | sum_a |c_a|^2 exp(-i E_a tau) |^2

is evaluated from one dense diagonalization of that block.
"""

import numpy as np

from .basis import SymmetrySector, enumerate_sector
from .errors import NonNormalizedError
from .hamiltonian import build_ising
from .scars import ANTIMAGNON, ScarLabel, scar_state
from .spectral import diagonalize

_NORM_TOL = 1e-8


def prepare_initial(L):
    """(|S_0^2> + |S_2^2>)/sqrt(2) as a full-basis vector."""
    psi0, _ = scar_state(ScarLabel(ANTIMAGNON, 0), L)
    psi2, _ = scar_state(ScarLabel(ANTIMAGNON, 2), L)
    return (psi0 + psi2) / np.sqrt(2.0)


def default_times(t_max=50.0, step=0.05):
    return np.arange(0.0, t_max + 0.5 * step, step)


def fidelity_trace(solution, coeffs, times):
    """F(tau) for a state given by sector coefficients, from a solved block."""
    coeffs = np.asarray(coeffs)
    nrm = np.linalg.norm(coeffs)
    if abs(nrm - 1.0) > _NORM_TOL:
        raise NonNormalizedError(f"initial state norm {nrm} deviates from 1")
    weights = np.abs(solution.vectors.conj().T @ coeffs) ** 2
    phases = np.exp(-1j * np.outer(times, solution.energies))
    amp = phases @ weights
    return np.abs(amp) ** 2


def quench_fidelity(params, L, times=None, psi0_full=None):
    """Diagonalize the (k=0, +1) block at `params` and return (times, F).

    psi0_full defaults to the antimagnon n=0,2 superposition.
    """
    if times is None:
        times = default_times()
    basis = enumerate_sector(SymmetrySector(L, 0, +1))
    if psi0_full is None:
        psi0_full = prepare_initial(L)
    coeffs = basis.full_to_sector(psi0_full)
    nrm = np.linalg.norm(coeffs)
    if abs(nrm - 1.0) > 1e-6:
        raise NonNormalizedError(
            f"initial state is not contained in the (k=0,+1) sector (norm {nrm})"
        )
    solution = diagonalize(build_ising(params, basis))
    return times, fidelity_trace(solution, coeffs / nrm, times)


def long_time_mean(times, fidelity, tail_fraction=0.5):
    """Mean fidelity over the trailing fraction of the time window."""
    start = int(len(times) * (1.0 - tail_fraction))
    return float(np.mean(fidelity[start:]))

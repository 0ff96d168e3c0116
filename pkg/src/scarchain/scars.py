"""Scar towers of the effective model.

Two towers of exact H_eff eigenstates are built by repeated application of a
staggered, neighbor-projected spin-flip ladder on the two fully polarized
vacua:

* tower 1 ("magnon"): vacuum |1...1>, polarized *against* the longitudinal
  field (energy mu L/2 + h L, top of the spectrum); each ladder application
  lowers the energy by 2(mu + h).
* tower 2 ("antimagnon"): vacuum |0...0>, aligned with the field (energy
  mu L/2 - h L); each application lowers the energy by 2(mu - h).

The ladder for tower k is

    Q_k^dag = sum_i (-1)^i  P_{i-1} (flip_i) P_{i+1}

where P projects both neighbors onto the vacuum orientation and flip_i is the
X ± iY combination that sends the vacuum orientation to the flipped one (with
amplitude 2) and annihilates the flipped orientation.  Its action on bit
configurations is therefore real.  n ladder applications create n isolated
flipped spins; the tower terminates at the alternating packing n = L/2.

States carry momentum pi per ladder application, so even-n members live in the
(k=0, parity +1) sector.  The scar state is

    |S_n^k> = (1 / (n! sqrt(N(L,n)))) (Q_k^dag)^n |vacuum_k>

with N(L, n) the squared norm of (Q_k^dag)^n |vacuum> / n!.
"""

from dataclasses import dataclass

import numpy as np

from .basis import _check_L
from .errors import DimensionMismatchError, InvalidSectorError, VanishingScarError

MAGNON = 1
ANTIMAGNON = 2

_VANISH_TOL = 1e-24


@dataclass(frozen=True)
class ScarLabel:
    """Tower index (1 = magnon, 2 = antimagnon) and ladder power n."""

    tower: int
    n: int

    def __post_init__(self):
        if self.tower not in (MAGNON, ANTIMAGNON):
            raise InvalidSectorError(f"tower must be 1 or 2, got {self.tower}")
        if self.n < 0:
            raise InvalidSectorError(f"n must be >= 0, got {self.n}")


def vacuum_bit(tower):
    """Bit value every site holds in the tower's vacuum."""
    return 1 if tower == MAGNON else 0


def vacuum_state(tower, L):
    """Full-basis vector of the tower vacuum."""
    _check_L(L)
    psi = np.zeros(1 << L)
    idx = (1 << L) - 1 if tower == MAGNON else 0
    psi[idx] = 1.0
    return psi


def apply_ladder(tower, L, psi):
    """Apply Q_tower^dag to a full-basis vector.

    Site i contributes when i and both neighbors hold the vacuum orientation;
    the flip carries amplitude 2 * (-1)^i.
    """
    psi = np.asarray(psi, dtype=float)
    _check_L(L)
    if psi.shape != (1 << L,):
        raise DimensionMismatchError(f"expected vector of length {1 << L}")
    v = vacuum_bit(tower)
    states = np.arange(1 << L)
    out = np.zeros_like(psi)
    for site in range(L):
        here = (states >> site) & 1
        left = (states >> ((site - 1) % L)) & 1
        right = (states >> ((site + 1) % L)) & 1
        src = states[(here == v) & (left == v) & (right == v)]
        sign = -2.0 if site % 2 else 2.0
        out[src ^ (1 << site)] += sign * psi[src]
    return out


def scar_state(label, L):
    """Normalized scar state and its norm constant N(L, n).

    Raises VanishingScarError when n exceeds the packing bound L/2. The global
    phase is fixed by making the largest-magnitude coefficient positive.
    """
    _check_L(L)
    psi = vacuum_state(label.tower, L)
    for m in range(1, label.n + 1):
        psi = apply_ladder(label.tower, L, psi) / m
        if psi @ psi < _VANISH_TOL:
            raise VanishingScarError(
                f"ladder power n={label.n} annihilates the tower-{label.tower} "
                f"vacuum at L={L} (max packing is L/2 = {L // 2})"
            )
    norm_const = float(psi @ psi)
    psi = psi / np.sqrt(norm_const)
    if psi[np.argmax(np.abs(psi))] < 0:
        psi = -psi
    return psi, norm_const


def scar_energy(label, L, params):
    """Exact H_eff eigenvalue of the scar state (closed form).

    Vacuum energies are mu L/2 ± h L; each isolated flip breaks two aligned
    bonds (-2 mu) and moves the magnetization by two against/toward the field.
    """
    mu, h = params.mu, params.h
    if label.tower == MAGNON:
        return L * (mu / 2 + h) - 2 * label.n * (mu + h)
    return L * (mu / 2 - h) - 2 * label.n * (mu - h)


def max_ladder_power(L):
    """Largest n with a nonvanishing tower state (alternating packing)."""
    return L // 2


def sector_coefficients(label, L, sector_basis):
    """Scar state projected into a sector basis (no renormalization).

    Even-n states are entirely inside (k=0, parity +1); the projection norm is
    a consistency check for callers.
    """
    psi, _ = scar_state(label, L)
    return sector_basis.full_to_sector(psi)

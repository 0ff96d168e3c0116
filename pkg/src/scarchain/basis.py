"""Symmetry-adapted bases for periodic spin-1/2 chains.

Conventions used throughout the package:

* Site i of an L-site ring is bit i of an integer configuration label
  (site 0 = least significant bit).
* Bit value 0 encodes Z = +1 and bit value 1 encodes Z = -1, so z_i = 1 - 2*b_i.
* The translation T moves the spin at site i to site i+1 (cyclically);
  reflection is bond-centered, site i -> L-1-i (bit reversal).
* A normalized sector state built on representative a is an eigenvector of T
  with eigenvalue exp(+2j*pi*k/L) and, for k in {0, L/2}, of the reflection
  with eigenvalue `parity`.

Orbit representatives are the smallest integers in their symmetry orbit.
Enumeration is dense (all 2^L configurations visited), capped at L = 20.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ChainTooLargeError, DimensionMismatchError, InvalidSectorError

L_MAX = 20

_NORM_TOL = 1e-12


def _popcount(a):
    # bitwise_count yields uint8; widen so arithmetic like L - 2*count is safe
    a = np.asarray(a)
    try:
        return np.bitwise_count(a).astype(np.int64)
    except AttributeError:  # numpy < 2.0
        out = np.zeros(a.shape, dtype=np.int64)
        work = a.astype(np.int64, copy=True)
        while np.any(work):
            out += work & 1
            work >>= 1
        return out


def translate(state, L):
    """Shift every spin one site up the ring (site i -> site i+1)."""
    mask = (1 << L) - 1
    return ((state << 1) | (state >> (L - 1))) & mask


def reflect(state, L):
    """Bond-centered reflection: bit i -> bit L-1-i."""
    s = np.asarray(state)
    out = np.zeros_like(s)
    for i in range(L):
        out |= ((s >> i) & 1) << (L - 1 - i)
    if np.isscalar(state):
        return int(out)
    return out


def _check_L(L):
    if L % 2 != 0 or L < 2:
        raise InvalidSectorError(f"L must be even and >= 2, got {L}")
    if L > L_MAX:
        raise ChainTooLargeError(f"L={L} exceeds dense-enumeration cap {L_MAX}")


@dataclass(frozen=True)
class SymmetrySector:
    """Momentum (and optionally reflection-parity) block of a length-L ring.

    parity may only be resolved at k = 0 and k = L/2, where the reflection
    commutes with the momentum projector.
    """

    L: int
    k: int
    parity: int | None = None

    def __post_init__(self):
        _check_L(self.L)
        if not 0 <= self.k < self.L:
            raise InvalidSectorError(f"k must lie in [0, L), got k={self.k}, L={self.L}")
        if self.parity is not None:
            if self.parity not in (+1, -1):
                raise InvalidSectorError(f"parity must be +1, -1 or None, got {self.parity}")
            if self.k not in (0, self.L // 2):
                raise InvalidSectorError(
                    f"parity can only be resolved at k=0 or k=L/2, got k={self.k}"
                )

    @property
    def uses_reflection(self):
        return self.parity is not None

    @property
    def group_size(self):
        return 2 * self.L if self.uses_reflection else self.L

    def characters(self):
        """Characters chi(g) for g = T^j (and T^j R), ordered j = 0..L-1."""
        j = np.arange(self.L)
        phases = np.exp(-2j * np.pi * self.k * j / self.L)
        if self.uses_reflection:
            phases = np.concatenate([phases, self.parity * phases])
        if self.k in (0, self.L // 2):
            return phases.real.copy()
        return phases


@lru_cache(maxsize=8)
def _orbit_tables(L, use_reflection):
    """Full-space lookup: representative of every configuration and the group
    element (shift j, reflected flag) that maps the configuration to it."""
    dim = 1 << L
    n_group = 2 * L if use_reflection else L
    imgs = np.empty((n_group, dim), dtype=np.int64)
    cur = np.arange(dim, dtype=np.int64)
    for j in range(L):
        imgs[j] = cur
        cur = translate(cur, L)
    if use_reflection:
        cur = reflect(np.arange(dim, dtype=np.int64), L)
        for j in range(L):
            imgs[L + j] = cur
            cur = translate(cur, L)
    rep = imgs.min(axis=0)
    g_index = np.argmax(imgs == rep[None, :], axis=0).astype(np.int16)
    return rep, g_index


def _group_images(states, L, use_reflection):
    """Images of `states` under every group element, shape (|G|, len(states))."""
    n_group = 2 * L if use_reflection else L
    out = np.empty((n_group, len(states)), dtype=np.int64)
    cur = np.asarray(states, dtype=np.int64)
    for j in range(L):
        out[j] = cur
        cur = translate(cur, L)
    if use_reflection:
        cur = reflect(np.asarray(states, dtype=np.int64), L)
        for j in range(L):
            out[L + j] = cur
            cur = translate(cur, L)
    return out


def representative(state, L, use_reflection=True):
    """Canonical orbit element of `state` and the group element reaching it.

    Returns (rep, shift, reflected) with T^shift R^reflected (state) = rep;
    ties broken by scanning unreflected shifts first, then reflected ones.
    """
    _check_L(L)
    if not 0 <= state < (1 << L):
        raise DimensionMismatchError(f"state {state} outside [0, 2^{L})")
    rep_arr, g_index = _orbit_tables(L, use_reflection)
    g = int(g_index[state])
    return int(rep_arr[state]), g % L, g >= L


@dataclass
class SectorBasis:
    """Orthonormal symmetry-adapted basis of one sector.

    reps[a] is the representative configuration of basis state a and norms[a]
    the norm of the raw group average, so that
    |a~> = (1/norms[a]) * (1/|G|) * sum_g chi(g) U_g |reps[a]>.
    """

    sector: SymmetrySector
    reps: np.ndarray
    norms: np.ndarray
    chi: np.ndarray
    rep_full: np.ndarray = field(repr=False)
    g_index: np.ndarray = field(repr=False)
    pos_of: np.ndarray = field(repr=False)

    @property
    def L(self):
        return self.sector.L

    @property
    def dim(self):
        return len(self.reps)

    @property
    def dtype(self):
        return self.chi.dtype

    def phase_to_rep(self, states):
        """Amplitude factor chi(g) for the stored element g mapping each state
        to its representative (the phase a hop picks up in the sector matrix)."""
        return self.chi[self.g_index[states]]

    def sector_to_full(self, coeffs):
        """Expand sector coefficients into the full 2^L basis."""
        coeffs = np.asarray(coeffs)
        if coeffs.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected coefficient vector of length {self.dim}, got {coeffs.shape}"
            )
        out_dtype = np.result_type(self.chi.dtype, coeffs.dtype)
        psi = np.zeros(1 << self.L, dtype=out_dtype)
        weights = coeffs / (self.norms * self.sector.group_size)
        imgs = _group_images(self.reps, self.L, self.sector.uses_reflection)
        for g in range(self.sector.group_size):
            np.add.at(psi, imgs[g], self.chi[g] * weights)
        return psi

    def full_to_sector(self, psi):
        """Project a full 2^L vector onto the sector (coefficients of |a~>)."""
        psi = np.asarray(psi)
        if psi.shape != (1 << self.L,):
            raise DimensionMismatchError(
                f"expected full vector of length {1 << self.L}, got {psi.shape}"
            )
        out_dtype = np.result_type(self.chi.dtype, psi.dtype)
        coeffs = np.zeros(self.dim, dtype=out_dtype)
        imgs = _group_images(self.reps, self.L, self.sector.uses_reflection)
        for g in range(self.sector.group_size):
            coeffs += np.conj(self.chi[g]) * psi[imgs[g]]
        coeffs /= self.norms * self.sector.group_size
        return coeffs


def enumerate_sector(sector):
    """Build the symmetry-adapted basis of `sector`.

    Dense enumeration over all 2^L configurations; representatives with a
    vanishing group average (incompatible orbit period or parity) are dropped.
    """
    L = sector.L
    dim = 1 << L
    rep_full, g_index = _orbit_tables(L, sector.uses_reflection)
    reps_all = np.flatnonzero(rep_full == np.arange(dim))
    chi = sector.characters()
    imgs = _group_images(reps_all, L, sector.uses_reflection)
    stab = imgs == reps_all[None, :]
    norm2 = (chi.astype(np.complex128) @ stab) / sector.group_size
    if np.abs(norm2.imag).max(initial=0.0) > 1e-10:
        raise InvalidSectorError("stabilizer character sum came out non-real")
    norm2 = norm2.real
    keep = norm2 > _NORM_TOL
    reps = reps_all[keep]
    norms = np.sqrt(norm2[keep])
    pos_of = np.full(dim, -1, dtype=np.int64)
    pos_of[reps] = np.arange(len(reps))
    return SectorBasis(
        sector=sector,
        reps=reps,
        norms=norms,
        chi=chi,
        rep_full=rep_full,
        g_index=g_index,
        pos_of=pos_of,
    )


def all_sectors(L, split_parity=True):
    """Sector list partitioning the full space: generic k unresolved, k=0 and
    k=L/2 split by parity when split_parity is set."""
    _check_L(L)
    sectors = []
    for k in range(L):
        if split_parity and k in (0, L // 2):
            sectors.append(SymmetrySector(L, k, +1))
            sectors.append(SymmetrySector(L, k, -1))
        else:
            sectors.append(SymmetrySector(L, k))
    return sectors

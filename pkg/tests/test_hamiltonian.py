import numpy as np
import pytest
from conftest import classical_diag, dense_effective, dense_ising, zdiag

from scarchain.basis import SymmetrySector, all_sectors, enumerate_sector
from scarchain.errors import BadParamsError, ChainTooLargeError
from scarchain.hamiltonian import (
    ModelParams,
    apply_effective,
    apply_ising,
    build_effective,
    build_effective_full,
    build_ising,
    build_ising_full,
    build_sw_generator,
    diagonal_energy,
    dimer_count,
    dimer_operator_full,
)

P1 = ModelParams(t=0.3, h=0.7)


def test_params_validation():
    with pytest.raises(BadParamsError):
        ModelParams(t=-0.1, h=0.2)
    with pytest.raises(BadParamsError):
        ModelParams(t=0.1, h=-0.2)
    with pytest.raises(BadParamsError):
        ModelParams(t=0.1, h=0.2, mu=0.0)
    ModelParams(t=0.0, h=0.0)  # boundary values are fine


def test_dimer_count_examples():
    assert dimer_count(0b000000, 6) == 6  # all aligned
    assert dimer_count(0b111111, 6) == 6
    assert dimer_count(0b010101, 6) == -6  # fully staggered
    assert dimer_count(0b000001, 6) == 2  # one flip breaks two bonds
    assert dimer_count(0b001100, 6) == 2


def test_diagonal_energy_matches_kron_oracle():
    for L in (4, 6):
        states = np.arange(1 << L)
        got = diagonal_energy(states, L, P1)
        assert np.allclose(got, classical_diag(L, P1.h, P1.mu), atol=1e-13)


@pytest.mark.parametrize("L", [4, 6])
def test_full_builds_match_kron_oracle(L):
    assert np.abs(build_ising_full(P1, L) - dense_ising(L, P1.t, P1.h)).max() < 1e-13
    assert np.abs(build_effective_full(P1, L) - dense_effective(L, P1.t, P1.h)).max() < 1e-13


def test_free_spectrum_at_zero_fields():
    # t = h = 0 at L=4: E = D/2 with D in {+4 (x2), 0 (x12), -4 (x2)}
    e = np.sort(np.linalg.eigvalsh(build_ising_full(ModelParams(t=0.0, h=0.0), 4)))
    expect = np.sort([2.0] * 2 + [0.0] * 12 + [-2.0] * 2)
    assert np.allclose(e, expect, atol=1e-13)


@pytest.mark.parametrize("L", [6, 8])
def test_sector_spectra_reassemble_full_spectrum(L):
    full = np.sort(np.linalg.eigvalsh(dense_ising(L, P1.t, P1.h)))
    parts = []
    for sector in all_sectors(L):
        basis = enumerate_sector(sector)
        if basis.dim == 0:
            continue
        parts.append(np.linalg.eigvalsh(build_ising(P1, basis).entries))
    got = np.sort(np.concatenate(parts))
    assert len(got) == 1 << L
    assert np.abs(got - full).max() < 1e-10


def test_sector_blocks_are_hermitian():
    for sector in (SymmetrySector(8, 0, +1), SymmetrySector(8, 4, -1), SymmetrySector(8, 3)):
        basis = enumerate_sector(sector)
        assert build_ising(P1, basis).hermiticity_defect() < 1e-12
        assert build_effective(P1, basis).hermiticity_defect() < 1e-12


def test_matrix_free_apply_agrees_with_dense():
    L = 8
    rng = np.random.default_rng(3)
    psi = rng.standard_normal(1 << L)
    assert np.allclose(apply_ising(P1, L, psi), build_ising_full(P1, L) @ psi, atol=1e-10)
    assert np.allclose(
        apply_effective(P1, L, psi), build_effective_full(P1, L) @ psi, atol=1e-10
    )


def test_effective_model_conserves_dimer_number():
    L = 8
    D = np.diag(dimer_operator_full(L))
    Heff = build_effective_full(P1, L)
    assert np.abs(D @ Heff - Heff @ D).max() == 0.0
    # the full model does not
    H = build_ising_full(P1, L)
    assert np.abs(D @ H - H @ D).max() > 0.1


def test_generator_solves_the_bond_commutator_exactly():
    # [S, H_mu] = -(dimer-changing hopping), with H_mu the bond term alone
    L, t = 8, 0.04
    p = ModelParams(t=t, h=0.3)
    S = build_sw_generator(p, L)
    assert np.abs(S + S.T).max() == 0.0  # antisymmetric
    Hmu = np.diag(0.5 * dimer_operator_full(L))
    hop = dense_ising(L, t, 0.0) - np.diag(classical_diag(L, 0.0))
    hop_d = dense_effective(L, t, 0.0) - np.diag(classical_diag(L, 0.0))
    hop_od = hop - hop_d
    assert np.abs(S @ Hmu - Hmu @ S + hop_od).max() == 0.0


def test_field_commutator_is_purely_block_off_diagonal():
    L = 8
    S = build_sw_generator(ModelParams(t=0.04, h=0.3), L)
    field = np.diag(-0.3 * sum(zdiag(i, L) for i in range(L)))
    C = S @ field - field @ S
    D = dimer_operator_full(L)
    same_block = D[:, None] == D[None, :]
    assert np.abs(np.where(same_block, C, 0.0)).max() == 0.0
    assert np.abs(C).max() > 0.01


def _block_defect(L, t, h):
    p = ModelParams(t=t, h=h)
    H = dense_ising(L, t, h)
    H1 = H + build_sw_generator(p, L) @ H - H @ build_sw_generator(p, L)
    D = dimer_operator_full(L)
    same_block = D[:, None] == D[None, :]
    return np.abs(np.where(same_block, H1 - dense_effective(L, t, h), 0.0)).max()


def test_rotated_block_defect_is_second_order_and_field_free():
    d1 = _block_defect(8, 0.04, 0.3)
    assert abs(d1 - 0.0128) < 1e-9  # frozen; equals 8 t^2 at L=8
    assert _block_defect(8, 0.04, 0.9) == d1  # field drops out
    ratio = d1 / _block_defect(8, 0.02, 0.3)
    assert abs(ratio - 4.0) < 0.01  # halving t quarters the defect


def test_effective_spectrum_deviation_scales_as_t_squared():
    L, h = 8, 0.3

    def dev(t):
        p = ModelParams(t=t, h=h)
        e1 = np.linalg.eigvalsh(build_ising_full(p, L))
        e2 = np.linalg.eigvalsh(build_effective_full(p, L))
        return np.abs(e1 - e2).max()

    ratio = dev(0.04) / dev(0.02)
    assert 3.2 < ratio < 4.8


def test_size_caps():
    with pytest.raises(ChainTooLargeError):
        build_ising_full(P1, 21)
    with pytest.raises(ChainTooLargeError):
        build_sw_generator(P1, 14)

import numpy as np
import pytest
from conftest import dense_ising
from hypothesis import given, settings
from hypothesis import strategies as st

from scarchain.basis import SymmetrySector, enumerate_sector
from scarchain.errors import NonNormalizedError, TooFewLevelsError
from scarchain.hamiltonian import ModelParams, SectorMatrix, build_ising
from scarchain.spectral import (
    GOE_GAP_RATIO,
    POISSON_GAP_RATIO,
    EigenSolution,
    diagonalize,
    entanglement_entropy,
    gap_ratios,
    mean_gap_ratio,
    rmt_entropy,
    solution_entropies,
)


def _stub(matrix):
    return SectorMatrix(entries=matrix, basis=None, params=None)


def test_equally_spaced_levels_have_unit_ratio():
    e = np.linspace(0.0, 9.9, 100)
    assert np.allclose(gap_ratios(e, trim_fraction=0.0), 1.0)
    assert abs(mean_gap_ratio(e) - 1.0) < 1e-12


def test_trim_drops_total_fraction_split_between_edges():
    r = gap_ratios(np.arange(20.0), trim_fraction=0.2)  # 2 per edge -> 16 levels
    assert len(r) == 14
    # outliers at the edges are removed by the default trim
    e = np.concatenate([[-1e6], np.linspace(0, 1, 40), [1e6]])
    assert abs(mean_gap_ratio(e, trim_fraction=0.1) - 1.0) < 1e-9


def test_trim_validation_and_short_spectra():
    with pytest.raises(TooFewLevelsError):
        gap_ratios(np.arange(10.0), trim_fraction=0.5)
    with pytest.raises(TooFewLevelsError):
        gap_ratios(np.arange(10.0), trim_fraction=-0.1)
    with pytest.raises(TooFewLevelsError):
        gap_ratios(np.array([1.0, 2.0]))


def test_degenerate_gaps_count_as_zero_ratio():
    e = np.array([0.0, 1.0, 1.0, 2.0, 3.0, 4.5, 6.0])
    r = gap_ratios(e, trim_fraction=0.0)
    assert r[0] == 0.0 and r[1] == 0.0
    assert np.all(r >= 0.0) and np.all(r <= 1.0)


def test_goe_ensemble_calibration():
    rng = np.random.default_rng(2024)
    n, draws = 687, 16
    means = []
    for _ in range(draws):
        a = rng.standard_normal((n, n))
        means.append(mean_gap_ratio(np.linalg.eigvalsh(a + a.T)))
    assert abs(np.mean(means) - GOE_GAP_RATIO) < 0.01


def test_poisson_ensemble_calibration():
    rng = np.random.default_rng(2024)
    n, draws = 687, 16
    means = [mean_gap_ratio(np.sort(rng.uniform(size=n))) for _ in range(draws)]
    assert abs(np.mean(means) - POISSON_GAP_RATIO) < 0.01


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000), dim=st.integers(8, 40))
def test_eigensolution_invariants(seed, dim):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim))
    sol = diagonalize(_stub(a + a.T))
    assert np.all(np.diff(sol.energies) >= -1e-12)
    assert np.abs(sol.vectors.T @ sol.vectors - np.eye(dim)).max() < 1e-10
    assert sol.residual(a + a.T) < 1e-9 * max(np.abs(a + a.T).max(), 1.0)


def test_entropy_of_product_states_is_zero():
    L = 6
    psi = np.zeros(1 << L)
    psi[0] = 1.0
    assert entanglement_entropy(psi, L) == pytest.approx(0.0, abs=1e-12)
    # arbitrary product state across the cut
    rng = np.random.default_rng(5)
    lo = rng.standard_normal(1 << (L // 2))
    hi = rng.standard_normal(1 << (L // 2))
    psi = np.kron(hi / np.linalg.norm(hi), lo / np.linalg.norm(lo))
    assert entanglement_entropy(psi, L) < 1e-10


def test_entropy_of_known_schmidt_spectra():
    # Bell pair across the half cut of L=4: S = ln 2
    psi = np.zeros(16)
    psi[0b0000] = psi[0b0101] = 1.0 / np.sqrt(2.0)
    assert abs(entanglement_entropy(psi, 4) - np.log(2.0)) < 1e-12
    # biased pair at L=2: S = -p ln p - (1-p) ln (1-p)
    p = 0.3
    psi = np.zeros(4)
    psi[0b00], psi[0b11] = np.sqrt(p), np.sqrt(1 - p)
    expect = -p * np.log(p) - (1 - p) * np.log(1 - p)
    assert abs(entanglement_entropy(psi, 2) - expect) < 1e-12


def test_entropy_invariant_under_local_unitaries():
    L = 6
    rng = np.random.default_rng(9)
    psi = rng.standard_normal(1 << L)
    psi /= np.linalg.norm(psi)
    s0 = entanglement_entropy(psi, L)
    q_hi, _ = np.linalg.qr(rng.standard_normal((8, 8)))
    q_lo, _ = np.linalg.qr(rng.standard_normal((8, 8)))
    s1 = entanglement_entropy(np.kron(q_hi, q_lo) @ psi, L)
    assert abs(s0 - s1) < 1e-10


def test_entropy_requires_normalized_input():
    with pytest.raises(NonNormalizedError):
        entanglement_entropy(np.ones(16), 4)
    with pytest.raises(NonNormalizedError):
        entanglement_entropy(np.zeros(8), 4)  # wrong length


def test_rmt_reference_values():
    assert abs(rmt_entropy(16) - 4.948604) < 1e-5
    assert abs(rmt_entropy(12) - 3.562309) < 1e-5
    # extensive part grows by ln 2 per added site pair... times one site
    assert abs((rmt_entropy(14) - rmt_entropy(12)) - np.log(2.0)) < 1e-12


def test_solution_entropies_on_a_sector_block():
    basis = enumerate_sector(SymmetrySector(8, 0, +1))
    sol = diagonalize(build_ising(ModelParams(t=0.3, h=0.5), basis))
    ents = solution_entropies(sol, indices=[0, 1, 2])
    assert ents.shape == (3,)
    assert np.all(ents >= -1e-12)
    assert np.all(ents <= rmt_entropy(8) + 1.0)


def test_sector_solution_matches_dense_oracle_spectrum():
    p = ModelParams(t=0.4, h=0.3)
    full = np.linalg.eigvalsh(dense_ising(8, p.t, p.h))
    basis = enumerate_sector(SymmetrySector(8, 0, +1))
    sol = diagonalize(build_ising(p, basis))
    # every sector level appears in the full spectrum
    for e in sol.energies:
        assert np.min(np.abs(full - e)) < 1e-10

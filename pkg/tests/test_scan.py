import numpy as np
import pytest

from scarchain.scan import (
    ScanThresholds,
    classify_point,
    confinement_label,
    default_values,
    scan_grid,
    staggered_structure_factor,
)


def test_classification_quadrants():
    assert classify_point(0.53, 0.3) == "QMBS-possible"
    assert classify_point(0.53, 0.8) == "chaotic-no-scars"
    assert classify_point(0.40, 0.8) == "nonergodic-high-S"
    assert classify_point(0.40, 0.3) == "mixed"
    # thresholds are strict inequalities on r
    assert classify_point(0.5, 0.3) == "mixed"


def test_classification_respects_custom_thresholds():
    thr = ScanThresholds(r_chaotic=0.3, s_outlier=0.9)
    assert classify_point(0.4, 0.8, thr) == "QMBS-possible"


def test_confinement_labels():
    assert confinement_label(0.5) == "CD"
    assert confinement_label(0.05) == "CC"
    thr = ScanThresholds(deconfined=0.6)
    assert confinement_label(0.5, thr) == "CC"


def test_structure_factor_limits():
    L = 8
    neel = np.zeros(1 << L)
    neel[0b01010101] = 1.0
    assert staggered_structure_factor(neel, L) == pytest.approx(1.0)
    polarized = np.zeros(1 << L)
    polarized[0] = 1.0
    assert staggered_structure_factor(polarized, L) == pytest.approx(0.0)
    uniform = np.full(1 << L, 1.0 / np.sqrt(1 << L))  # x-polarized
    assert staggered_structure_factor(uniform, L) == pytest.approx(1.0 / L)


def test_structure_factor_deep_hopping_limit_is_small():
    pts = scan_grid([5.0], [0.0], L=12)
    assert pts[0].s_pi < 2.0 / 12


def test_confinement_boundary_extrapolates_to_half_mu_at_zero_field():
    from scarchain.basis import SymmetrySector, enumerate_sector
    from scarchain.hamiltonian import ModelParams, build_ising
    from scarchain.spectral import diagonalize

    def crossing(L):
        basis = enumerate_sector(SymmetrySector(L, 0, +1))
        lo, hi = 0.3, 1.5
        for _ in range(14):
            mid = 0.5 * (lo + hi)
            sol = diagonalize(build_ising(ModelParams(t=mid, h=0.0), basis))
            if staggered_structure_factor(sol.eigenstate_full(0), L) > 0.2:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    stars = {L: crossing(L) for L in (10, 12, 14)}
    assert stars[10] > stars[12] > stars[14]  # finite-size drift downward
    x = np.array([1.0 / L**2 for L in (10, 12, 14)])
    y = np.array([stars[L] for L in (10, 12, 14)])
    intercept = np.polyfit(x, y, 1)[1]
    assert 0.4 < intercept < 0.6  # measured 0.498 at these sizes


def test_default_grid():
    vals = default_values()
    assert vals[0] == pytest.approx(0.05)
    assert vals[-1] == pytest.approx(1.0)
    assert len(vals) == 20
    assert 0.0 not in vals


def test_grid_points_are_ordered_and_consistent():
    pts = scan_grid([0.2, 0.4], [0.3, 0.6], L=8)
    assert [(p.t, p.h) for p in pts] == [(0.2, 0.3), (0.2, 0.6), (0.4, 0.3), (0.4, 0.6)]
    for p in pts:
        assert p.L == 8
        assert 0.0 <= p.r_mean <= 1.0
        assert p.s_min_rel <= p.s_second_rel
        assert p.label == classify_point(p.r_mean, p.s_second_rel)
        assert p.confinement == confinement_label(p.s_pi)


def test_scan_is_deterministic():
    a = scan_grid([0.2, 0.4], [0.3, 0.6], L=8)
    b = scan_grid([0.2, 0.4], [0.3, 0.6], L=8)
    assert a == b


def test_parallel_scan_matches_serial():
    serial = scan_grid([0.2, 0.4], [0.3, 0.6], L=8, jobs=1)
    parallel = scan_grid([0.2, 0.4], [0.3, 0.6], L=8, jobs=2)
    assert [(p.t, p.h, p.label, p.confinement) for p in serial] == [
        (p.t, p.h, p.label, p.confinement) for p in parallel
    ]
    for s, p in zip(serial, parallel):
        assert s.r_mean == pytest.approx(p.r_mean, abs=1e-12)
        assert s.s_min_rel == pytest.approx(p.s_min_rel, abs=1e-12)
        assert s.s_pi == pytest.approx(p.s_pi, abs=1e-12)


def test_known_scarred_point_classifies_as_possible():
    # deconfined, GOE-like, with a low-entropy outlier pair
    pt = scan_grid([0.2], [0.5], L=12)[0]
    assert pt.label == "QMBS-possible"
    assert pt.confinement == "CD"
    assert pt.r_mean > 0.5
    assert pt.s_second_rel < 0.5

"""Exact diagonalization toolkit for periodic Ising chains, their Z2 gauge
duals, and the scar towers living in their spectra."""

__version__ = "0.1.0"

from .basis import SymmetrySector, SectorBasis, enumerate_sector, all_sectors, representative
from .hamiltonian import (
    ModelParams,
    SectorMatrix,
    build_ising,
    build_effective,
    build_ising_full,
    build_effective_full,
    build_sw_generator,
    dimer_count,
)
from .scars import MAGNON, ANTIMAGNON, ScarLabel, vacuum_state, apply_ladder, scar_state, scar_energy
from .spectral import (
    EigenSolution,
    diagonalize,
    gap_ratios,
    mean_gap_ratio,
    entanglement_entropy,
    rmt_entropy,
    GOE_GAP_RATIO,
    POISSON_GAP_RATIO,
)
from .gauge import build_gauged_kitaev, gauss_operators, gauss_projector, validate_duality, DualityReport
from .dynamics import prepare_initial, fidelity_trace, quench_fidelity
from .tracker import (
    ParameterPath,
    PathSegment,
    TrackingPolicy,
    TrackRecord,
    preset_path,
    track,
    track_many,
    entropy_loss_time,
    entropy_spike_report,
)
from .scan import ScanThresholds, ScanPoint, scan_grid, classify_point, confinement_label, staggered_structure_factor

__all__ = [name for name in dir() if not name.startswith("_")]

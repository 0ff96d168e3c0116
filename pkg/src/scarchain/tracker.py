"""Adaptive tracking of scar states along parameter paths.

A tracked state is followed through a sequence of dense diagonalizations of
the (k=0, parity +1) block along a piecewise-linear path in the (t, h) plane.
At every fine step the candidate is the eigenstate of maximal overlap with
the current reference vector.  The reference is only *updated* if the
candidate keeps the same eigenindex across the next `stability_window` fine
diagonalizations (whose combined span is one coarse parameter change, e.g.
ten steps of dh = 0.001 spanning 0.01) — otherwise a diabatic crossing is
flagged and the reference is kept frozen, so the tracker coasts through
narrow avoided crossings instead of hopping branches.

Look-ahead diagonalizations live on the same fine grid and are reused as the
sweep advances; one track costs #fine points + stability_window
diagonalizations, with a sliding cache of stability_window + 1 solutions.

Tracking starts from the analytic scar state at the path start (matched to
the nearest eigenstate by the first diagonalization).  Loss of the state
(overlap below threshold for more than `patience` consecutive steps) ends the
record and is reported, never silent.
"""

from dataclasses import dataclass, field

import numpy as np

from .basis import SymmetrySector, enumerate_sector
from .errors import InvalidSectorError, StateLostError, UnknownNameError
from .hamiltonian import ModelParams, build_ising
from .scars import ScarLabel, scar_state
from .spectral import diagonalize, entanglement_entropy

_STEP_TOL = 1e-9


@dataclass(frozen=True)
class PathSegment:
    """Linear segment with its fine and coarse step sizes (per axis)."""

    start: tuple
    end: tuple
    fine: tuple
    coarse: tuple

    def n_steps(self):
        counts = []
        for x0, x1, dx in zip(self.start, self.end, self.fine):
            if abs(dx) > 0:
                counts.append((x1 - x0) / dx)
        if not counts:
            raise InvalidSectorError("segment needs a nonzero fine step on some axis")
        n = round(counts[0])
        for c in counts:
            if abs(c - n) > 1e-6 or n < 0:
                raise InvalidSectorError(
                    f"inconsistent segment: spans {self.start}->{self.end} with fine {self.fine}"
                )
        return n

    def stride(self):
        ratios = [
            cx / fx for fx, cx in zip(self.fine, self.coarse) if abs(fx) > 0
        ]
        r = round(ratios[0])
        for x in ratios:
            if abs(x - r) > 1e-6 or r < 1:
                raise InvalidSectorError(f"coarse step must be an integer multiple of fine, got {ratios}")
        return r


@dataclass(frozen=True)
class ParameterPath:
    segments: tuple
    name: str = ""

    def fine_points(self):
        pts = []
        for seg in self.segments:
            n = seg.n_steps()
            t0, h0 = seg.start
            dt, dh = seg.fine
            first = 0 if not pts else 1  # segment joints appear once
            for i in range(first, n + 1):
                pts.append((t0 + i * dt, h0 + i * dh))
        return pts

    def stride(self):
        strides = {seg.stride() for seg in self.segments}
        if len(strides) != 1:
            raise InvalidSectorError(f"all segments must share one coarse/fine ratio, got {strides}")
        return strides.pop()

    def tail_points(self, n_extra):
        """Continuation beyond the end along the last segment's direction."""
        seg = self.segments[-1]
        t1, h1 = seg.end
        dt, dh = seg.fine
        return [(t1 + i * dt, h1 + i * dh) for i in range(1, n_extra + 1)]


def preset_path(name):
    """Named paths: "0" (t = 3h, toward (0.3, 0.1)) and "I" (t = 0.2 h up to
    (0.1, 0.5), then h fixed while t continues to 0.3)."""
    key = str(name).lower().removeprefix("path")
    if key == "0":
        seg = PathSegment(start=(0.003, 0.001), end=(0.3, 0.1),
                          fine=(0.003, 0.001), coarse=(0.03, 0.01))
        return ParameterPath(segments=(seg,), name="path0")
    if key == "i":
        seg1 = PathSegment(start=(0.0002, 0.001), end=(0.1, 0.5),
                           fine=(0.0002, 0.001), coarse=(0.002, 0.01))
        seg2 = PathSegment(start=(0.1, 0.5), end=(0.3, 0.5),
                           fine=(0.001, 0.0), coarse=(0.01, 0.0))
        return ParameterPath(segments=(seg1, seg2), name="pathI")
    raise UnknownNameError(f"unknown path preset {name!r} (use '0' or 'I')")


@dataclass(frozen=True)
class TrackingPolicy:
    """Knobs of the following protocol."""

    accept_threshold: float = 0.7
    patience: int = 20
    stability_window: int = 10
    adaptive: bool = True  # False: update the reference unconditionally


@dataclass
class TrackRecord:
    """Per-step history of one tracked state."""

    label: ScarLabel
    L: int
    t: np.ndarray
    h: np.ndarray
    energy: np.ndarray
    entropy: np.ndarray
    overlap: np.ndarray
    eigenindex: np.ndarray
    updated: np.ndarray
    crossing: np.ndarray
    status: str = "completed"
    lost_at: tuple | None = None
    policy: TrackingPolicy = field(default_factory=TrackingPolicy)

    @property
    def n_steps(self):
        return len(self.t)


class _LabelState:
    def __init__(self, label, reference):
        self.label = label
        self.reference = reference
        self.rows = []
        self.low_count = 0
        self.active = True
        self.lost_at = None


def _solve_point(point, L, basis, mu):
    t, h = point
    params = ModelParams(t=t, h=h, mu=mu)
    return diagonalize(build_ising(params, basis))


def track_many(path, labels, L, policy=None, mu=1.0):
    """Track several tower states through one shared sweep of diagonalizations.

    Returns one TrackRecord per label (status "lost" if the overlap criterion
    failed; the record then ends at the loss step).
    """
    policy = policy or TrackingPolicy()
    basis = enumerate_sector(SymmetrySector(L, 0, +1))
    pts = path.fine_points()
    window = policy.stability_window
    all_pts = pts + path.tail_points(window)

    states = []
    for label in labels:
        psi, _ = scar_state(label, L)
        coeffs = basis.full_to_sector(psi)
        nrm = np.linalg.norm(coeffs)
        if abs(nrm - 1.0) > 1e-6:
            raise InvalidSectorError(
                f"scar {label} does not lie in the (k=0,+1) sector (norm {nrm:.6f}); "
                "tracking supports even-n states"
            )
        states.append(_LabelState(label, coeffs / nrm))

    cache = {}

    def solve(idx):
        if idx not in cache:
            cache[idx] = _solve_point(all_pts[idx], L, basis, mu)
        return cache[idx]

    for i, (t, h) in enumerate(pts):
        sol = solve(i)
        vectors = sol.vectors
        active = [st for st in states if st.active]
        if not active:
            break
        refs = np.column_stack([st.reference for st in active])
        overlaps = np.abs(vectors.T @ refs)
        if policy.adaptive:
            look_sols = [solve(i + m) for m in range(1, window + 1)]
            look_idx = np.array(
                [np.argmax(np.abs(ls.vectors.T @ refs), axis=0) for ls in look_sols]
            )
        for col, st in enumerate(active):
            j = int(np.argmax(overlaps[:, col]))
            ov = float(overlaps[j, col])
            psi_full = sol.eigenstate_full(j)
            ent = entanglement_entropy(psi_full / np.linalg.norm(psi_full), L)
            updated = False
            crossing = False
            if policy.adaptive:
                if bool(np.all(look_idx[:, col] == j)) and ov >= policy.accept_threshold:
                    st.reference = vectors[:, j].copy()
                    updated = True
                else:
                    crossing = True
            else:
                st.reference = vectors[:, j].copy()
                updated = True
            st.rows.append((t, h, sol.energies[j], ent, ov, j, updated, crossing))
            if ov < policy.accept_threshold:
                st.low_count += 1
                if st.low_count > policy.patience:
                    st.active = False
                    st.lost_at = (t, h)
            else:
                st.low_count = 0
        for key in [k for k in cache if k <= i]:
            del cache[key]

    records = []
    for st in states:
        rec = TrackRecord(
            label=st.label,
            L=L,
            t=np.array([r[0] for r in st.rows], dtype=float),
            h=np.array([r[1] for r in st.rows], dtype=float),
            energy=np.array([r[2] for r in st.rows], dtype=float),
            entropy=np.array([r[3] for r in st.rows], dtype=float),
            overlap=np.array([r[4] for r in st.rows], dtype=float),
            eigenindex=np.array([r[5] for r in st.rows], dtype=int),
            updated=np.array([r[6] for r in st.rows], dtype=bool),
            crossing=np.array([r[7] for r in st.rows], dtype=bool),
            status="lost" if st.lost_at is not None else "completed",
            lost_at=st.lost_at,
            policy=policy,
        )
        records.append(rec)
    return records


def track(path, initial, L, policy=None, mu=1.0, strict=True):
    """Track a single tower state; raises StateLostError on loss when strict."""
    (record,) = track_many(path, [initial], L, policy=policy, mu=mu)
    if strict and record.status == "lost":
        raise StateLostError(
            f"tracking of {initial} lost the state at (t, h) = {record.lost_at}", record=record
        )
    return record


def entropy_loss_time(record, threshold, sustain=10):
    """First t where the tracked entropy exceeds `threshold` and stays there.

    "Stays" means the median over the next `sustain` recorded steps also
    exceeds the threshold (isolated crossing spikes do not count).  Returns
    the t of the loss, or the loss point of the record itself if the state
    was lost before any sustained crossing, or None.
    """
    s = record.entropy
    for i in range(len(s)):
        if s[i] > threshold and np.median(s[i : i + sustain]) > threshold:
            return float(record.t[i])
    if record.status == "lost":
        return float(record.lost_at[0])
    return None


def entropy_spike_report(record, window=11, height=0.3):
    """Local entropy spikes above a running-median baseline.

    Returns a list of dicts (index, t, h, entropy, baseline, overlap_dip);
    overlap_dip notes whether the overlap has a local minimum nearby, the
    signature of an avoided crossing traversed diabatically.
    """
    s = record.entropy
    n = len(s)
    out = []
    half = window // 2
    for i in range(1, n - 1):
        lo, hi = max(0, i - half), min(n, i + half + 1)
        base = float(np.median(s[lo:hi]))
        if s[i] - base > height and s[i] >= s[i - 1] and s[i] >= s[i + 1]:
            seg = record.overlap[max(0, i - half) : min(n, i + half + 1)]
            dip = bool(record.overlap[i] <= np.min(seg) + 1e-12) or bool(
                np.min(seg) < record.overlap[max(0, i - half)]
            )
            out.append(
                {
                    "index": i,
                    "t": float(record.t[i]),
                    "h": float(record.h[i]),
                    "entropy": float(s[i]),
                    "baseline": base,
                    "overlap_dip": dip,
                }
            )
    return out

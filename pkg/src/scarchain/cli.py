"""Command-line front end.

Subcommands: spectrum, scars, track, quench, scan, validate-duality.
Each writes deterministic CSV output (floats as %.12g, so repeated runs are
byte-identical) plus a manifest.json with the invocation, outputs and a
timestamp.  Options may come from a ``key = value`` config file via
--config; explicit flags win over the file, the file wins over defaults.
"""

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .basis import SymmetrySector, all_sectors, enumerate_sector
from .dynamics import default_times, long_time_mean, quench_fidelity
from .errors import BadParamsError, ScarChainError
from .gauge import validate_duality
from .hamiltonian import ModelParams, build_effective_full, build_ising
from .scars import ScarLabel, max_ladder_power, scar_energy, scar_state
from .spectral import (
    diagonalize,
    entanglement_entropy,
    mean_gap_ratio,
    rmt_entropy,
)
from .tracker import TrackingPolicy, preset_path, track_many


def _fmt(x):
    if isinstance(x, (float, np.floating)):
        return "%.12g" % (x + 0.0)  # +0.0 folds -0.0 into 0.0
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    return str(x)


def _write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")
    return len(rows)


def _write_manifest(out_dir, command, options, outputs, extra=None):
    manifest = {
        "command": command,
        "options": {k: v for k, v in sorted(options.items())},
        "outputs": outputs,
        "created": datetime.now(timezone.utc).isoformat(),
        "version": __version__,
    }
    if extra:
        manifest.update(extra)
    path = Path(out_dir) / "manifest.json"
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, default=str)
        fh.write("\n")
    return path


def _load_config(path):
    values = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadParamsError(f"bad config line {raw!r} (expected key = value)")
        key, val = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = val
    return values


def _merged(args, parser_defaults):
    """Apply config-file values where the command line kept the default."""
    opts = vars(args).copy()
    config = opts.pop("config", None)
    if not config:
        return opts
    overrides = _load_config(config)
    for key, raw in overrides.items():
        if key not in opts:
            raise BadParamsError(f"unknown config key {key!r}")
        if opts[key] == parser_defaults.get(key):  # flag not given explicitly
            default = parser_defaults.get(key)
            caster = type(default) if default is not None else str
            opts[key] = raw if caster is str else caster(raw)
    return opts


def _parse_sector(text, L):
    if text == "all":
        return all_sectors(L)
    try:
        k_str, p_str = text.split(",")
        return [SymmetrySector(L, int(k_str), int(p_str))]
    except ValueError as exc:
        raise BadParamsError(f"bad --sector {text!r}; use 'k,parity' or 'all'") from exc


def _parse_n_list(text, L):
    if text == "all":
        return list(range(0, max_ladder_power(L) + 1))
    try:
        return [int(s) for s in text.split(",")]
    except ValueError as exc:
        raise BadParamsError(f"bad --n {text!r}; use a comma list or 'all'") from exc


def _cmd_spectrum(opts):
    L, params = opts["L"], ModelParams(t=opts["t"], h=opts["h"], mu=opts["mu"])
    sectors = _parse_sector(opts["sector"], L)
    rows, ratios = [], {}
    for sector in sectors:
        basis = enumerate_sector(sector)
        sol = diagonalize(build_ising(params, basis))
        key = f"k={sector.k},p={sector.parity if sector.parity else 0}"
        try:
            ratios[key] = float(mean_gap_ratio(sol.energies, trim_fraction=opts["trim"]))
        except ScarChainError:
            ratios[key] = None
        for idx, e in enumerate(sol.energies):
            rows.append((sector.k, sector.parity if sector.parity else 0, idx, float(e)))
    out = Path(opts["out_dir"]) / "spectrum.csv"
    n = _write_csv(out, ("k", "parity", "index", "energy"), rows)
    _write_manifest(opts["out_dir"], "spectrum", opts,
                    [{"path": out.name, "rows": n}], {"mean_gap_ratio": ratios})
    print(f"wrote {out} ({n} rows)")
    return 0


def _cmd_scars(opts):
    L, params = opts["L"], ModelParams(t=opts["t"], h=opts["h"], mu=opts["mu"])
    towers = [1, 2] if opts["tower"] == 0 else [opts["tower"]]
    h_eff = build_effective_full(params, L)
    rows = []
    for tower in towers:
        for n in _parse_n_list(opts["n"], L):
            label = ScarLabel(tower, n)
            psi, _ = scar_state(label, L)
            energy = scar_energy(label, L, params)
            residual = float(np.linalg.norm(h_eff @ psi - energy * psi))
            rows.append((tower, n, energy, residual, entanglement_entropy(psi, L)))
    out = Path(opts["out_dir"]) / "scars.csv"
    n_rows = _write_csv(out, ("tower", "n", "energy", "eff_residual", "entropy"), rows)
    _write_manifest(opts["out_dir"], "scars", opts, [{"path": out.name, "rows": n_rows}])
    print(f"wrote {out} ({n_rows} rows)")
    return 0


def _cmd_track(opts):
    L = opts["L"]
    path = preset_path(opts["path"])
    policy = TrackingPolicy(accept_threshold=opts["threshold"])
    labels = [ScarLabel(opts["tower"], n) for n in _parse_n_list(opts["n"], L)]
    records = track_many(path, labels, L, policy=policy, mu=opts["mu"])
    outputs, notes = [], {}
    for rec in records:
        name = f"track_t{rec.label.tower}_n{rec.label.n}.csv"
        out = Path(opts["out_dir"]) / name
        rows = zip(rec.t, rec.h, rec.energy, rec.entropy, rec.overlap,
                   rec.eigenindex, rec.updated, rec.crossing)
        n_rows = _write_csv(
            out,
            ("t", "h", "energy", "entropy", "overlap", "eigenindex", "updated", "crossing"),
            list(rows),
        )
        outputs.append({"path": name, "rows": n_rows})
        notes[name] = {"status": rec.status, "lost_at": rec.lost_at}
        print(f"wrote {out} ({n_rows} rows, {rec.status})")
    _write_manifest(opts["out_dir"], "track", opts, outputs, {"tracking": notes})
    return 0


def _cmd_quench(opts):
    L = opts["L"]
    try:
        t_values = [float(s) for s in str(opts["t"]).split(",")]
    except ValueError as exc:
        raise BadParamsError(f"bad --t {opts['t']!r}; use a float or comma list") from exc
    times = default_times(t_max=opts["tmax"], step=opts["tstep"])
    outputs, means = [], {}
    for t in t_values:
        params = ModelParams(t=t, h=opts["h"], mu=opts["mu"])
        _, fid = quench_fidelity(params, L, times=times)
        name = "quench_t%g.csv" % t
        out = Path(opts["out_dir"]) / name
        n = _write_csv(out, ("time", "fidelity"), list(zip(times, fid)))
        outputs.append({"path": name, "rows": n})
        means["%g" % t] = float(long_time_mean(times, fid))
        print(f"wrote {out} ({n} rows)")
    _write_manifest(opts["out_dir"], "quench", opts, outputs, {"long_time_mean": means})
    return 0


def _cmd_scan(opts):
    from .scan import ScanThresholds, default_values, scan_grid

    values = default_values(step=opts["grid_step"], stop=opts["grid_stop"])
    points = scan_grid(values, values, L=opts["L"], mu=opts["mu"],
                       thresholds=ScanThresholds(), jobs=opts["jobs"])
    rows = [
        (p.t, p.h, p.r_mean, p.s_min_rel, p.s_second_rel, p.s_pi, p.label, p.confinement)
        for p in points
    ]
    out = Path(opts["out_dir"]) / "scan.csv"
    n = _write_csv(
        out,
        ("t", "h", "r_mean", "s_min_rel", "s_second_rel", "s_pi", "label", "confinement"),
        rows,
    )
    _write_manifest(opts["out_dir"], "scan", opts, [{"path": out.name, "rows": n}])
    print(f"wrote {out} ({n} rows)")
    return 0


def _cmd_validate_duality(opts):
    params = ModelParams(t=opts["t"], h=opts["h"], mu=opts["mu"])
    report = validate_duality(params, opts["L"], tol=opts["tol"])
    payload = {
        "matched": report.matched,
        "max_gap_mismatch": report.max_gap_mismatch,
        "sector_bookkeeping": report.sector_bookkeeping,
    }
    out = Path(opts["out_dir"]) / "duality.json"
    with open(out, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    _write_manifest(opts["out_dir"], "validate-duality", opts, [{"path": out.name}])
    print(f"duality check L={opts['L']} t={opts['t']} h={opts['h']}: "
          f"max spectral mismatch {report.max_gap_mismatch:.3e} — PASS")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="scarchain",
        description="Exact-diagonalization toolkit for scarred mixed-field Ising chains "
        "and their gauge-theory duals.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, L=12, t=0.2, h=0.5, t_list=False):
        p.add_argument("--L", type=int, default=L)
        if t_list:
            p.add_argument("--t", default=t, help="coupling t, or a comma list")
        else:
            p.add_argument("--t", type=float, default=t)
        p.add_argument("--h", type=float, default=h)
        p.add_argument("--mu", type=float, default=1.0)
        p.add_argument("--out-dir", default=".")
        p.add_argument("--config", default=None, help="key = value option file")

    p = sub.add_parser("spectrum", help="sector spectra and gap-ratio statistics")
    common(p)
    p.add_argument("--sector", default="0,1", help="'k,parity' or 'all'")
    p.add_argument("--trim", type=float, default=0.1)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("scars", help="tower states: energies, residuals, entropies")
    common(p)
    p.add_argument("--tower", type=int, default=0, choices=(0, 1, 2),
                   help="1 or 2; 0 means both")
    p.add_argument("--n", default="all", help="comma list of ladder powers, or 'all'")
    p.set_defaults(func=_cmd_scars)

    p = sub.add_parser("track", help="follow tower states along a parameter path")
    common(p, L=10)
    p.add_argument("--path", default="0", help="preset path name ('0' or 'I')")
    p.add_argument("--tower", type=int, default=2, choices=(1, 2))
    p.add_argument("--n", default="4", help="comma list of ladder powers, or 'all'")
    p.add_argument("--threshold", type=float, default=0.7)
    p.set_defaults(func=_cmd_track)

    p = sub.add_parser("quench", help="scar-superposition fidelity dynamics")
    common(p, t="0.25", t_list=True)
    p.add_argument("--tmax", type=float, default=50.0)
    p.add_argument("--tstep", type=float, default=0.05)
    p.set_defaults(func=_cmd_quench)

    p = sub.add_parser("scan", help="grid scan of chaos/scar/confinement diagnostics")
    common(p)
    p.add_argument("--grid-step", type=float, default=0.05)
    p.add_argument("--grid-stop", type=float, default=1.0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("validate-duality",
                       help="match the gauge-model Gauss sector against the dual chain")
    common(p, L=4, t=0.3, h=0.7)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=_cmd_validate_duality)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    defaults = {}
    for action in parser._subparsers._group_actions[0].choices[args.command]._actions:
        if action.dest not in ("help",):
            defaults[action.dest] = action.default
    try:
        opts = _merged(args, defaults)
        opts.pop("func", None)
        opts.pop("command", None)
        Path(opts.get("out_dir", ".")).mkdir(parents=True, exist_ok=True)
        return args.func(opts)
    except ScarChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

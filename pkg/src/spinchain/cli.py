"""Command-line surface: simulate, reconstruct, snap, optimize, analyze, sweep.

Every run writes its outputs plus a ``manifest.json`` recording the
subcommand, inputs, effective parameters and seed, so any output can be
regenerated byte-for-byte. Exit codes: 0 success, 2 bad input, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .chain import ChainSpec, diagonalize_chain
from .dynamics import revival_peaks, trace
from .errors import NumericalError
from .ga import GAConfig, evolve
from .reconstruct import reconstruct, roundtrip_error
from .spectra import PinchSpec, Spectrum, pinched_spectrum, snap_to_pst
from .sweep import deviation_sweep, sweep_csv
from .analogue import diagnostics_report


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _write_manifest(out_dir: Path, subcommand: str, inputs: list[str],
                    parameters: dict, seed: int | None = None) -> None:
    _write_json(out_dir / "manifest.json", {
        "subcommand": subcommand,
        "inputs": inputs,
        "parameters": parameters,
        "seed": seed,
        "output_dir": str(out_dir),
        "version": __version__,
    })


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_simulate(args) -> int:
    chain = ChainSpec.from_dict(_load_json(args.chain))
    es = diagonalize_chain(chain)
    tr = trace(es, window=args.window, samples=args.samples, j_max=chain.j_max)

    times = tr.times if not args.raw_time else tr.times / chain.j_max
    peak_scale = 1.0 if not args.raw_time else 1.0 / chain.j_max
    header = "t_Jmax,F,Fav" if not args.raw_time else "t,F,Fav"

    out = _out_dir(args)
    lines = [header]
    lines.extend(f"{t:.12g},{f:.12g},{a:.12g}"
                 for t, f, a in zip(times, tr.transfer, tr.average))
    (out / "trace.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_json(out / "peaks.json", {
        "peaks": [{"t": t * peak_scale, "F": f} for t, f in tr.peaks],
        "revivals": [{"t": t * peak_scale, "F": f} for t, f in revival_peaks(tr)],
    })
    _write_manifest(out, "simulate", [args.chain], {
        "window": args.window, "samples": args.samples,
        "raw_time": args.raw_time,
    })
    best = max(tr.peaks, key=lambda p: p[1]) if tr.peaks else None
    if best:
        print(f"max F = {best[1]:.6f} at t*J_max = {best[0]:.4f}")
    return 0


def cmd_reconstruct(args) -> int:
    if args.pinched is not None:
        n, p, alpha = args.pinched
        spectrum = pinched_spectrum(PinchSpec(n=int(n), p=int(p), alpha=alpha),
                                    shift=args.shift)
        inputs = []
    else:
        if args.spectrum is None:
            raise ValueError("provide a spectrum file or --pinched N P ALPHA")
        spectrum = Spectrum.from_dict(_load_json(args.spectrum))
        inputs = [args.spectrum]

    chain = reconstruct(spectrum, sign_convention=args.convention)
    err = roundtrip_error(spectrum)

    out = _out_dir(args)
    _write_json(out / "chain.json", chain.to_dict())
    _write_manifest(out, "reconstruct", inputs, {
        "pinched": list(args.pinched) if args.pinched else None,
        "shift": args.shift, "convention": args.convention,
    })
    print(f"roundtrip error: {err:.3e}")
    return 0


def cmd_snap(args) -> int:
    spectrum = Spectrum.from_dict(_load_json(args.spectrum))
    snapped = snap_to_pst(spectrum, p=args.p)
    shifts = [b - a for a, b in zip(spectrum.values, snapped.values)]

    out = _out_dir(args)
    _write_json(out / "spectrum_pst.json", snapped.to_dict())
    _write_json(out / "snap_diff.json", {
        "shifts": shifts,
        "max_shift": max(abs(s) for s in shifts),
        "t_m": snapped.t_m,
    })
    _write_manifest(out, "snap", [args.spectrum], {"p": args.p})
    print(f"max eigenvalue shift: {max(abs(s) for s in shifts):.3e}; "
          f"t_m = {snapped.t_m:.6f}")
    return 0


def cmd_optimize(args) -> int:
    cfg_dict = _load_json(args.config)
    if args.seed is not None:
        cfg_dict["seed"] = args.seed
    cfg = GAConfig.from_dict(cfg_dict)
    report = evolve(cfg)

    out = _out_dir(args)
    _write_json(out / "best_chain.json", report.best_chain().to_dict())
    lines = ["generation,best_f,best_Fmax,best_Q,best_sigma"]
    lines.extend(
        f"{h['generation']},{h['best_f']:.12g},{h['best_Fmax']:.12g},"
        f"{h['best_Q']:.12g},{h['best_sigma']:.12g}"
        for h in report.history
    )
    (out / "history.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    _write_manifest(out, "optimize", [args.config], cfg.to_dict(), seed=cfg.seed)
    br = report.best_report
    print(f"best f = {br.fitness:.6f}, F_max = {br.f_max:.6f} "
          f"at t*J_max = {br.best_time:.2f} (Q = {br.q:.4f}, sigma = {br.sigma:.4f})")
    return 0


def _infer_pinch(values: np.ndarray) -> tuple[int, float]:
    gamma = float(values[1] - values[0])
    top = float(values[-1] - values[-2])
    if top <= 0 or gamma <= 0:
        raise ValueError("cannot infer pinch parameters from the spectrum")
    ratio = gamma / top
    lo = max(1, 2 * int(np.floor((ratio - 1) / 2)) + 1)
    p = lo if abs(lo - ratio) <= abs(lo + 2 - ratio) else lo + 2
    return p, gamma


def cmd_analyze(args) -> int:
    chain = ChainSpec.from_dict(_load_json(args.chain))
    es = diagonalize_chain(chain)
    if args.p is not None and args.gamma is not None:
        p, gamma = args.p, args.gamma
    else:
        p, gamma = _infer_pinch(es.values)
        p = args.p if args.p is not None else p
        gamma = args.gamma if args.gamma is not None else gamma

    report = diagnostics_report(chain, es, p=p, gamma=gamma)
    out = _out_dir(args)
    _write_json(out / "diagnostics.json", report)
    _write_manifest(out, "analyze", [args.chain], {"p": p, "gamma": gamma})
    print(f"nodes: {report['nodes']}; ladder residual {report['ladder_residual']:.2e}; "
          f"zero mode: {report['zero_mode']}")
    return 0


def cmd_sweep(args) -> int:
    p_set = [int(v) for v in args.p_list.split(",") if v.strip()]
    points = deviation_sweep(range(args.n_min, args.n_max + 1), p_set,
                             alpha=args.alpha)
    out = _out_dir(args)
    (out / "sweep.csv").write_text(sweep_csv(points), encoding="utf-8")
    _write_manifest(out, "sweep", [], {
        "n_min": args.n_min, "n_max": args.n_max,
        "p_list": p_set, "alpha": args.alpha,
    })
    failures = [pt for pt in points if pt.error]
    print(f"{len(points)} sweep points ({len(failures)} failed)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinchain",
        description="Spin-chain state-transfer toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="fidelity trace of a chain")
    p_sim.add_argument("chain", help="chain JSON file")
    p_sim.add_argument("--window", type=float, default=50.0,
                       help="trace window in t*J_max units")
    p_sim.add_argument("--samples", type=int, default=None,
                       help="samples across the window (default 200/unit)")
    p_sim.add_argument("--raw-time", action="store_true",
                       help="report raw t instead of t*J_max")
    p_sim.add_argument("--out", default=".", help="output directory")
    p_sim.set_defaults(func=cmd_simulate)

    p_rec = sub.add_parser("reconstruct",
                           help="persymmetric chain from a spectrum")
    p_rec.add_argument("spectrum", nargs="?", help="spectrum JSON file")
    p_rec.add_argument("--pinched", nargs=3, type=float, metavar=("N", "P", "ALPHA"),
                       help="generate a pinched spectrum instead of reading one")
    p_rec.add_argument("--shift", type=float, default=0.0,
                       help="energy shift applied to the pinched spectrum")
    p_rec.add_argument("--convention", choices=("negative", "positive"),
                       default="negative", help="coupling sign convention")
    p_rec.add_argument("--out", default=".", help="output directory")
    p_rec.set_defaults(func=cmd_reconstruct)

    p_snap = sub.add_parser("snap", help="round a spectrum onto the PST family")
    p_snap.add_argument("spectrum", help="spectrum JSON file")
    p_snap.add_argument("--p", type=int, required=True, help="odd pinch value")
    p_snap.add_argument("--out", default=".", help="output directory")
    p_snap.set_defaults(func=cmd_snap)

    p_opt = sub.add_parser("optimize", help="genetic search over on-site energies")
    p_opt.add_argument("config", help="GA config JSON file")
    p_opt.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
    p_opt.add_argument("--out", default=".", help="output directory")
    p_opt.set_defaults(func=cmd_optimize)

    p_ana = sub.add_parser("analyze", help="particle-analogue diagnostics")
    p_ana.add_argument("chain", help="chain JSON file")
    p_ana.add_argument("--p", type=int, default=None, help="pinch value (inferred if absent)")
    p_ana.add_argument("--gamma", type=float, default=None,
                       help="level spacing (inferred if absent)")
    p_ana.add_argument("--out", default=".", help="output directory")
    p_ana.set_defaults(func=cmd_analyze)

    p_swp = sub.add_parser("sweep", help="coupling-deviation sweep over (N, p)")
    p_swp.add_argument("--n-min", type=int, default=4)
    p_swp.add_argument("--n-max", type=int, default=40)
    p_swp.add_argument("--p-list", default="3,5,7,9,11,13",
                       help="comma-separated odd pinch values")
    p_swp.add_argument("--alpha", type=float, default=0.5)
    p_swp.add_argument("--out", default=".", help="output directory")
    p_swp.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line front end.

    lcbattery simulate --preset fig3 --output fig3.csv
    lcbattery sweep --preset fig4 --workers 8 --output fig4.csv
    lcbattery analyze fig3.csv --column ee

Exit status is 0 on success, 1 for bad input and 2 when the requested
coupling is dynamically unstable.
"""

import argparse
import csv
import json
import math
import sys

import numpy as np

from .circuit import DomainError, HamiltonianParams, hamiltonian_from_frequencies
from .dynamics import (
    DivergenceError,
    EvolutionSpec,
    Stability,
    build_drift,
    dominant_frequencies,
    propagate,
    stability_check,
    time_grid,
)
from .gaussian import coherent, product_state, thermal
from .sweeps import SweepSpec, fmt, run_sweep, sweep_metadata, sweep_to_csv

SIMULATE_COLUMNS = ("t", "e1", "e2", "ee", "ei", "r", "s", "c")
_OBS_FOR_COLUMN = {"e1": "E1", "e2": "E2", "ee": "Ee", "ei": "Ei", "r": "R", "s": "S", "c": "C"}

# Named parameter sets; dt and grid resolution are chosen defaults.
SIMULATE_PRESETS = {
    "fig2ab": dict(omega2=1.3, kl=0.7, kc=0.7, coherent_alpha=2.0, tmax=20.0, dt=0.01),
    "fig2cd": dict(omega2=1.3, kl=-0.7, kc=0.7, coherent_alpha=2.0, tmax=20.0, dt=0.01),
    "fig3": dict(omega2=1.3, kl=-0.57, kc=0.7, thermal_np=4.0, tmax=20.0, dt=0.01),
    "fig6": dict(omega2=1.3, kl=-0.37, kc=0.7, thermal_np=4.0, gamma=0.1, n_th=4.0, tmax=400.0, dt=0.05),
    "resonant": dict(omega2=1.0, kl=0.7, kc=0.7, coherent_alpha=2.0, tmax=20.0, dt=0.01),
}
SWEEP_PRESETS = {
    "fig4": dict(kl_grid="-0.9:0.9:41", kc_grid="-0.9:0.9:41", np_grid="4", omega2=1.3, tmax=20.0, dt=0.01),
    "fig5": dict(kl_grid="-0.37", kc_grid="0.7", np_grid="1:64:geometric", omega2=1.3, tmax=20.0, dt=0.01),
}
SIMULATE_DEFAULTS = dict(
    omega2=1.3, kl=0.0, kc=0.0, coherent_alpha=None, thermal_np=None,
    gamma=0.0, n_th=0.0, tmax=20.0, dt=0.01,
)
SWEEP_DEFAULTS = dict(
    kl_grid=None, kc_grid=None, np_grid="4", omega2=1.3, tmax=20.0, dt=0.01, charger="thermal",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_grid(text):
    """Parse a grid flag.

    Accepted forms: a single number, a comma list, ``start:stop:N`` (N
    evenly spaced points), ``start:stop:geometric`` (doubling from start up
    to stop) and ``start:stop:geometric:N`` (N log-spaced points).
    """
    text = str(text).strip()
    try:
        if ":" not in text:
            return tuple(float(v) for v in text.split(","))
        parts = text.split(":")
        start, stop = float(parts[0]), float(parts[1])
        if len(parts) == 3 and parts[2] != "geometric":
            values = np.linspace(start, stop, int(parts[2]))
        elif parts[2] == "geometric":
            if start <= 0 or stop < start:
                raise UsageError(f"geometric grid needs 0 < start <= stop: {text!r}")
            if len(parts) == 4:
                values = np.geomspace(start, stop, int(parts[3]))
            else:
                n = int(math.floor(math.log2(stop / start) + 1e-9)) + 1
                values = start * 2.0 ** np.arange(n)
        else:
            raise UsageError(f"cannot parse grid {text!r}")
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}: {exc}") from None
    return tuple(float(f"{v:.12g}") for v in values)


def _resolve(args, presets, defaults):
    cfg = dict(defaults)
    if args.preset:
        cfg.update(presets[args.preset])
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    return cfg


def _hamiltonian(omega2, kl, kc, allow_deep_strong=False):
    if allow_deep_strong:
        root = math.sqrt(omega2)
        return HamiltonianParams(1.0, omega2, -kl * root / 2.0, kc * root / 2.0)
    return hamiltonian_from_frequencies(1.0, omega2, kl, kc)


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _sidecar(path, text):
    if path not in (None, "-"):
        with open(path + ".json", "w", newline="\n") as fh:
            fh.write(text)


def simulation_csv(traj):
    lines = [",".join(SIMULATE_COLUMNS)]
    cols = [traj.times] + [traj[_OBS_FOR_COLUMN[c]] for c in SIMULATE_COLUMNS[1:]]
    for row in zip(*cols):
        lines.append(",".join(fmt(float(v)) for v in row))
    return "\n".join(lines) + "\n"


def cmd_simulate(args):
    cfg = _resolve(args, SIMULATE_PRESETS, SIMULATE_DEFAULTS)
    if args.coherent_alpha is not None:
        cfg["thermal_np"] = None
    elif args.thermal_np is not None:
        cfg["coherent_alpha"] = None
    if cfg["coherent_alpha"] is None and cfg["thermal_np"] is None:
        raise UsageError("choose a charger state with --coherent-alpha or --thermal-np")
    if cfg["coherent_alpha"] is not None and cfg["thermal_np"] is not None:
        raise UsageError("--coherent-alpha and --thermal-np are mutually exclusive")
    try:
        h = _hamiltonian(cfg["omega2"], cfg["kl"], cfg["kc"], args.allow_deep_strong)
        charger = coherent(cfg["coherent_alpha"]) if cfg["coherent_alpha"] is not None else thermal(cfg["thermal_np"])
        spec = EvolutionSpec(h, time_grid(cfg["tmax"], cfg["dt"]), cfg["gamma"], cfg["n_th"])
    except (DomainError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if stability_check(spec.drift) is Stability.UNSTABLE:
        raise DivergenceError(
            f"coupling (g={h.g:.6g}, G={h.G:.6g}) is in the deep-strong-coupling regime: "
            "the dynamics are unstable and the energies diverge"
        )
    traj = propagate(spec, product_state(charger))
    _write(simulation_csv(traj), args.output)
    meta = {"kind": "simulate", "preset": args.preset, "config": cfg,
            "units": {"t": "1/omega1", "energy": "hbar*omega1", "s": "nats", "c": "nats"},
            "columns": list(SIMULATE_COLUMNS)}
    _sidecar(args.output, json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_sweep(args):
    cfg = _resolve(args, SWEEP_PRESETS, SWEEP_DEFAULTS)
    if args.kl is not None:
        cfg["kl_grid"] = str(args.kl)
    if args.kc is not None:
        cfg["kc_grid"] = str(args.kc)
    if cfg["kl_grid"] is None or cfg["kc_grid"] is None:
        raise UsageError("give --kl-grid/--kl and --kc-grid/--kc, or a preset")
    try:
        spec = SweepSpec(
            kl_grid=parse_grid(cfg["kl_grid"]),
            kc_grid=parse_grid(cfg["kc_grid"]),
            np_grid=parse_grid(cfg["np_grid"]),
            omega2=cfg["omega2"],
            tmax=cfg["tmax"],
            dt=cfg["dt"],
            charger=cfg["charger"],
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = run_sweep(spec, workers=args.workers)
    _write(sweep_to_csv(result), args.output)
    _sidecar(args.output, sweep_metadata(spec, preset=args.preset, flags=cfg))
    return 0


def read_column(path, column):
    """Time and value columns of a simulation CSV."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    if not rows or "t" not in rows[0] or column not in rows[0]:
        raise UsageError(f"{path} lacks a 't' or {column!r} column")
    try:
        t = np.array([float(r["t"]) for r in rows])
        y = np.array([float(r[column]) if r[column] != "" else np.nan for r in rows])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"malformed CSV {path}: {exc}") from None
    return t, y


def cmd_analyze(args):
    t, y = read_column(args.input, args.column)
    try:
        report = dominant_frequencies(y, times=t, count=args.count)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = {"input": args.input, "column": args.column, "units": "rad per 1/omega1"}
    out.update(report.as_dict())
    _write(json.dumps(out, indent=2) + "\n", args.output)
    return 0


def build_parser():
    parser = _Parser(prog="lcbattery", description="Coupled-LC quantum battery simulator")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="time series of battery observables")
    sim.add_argument("--preset", choices=sorted(SIMULATE_PRESETS))
    sim.add_argument("--omega2", type=float)
    sim.add_argument("--kl", type=float)
    sim.add_argument("--kc", type=float)
    sim.add_argument("--coherent-alpha", type=float)
    sim.add_argument("--thermal-np", type=float)
    sim.add_argument("--gamma", type=float)
    sim.add_argument("--n-th", type=float)
    sim.add_argument("--tmax", type=float)
    sim.add_argument("--dt", type=float)
    sim.add_argument("--allow-deep-strong", action="store_true",
                     help="accept |kL|, |kC| >= 1 (unstable couplings exit with status 2)")
    sim.add_argument("--output", "-o")
    sim.set_defaults(func=cmd_simulate)

    sw = sub.add_parser("sweep", help="grid of Max[Ee] and Max[R]")
    sw.add_argument("--preset", choices=sorted(SWEEP_PRESETS))
    sw.add_argument("--kl-grid")
    sw.add_argument("--kc-grid")
    sw.add_argument("--kl", type=float)
    sw.add_argument("--kc", type=float)
    sw.add_argument("--np-grid")
    sw.add_argument("--omega2", type=float)
    sw.add_argument("--tmax", type=float)
    sw.add_argument("--dt", type=float)
    sw.add_argument("--charger", choices=("thermal", "coherent"))
    sw.add_argument("--workers", type=int)
    sw.add_argument("--output", "-o")
    sw.set_defaults(func=cmd_sweep)

    an = sub.add_parser("analyze", help="dominant frequencies of a CSV column")
    an.add_argument("input")
    an.add_argument("--column", default="ee")
    an.add_argument("--count", type=int, default=2)
    an.add_argument("--output", "-o")
    an.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"lcbattery: error: {exc}", file=sys.stderr)
        return 1
    except DivergenceError as exc:
        print(f"lcbattery: unstable: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

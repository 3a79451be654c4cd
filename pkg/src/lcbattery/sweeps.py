"""
Grids of independent closed-system runs over the coupling coefficients and
the charger's photon number, reduced to the maxima of ergotropy and of the
ergotropy ratio per cell.
"""

import io
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .circuit import hamiltonian_from_frequencies
from .dynamics import (
    DivergenceError,
    EvolutionSpec,
    Stability,
    build_drift,
    max_over_window,
    propagate,
    stability_check,
    time_grid,
)
from .gaussian import coherent, product_state, thermal

CSV_COLUMNS = ("kl", "kc", "n_p", "max_ee", "t_max_ee", "max_r", "t_max_r", "stable")
CHARGER_KINDS = ("thermal", "coherent")


def _grid(values, name, bound=None):
    arr = tuple(float(v) for v in values)
    if not arr:
        raise ValueError(f"{name} must not be empty")
    if any(b <= a for a, b in zip(arr, arr[1:])):
        raise ValueError(f"{name} must be strictly increasing")
    if bound is not None and any(not -bound < v < bound for v in arr):
        raise ValueError(f"{name} values must lie in (-{bound}, {bound})")
    return arr


@dataclass(frozen=True)
class SweepSpec:
    """Grid definition.

    For a coherent charger the photon number ``n_p`` sets a real amplitude
    ``alpha = sqrt(n_p)``.
    """

    kl_grid: tuple
    kc_grid: tuple
    np_grid: tuple = (4.0,)
    omega2: float = 1.3
    tmax: float = 20.0
    dt: float = 0.01
    charger: str = "thermal"
    omega1: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kl_grid", _grid(self.kl_grid, "kl_grid", 1.0))
        object.__setattr__(self, "kc_grid", _grid(self.kc_grid, "kc_grid", 1.0))
        np_grid = _grid(self.np_grid, "np_grid")
        if np_grid[0] < 0:
            raise ValueError("photon numbers must be non-negative")
        object.__setattr__(self, "np_grid", np_grid)
        if self.charger not in CHARGER_KINDS:
            raise ValueError(f"charger must be one of {CHARGER_KINDS}")
        if not (self.omega1 > 0 and self.omega2 > 0 and self.dt > 0 and self.tmax >= 0):
            raise ValueError("frequencies and dt must be positive, tmax non-negative")

    def cells(self):
        """Cell parameters in row-major order: kL slowest, n_p fastest."""
        return list(itertools.product(self.kl_grid, self.kc_grid, self.np_grid))

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SweepCell:
    kl: float
    kc: float
    n_p: float
    max_ee: float
    t_max_ee: float
    max_r: float
    t_max_r: float
    stable: bool


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    cells: tuple

    def array(self, name):
        """Column ``name`` reshaped to ``(len(kl), len(kc), len(n_p))``."""
        shape = (len(self.spec.kl_grid), len(self.spec.kc_grid), len(self.spec.np_grid))
        return np.array([getattr(c, name) for c in self.cells], dtype=float).reshape(shape)

    def argmax(self, name):
        """Cell with the largest finite value of ``name`` (first in row-major order on ties)."""
        vals = np.array([getattr(c, name) for c in self.cells], dtype=float)
        if np.all(np.isnan(vals)):
            raise ValueError(f"no finite values of {name}")
        return self.cells[int(np.nanargmax(vals))]


def initial_charger(kind, n_p):
    if kind == "thermal":
        return thermal(n_p)
    return coherent(np.sqrt(n_p))


def run_cell(spec, kl, kc, n_p):
    """Simulate one grid cell; instability is reported, never raised."""
    h = hamiltonian_from_frequencies(spec.omega1, spec.omega2, kl, kc)
    nan = float("nan")
    if stability_check(build_drift(h)) is Stability.UNSTABLE:
        return SweepCell(kl, kc, n_p, nan, nan, nan, nan, False)
    evo = EvolutionSpec(h, time_grid(spec.tmax, spec.dt))
    try:
        traj = propagate(evo, product_state(initial_charger(spec.charger, n_p)))
    except DivergenceError:
        return SweepCell(kl, kc, n_p, nan, nan, nan, nan, False)
    ee, t_ee = max_over_window(traj, "Ee")
    try:
        r, t_r = max_over_window(traj, "R")
    except ValueError:
        r, t_r = nan, nan
    return SweepCell(kl, kc, n_p, ee, t_ee, r, t_r, True)


def _run_chunk(args):
    spec, chunk = args
    return [run_cell(spec, *cell) for cell in chunk]


def run_sweep(spec, workers=None):
    """Run every cell of ``spec``.

    Cells are distributed over ``workers`` processes (default: all CPUs;
    ``1`` runs in-process). Results always come back in row-major grid
    order, and each cell is computed by the same code path whatever the
    worker count, so the output does not depend on it.
    """
    cells = spec.cells()
    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(int(workers), len(cells)))
    if workers == 1:
        return SweepResult(spec, tuple(_run_chunk((spec, cells))))
    size = -(-len(cells) // (workers * 4))
    chunks = [cells[i : i + size] for i in range(0, len(cells), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_chunk, [(spec, c) for c in chunks]))
    return SweepResult(spec, tuple(itertools.chain.from_iterable(parts)))


def fmt(x):
    """12 significant digits; undefined values become an empty field."""
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return ""
    return f"{float(x):.12g}"


def sweep_to_csv(result, path=None):
    """Render the sweep as CSV text, optionally writing it to ``path``."""
    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    cells = result.cells if result is not None else ()
    for c in cells:
        buf.write(",".join(fmt(getattr(c, name)) for name in CSV_COLUMNS) + "\n")
    text = buf.getvalue()
    if path is not None:
        try:
            with open(path, "w", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"could not write sweep of {len(cells)} cells to {path}: {exc}") from exc
    return text


def sweep_metadata(spec, **extra):
    meta = {"kind": "sweep", "spec": spec.to_dict(), "columns": list(CSV_COLUMNS)}
    meta.update(extra)
    return json.dumps(meta, indent=2, sort_keys=True) + "\n"

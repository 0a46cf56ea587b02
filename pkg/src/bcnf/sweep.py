"""Parameter-grid classification over a (tau_L, tau_R) slice."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import make_params
from .dynamics import SimOptions, classify_point
from .prover import ProverOptions, prove_chaos

HEADER = [
    "tau_L", "tau_R", "verdict", "stop_step", "p_min", "p_max", "q_min", "q_max",
    "expansion_factor", "lyap_bound", "sim_kind", "sim_period", "sim_lyap",
]


@dataclass(frozen=True)
class GridSpec:
    tau_L: tuple[float, float, int] = (0.05, 3.0, 300)
    tau_R: tuple[float, float, int] = (-3.0, 3.0, 300)
    delta_L: float = 0.2
    delta_R: float = 2.0

    def __post_init__(self):
        for lo, hi, n in (self.tau_L, self.tau_R):
            if n < 1 or lo > hi:
                raise ValueError("ranges need steps >= 1 and lo <= hi")
        if not (self.delta_L > 0 and self.delta_R > 0):
            raise ValueError("delta_L and delta_R must be positive")

    @staticmethod
    def _axis(rng):
        lo, hi, n = rng
        return [float(v) for v in np.linspace(lo, hi, n)] if n > 1 else [float(lo)]

    def points(self) -> list[tuple[float, float]]:
        """Grid points, tau_L-major."""
        return [(tl, tr) for tl in self._axis(self.tau_L) for tr in self._axis(self.tau_R)]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def sweep_row(tau_L: float, tau_R: float, delta_L: float, delta_R: float,
              with_sim: bool = False, sim: SimOptions | None = None,
              prover: ProverOptions | None = None) -> list:
    """One CSV row (as Python values) for a single parameter point."""
    params = make_params(tau_L, delta_L, tau_R, delta_R)
    out = prove_chaos(params, prover)
    row = [tau_L, tau_R, out.verdict, out.stop_step, out.p_min, out.p_max,
           out.q_min, out.q_max, out.expansion_factor, out.lyapunov_lower_bound]
    if with_sim:
        cl = classify_point(params, sim or SimOptions())
        row += [cl.kind, cl.period, cl.lyapunov_estimate]
    else:
        row += [None, None, None]
    return row


def _row_task(args):
    return sweep_row(*args)


def run_sweep(grid: GridSpec, threads: int = 1, with_sim: bool = False,
              sim: SimOptions | None = None, prover: ProverOptions | None = None) -> list[list]:
    """Classify every grid point; row order is independent of ``threads``.

    Worker parallelism uses processes (the work is CPU-bound Python).
    """
    tasks = [(tl, tr, grid.delta_L, grid.delta_R, with_sim, sim, prover)
             for tl, tr in grid.points()]
    if threads <= 1:
        return [_row_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_row_task, tasks, chunksize=max(1, len(tasks) // (8 * threads))))


def rows_to_csv(rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def read_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))

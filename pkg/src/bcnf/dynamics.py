"""Brute-force orbit simulation, used to cross-check the prover.

The forward orbit of the origin is iterated, tested for convergence to a
periodic cycle, and otherwise summarised by a finite-time Lyapunov exponent
estimated from renormalised tangent-vector products. The inner loops are
compiled with numba; the pure-Python originals stay reachable through
``.py_func``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import Params, Point

PERIODIC = "PERIODIC"
NEG_LE = "NEG_LE"
POS_LE = "POS_LE"
DIVERGED = "DIVERGED"

LYAP_DEAD_BAND = 1e-4


@dataclass(frozen=True)
class SimOptions:
    transient: int = 10_000
    samples: int = 100_000
    divergence_radius: float = 1e8
    period_cap: int = 30
    period_tol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.period_cap < 1:
            raise ValueError("period_cap must be >= 1")
        for name in ("transient", "samples", "divergence_radius", "period_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class OrbitSummary:
    final: Point
    max_norm: float
    crossings: int
    diverged: bool


@dataclass(frozen=True)
class Classification:
    kind: str
    period: int | None = None
    lyapunov_estimate: float | None = None


@njit(cache=True)
def _step(tl, dl, tr, dr, x, y):
    if x <= 0.0:
        return tl * x + y + 1.0, -dl * x
    return tr * x + y + 1.0, -dr * x


@njit(cache=True)
def _escaped(x, y, radius):
    r = math.sqrt(x * x + y * y)
    return not (r <= radius)


@njit(cache=True)
def _orbit_kernel(tl, dl, tr, dr, x, y, n, radius):
    max_norm = math.sqrt(x * x + y * y)
    crossings = 0
    for _ in range(n):
        nx, ny = _step(tl, dl, tr, dr, x, y)
        if (x <= 0.0) != (nx <= 0.0):
            crossings += 1
        x, y = nx, ny
        r = math.sqrt(x * x + y * y)
        if not (r <= radius):
            return x, y, r, crossings, True
        if r > max_norm:
            max_norm = r
    return x, y, max_norm, crossings, False


@njit(cache=True)
def _advance(tl, dl, tr, dr, x, y, n, radius):
    for _ in range(n):
        x, y = _step(tl, dl, tr, dr, x, y)
        if _escaped(x, y, radius):
            return x, y, True
    return x, y, False


@njit(cache=True)
def _first_period(tl, dl, tr, dr, x, y, cap, tol):
    px, py = x, y
    for k in range(1, cap + 1):
        px, py = _step(tl, dl, tr, dr, px, py)
        if math.sqrt((px - x) ** 2 + (py - y) ** 2) < tol:
            return k
    return 0


@njit(cache=True)
def _period_kernel(tl, dl, tr, dr, transient, cap, tol, radius):
    """Period after two transient blocks, 0 if none, -1 if the orbit escapes."""
    x, y, esc = _advance(tl, dl, tr, dr, 0.0, 0.0, transient, radius)
    if esc:
        return -1, x, y
    k = _first_period(tl, dl, tr, dr, x, y, cap, tol)
    if k == 0:
        return 0, x, y
    x, y, esc = _advance(tl, dl, tr, dr, x, y, transient, radius)
    if esc:
        return -1, x, y
    if _first_period(tl, dl, tr, dr, x, y, k, tol) == k:
        return k, x, y
    return 0, x, y


@njit(cache=True)
def _lyapunov_kernel(tl, dl, tr, dr, transient, samples, radius, vx, vy):
    """Mean log stretch per iterate along the origin's orbit; nan if it escapes."""
    x, y, esc = _advance(tl, dl, tr, dr, 0.0, 0.0, transient, radius)
    if esc:
        return math.nan
    total = 0.0
    for _ in range(samples):
        if x <= 0.0:
            t, d = tl, dl
        else:
            t, d = tr, dr
        vx, vy = t * vx + vy, -d * vx
        nrm = math.sqrt(vx * vx + vy * vy)
        total += math.log(nrm)
        vx /= nrm
        vy /= nrm
        x, y = _step(tl, dl, tr, dr, x, y)
        if _escaped(x, y, radius):
            return math.nan
    return total / samples


def iterate_orbit(params: Params, z0: Point, n: int,
                  divergence_radius: float = 1e8) -> OrbitSummary:
    """Apply f ``n`` times; stop early and flag divergence past the radius."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x, y, mx, cr, div = _orbit_kernel(*params.as_tuple(), float(z0[0]), float(z0[1]),
                                      n, divergence_radius)
    return OrbitSummary(Point(x, y), mx, cr, div)


def _period_run(params: Params, opts: SimOptions):
    return _period_kernel(*params.as_tuple(), opts.transient, opts.period_cap,
                          opts.period_tol, opts.divergence_radius)


def detect_periodic(params: Params, opts: SimOptions = SimOptions()):
    """Period (<= ``period_cap``) of the cycle the origin's orbit settles on, or ``None``."""
    k, _, _ = _period_run(params, opts)
    return k if k > 0 else None


def periodic_orbit(params: Params, opts: SimOptions = SimOptions()):
    """Points of the detected cycle, starting from where detection ended."""
    k, x, y = _period_run(params, opts)
    if k <= 0:
        return None
    pts = [Point(x, y)]
    tl, dl, tr, dr = params.as_tuple()
    for _ in range(k - 1):
        x, y = _step.py_func(tl, dl, tr, dr, x, y)
        pts.append(Point(x, y))
    return pts


def _tangent(seed: int) -> tuple[float, float]:
    ang = np.random.default_rng(seed).uniform(0.0, math.pi)
    return math.cos(ang), math.sin(ang)


def estimate_lyapunov(params: Params, opts: SimOptions = SimOptions()):
    """Largest Lyapunov exponent of the origin's orbit, per iterate of f.

    Returns ``None`` if the orbit leaves the divergence radius.
    """
    val = _lyapunov_kernel(*params.as_tuple(), opts.transient, opts.samples,
                           opts.divergence_radius, *_tangent(opts.seed))
    return None if math.isnan(val) else float(val)


def classify_point(params: Params, opts: SimOptions = SimOptions()) -> Classification:
    k, _, _ = _period_run(params, opts)
    if k > 0:
        return Classification(PERIODIC, period=int(k))
    if k < 0:
        return Classification(DIVERGED)
    lyap = estimate_lyapunov(params, opts)
    if lyap is None:
        return Classification(DIVERGED)
    kind = POS_LE if lyap >= LYAP_DEAD_BAND else NEG_LE
    return Classification(kind, lyapunov_estimate=lyap)

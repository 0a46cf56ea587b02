"""Trapping region for the induced (first-return) map on the third quadrant.

The induced map F sends a point Z with x < 0, y <= 0 to the first iterate of
f that lands back there. Each return is p left-branch steps followed by q
right-branch steps. Given two preimage lines p_min < p_max, the candidate
region is the quadrilateral with corners

    S = (0, c_{p_max}),  f(S),  f(T),  T = (0, c_{p_min})

and four inequalities on the returns of S and T decide forward invariance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import LEFT, RIGHT, Params, Point, apply_branch, apply_branch_inverse, apply_f
from .partition import (
    DEFAULT_CHI_L_CAP,
    DEFAULT_CHI_R_CAP,
    PreimageFan,
    chi_L,
    chi_R,
)

U_ABOVE_S = "U_above_S"
V_BELOW_T = "V_below_T"
FS_RIGHT = "FS_right"
FT_LEFT = "FT_left"


class TrappingFailure(Exception):
    """The candidate region could not be constructed."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class Caps:
    chi_L: int = DEFAULT_CHI_L_CAP
    chi_R: int = DEFAULT_CHI_R_CAP


DEFAULT_CAPS = Caps()


@dataclass(frozen=True)
class InducedReturn:
    p: int
    q: int
    image: Point


@dataclass(frozen=True)
class CornerReturn:
    """Return data of one corner (S or T) on the y-axis.

    ``corner = (0, c_k)``; ``k + 1`` left steps take it strictly right of the
    axis, ``q`` right steps bring it back to the third quadrant at ``image``.
    ``anchor`` is the point where the line through ``image`` and its
    right-branch preimage meets the y-axis (U for S, V for T).
    """

    k: int
    corner: Point
    first: Point
    q: int
    image: Point
    anchor: Point


@dataclass(frozen=True)
class TrappingRegion:
    p_min: int
    p_max: int
    S: Point
    T: Point
    fS: Point
    fT: Point
    U: Point
    V: Point
    FS: Point
    FT: Point
    q_S: int
    q_T: int
    q_min: int
    q_max: int


def evaluate_F(params: Params, z: Point, caps: Caps = DEFAULT_CAPS):
    """Induced map by composed branches: ``f_R^q(f_L^p(z))``.

    Returns ``None`` when either escape time exceeds its cap.
    """
    p = chi_L(params, z, caps.chi_L)
    if p is None:
        return None
    w = z
    for _ in range(p):
        w = apply_branch(params, w, LEFT)
    q = chi_R(params, w, caps.chi_R)
    if q is None:
        return None
    for _ in range(q):
        w = apply_branch(params, w, RIGHT)
    return InducedReturn(p, q, w)


def first_return(params: Params, z: Point, cap: int = 10_000):
    """Direct iteration of f until the orbit re-enters ``x < 0, y <= 0``.

    Returns ``(n, image)`` or ``None``. Used as an independent check of
    :func:`evaluate_F`.
    """
    for n in range(1, cap + 1):
        z = apply_f(params, z)
        if z[0] < 0.0 and z[1] <= 0.0:
            return n, z
    return None


def _axis_crossing(a: Point, b: Point) -> Point:
    """Intersection of the line through ``a`` and ``b`` with the y-axis."""
    dx = b[0] - a[0]
    if dx == 0.0:
        raise TrappingFailure("degenerate line")
    y = a[1] + (b[1] - a[1]) * (0.0 - a[0]) / dx
    if not math.isfinite(y):
        raise TrappingFailure("degenerate line")
    return Point(0.0, y)


def corner_return(params: Params, fan: PreimageFan, k: int,
                  caps: Caps = DEFAULT_CAPS) -> CornerReturn:
    """Follow the corner ``(0, c_k)`` through one return of the induced map.

    The corner lies on the k-th preimage of the y-axis, so k left steps put
    it on the axis and the (k+1)-th puts it on the positive x-axis.
    """
    corner = Point(0.0, fan.intercept(k))
    w = corner
    for _ in range(k + 1):
        w = apply_branch(params, w, LEFT)
    if not w[0] > 0.0:
        raise TrappingFailure(f"corner orbit for line {k} does not leave the left half-plane")
    first = w
    q = chi_R(params, w, caps.chi_R)
    if q is None:
        raise TrappingFailure("not returning")
    for _ in range(q):
        w = apply_branch(params, w, RIGHT)
    anchor = _axis_crossing(w, apply_branch_inverse(params, w, RIGHT))
    return CornerReturn(k, corner, first, q, w, anchor)


def _s_violations(S, FS, U, eps):
    fS_x = S[1] + 1.0
    bad = []
    if not U[1] - S[1] > eps:
        bad.append(U_ABOVE_S)
    if not fS_x * S[1] - (fS_x * FS[1] + S[1] * FS[0]) > eps:
        bad.append(FS_RIGHT)
    return bad


def _t_violations(T, FT, V, eps):
    fT_x = T[1] + 1.0
    bad = []
    if not T[1] - V[1] > eps:
        bad.append(V_BELOW_T)
    if not (fT_x * FT[1] + T[1] * FT[0]) - fT_x * T[1] > eps:
        bad.append(FT_LEFT)
    return bad


def s_conditions(s: CornerReturn, eps: float = 0.0) -> list[str]:
    """Violated conditions among U-above-S and F(S)-right-of-line(S, f(S))."""
    return _s_violations(s.corner, s.image, s.anchor, eps)


def t_conditions(t: CornerReturn, eps: float = 0.0) -> list[str]:
    """Violated conditions among V-below-T and F(T)-left-of-line(T, f(T))."""
    return _t_violations(t.corner, t.image, t.anchor, eps)


def region_from_corners(s: CornerReturn, t: CornerReturn) -> TrappingRegion:
    S, T = s.corner, t.corner
    return TrappingRegion(
        p_min=t.k, p_max=s.k,
        S=S, T=T,
        fS=Point(S[1] + 1.0, 0.0), fT=Point(T[1] + 1.0, 0.0),
        U=s.anchor, V=t.anchor,
        FS=s.image, FT=t.image,
        q_S=s.q, q_T=t.q,
        q_min=min(s.q, t.q), q_max=max(s.q, t.q) + 1,
    )


def build_trapping(params: Params, fan: PreimageFan, p_min: int, p_max: int,
                   caps: Caps = DEFAULT_CAPS) -> TrappingRegion:
    """Construct the quadrilateral for ``(p_min, p_max)`` and its corner returns.

    Raises
    ------
    TrappingFailure
        ``"not returning"`` if a corner's right-half-plane excursion exceeds
        the cap, ``"degenerate line"`` if U or V cannot be formed.
    """
    if not 1 <= p_min < p_max <= len(fan):
        raise ValueError(f"need 1 <= p_min < p_max <= {len(fan)}, got ({p_min}, {p_max})")
    return region_from_corners(
        corner_return(params, fan, p_max, caps),
        corner_return(params, fan, p_min, caps),
    )


def check_conditions(region: TrappingRegion, eps: float = 0.0) -> list[str]:
    """Violated forward-invariance conditions; an empty list means all hold.

    A condition holds when its strict inequality holds by more than ``eps``.
    With ``f(S) = (c + 1, 0)`` the F(S) test reads
    ``x_fS * y_FS + y_S * x_FS < x_fS * y_S``, and mirrored for T.
    """
    return (_s_violations(region.S, region.FS, region.U, eps)
            + _t_violations(region.T, region.FT, region.V, eps))


def omega_contains(region: TrappingRegion, z: Point, tol: float = 0.0) -> bool:
    """Membership in the quadrilateral (restricted to ``x < 0, y <= 0``).

    ``tol`` widens every bound, for checking images that land on an edge.
    """
    x, y = z
    if not (x < 0.0 and y <= tol):
        return False
    cmax = region.S[1]
    cmin = region.T[1]
    lo = (cmax + 1.0) / cmax * (cmax - y)
    hi = (cmin + 1.0) / cmin * (cmin - y)
    return lo - tol <= x <= hi + tol


def omega_polygon(region: TrappingRegion) -> list[Point]:
    return [region.S, region.fS, region.fT, region.T]


def F_omega_polygon(region: TrappingRegion, params: Params) -> list[Point]:
    """Hexagon bounding the image of the region under the induced map."""
    return [
        region.U,
        region.FS,
        apply_f(params, region.U),
        apply_f(params, region.V),
        region.FT,
        region.V,
    ]


def _orbit(params: Params, z: Point, n: int) -> list[Point]:
    out = [z]
    for _ in range(n):
        z = apply_f(params, z)
        out.append(z)
    return out


def diagnostic_polygons(region: TrappingRegion, params: Params) -> dict[str, list[Point]]:
    """Polygons tracing the excursions of S and T through each half-plane.

    ``Psi_L`` follows both corners through the left half-plane, ``Psi_R``
    through the right half-plane up to U and V, and ``Delta`` is where the
    region's points land on first leaving the left half-plane.
    """
    pmax, pmin = region.p_max, region.p_min
    s_orb = _orbit(params, region.S, pmax + region.q_S)
    t_orb = _orbit(params, region.T, pmin + region.q_T)
    psi_L = s_orb[: pmax + 1] + t_orb[pmin::-1]
    psi_R = (
        s_orb[pmax: pmax + region.q_S]
        + [region.U, region.V]
        + t_orb[pmin + region.q_T - 1: pmin - 1: -1]
    )
    if pmin == 1:
        # f(T) is the origin, collinear with f^2(T) and f^{p_max+1}(S)
        delta = [s_orb[pmax], s_orb[pmax + 1], t_orb[pmin]]
    else:
        delta = [s_orb[pmax], s_orb[pmax + 1], t_orb[pmin + 1], t_orb[pmin]]
    return {"Psi_L": psi_L, "Psi_R": psi_R, "Delta": delta}


def sample_omega(region: TrappingRegion, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` points uniform in the quadrilateral, as an ``(n, 2)`` array.

    The quadrilateral is convex; it is split along the diagonal S-f(T) and
    each triangle is sampled in proportion to its area.
    """
    S, fS, fT, T = (np.asarray(v, dtype=float) for v in omega_polygon(region))

    def area(a, b, c):
        return 0.5 * abs((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    tris = [(S, fS, fT), (S, fT, T)]
    w = np.array([area(*t) for t in tris])
    pick = rng.random(n) < w[0] / w.sum()
    u = rng.random((n, 2))
    flip = u.sum(axis=1) > 1.0
    u[flip] = 1.0 - u[flip]
    out = np.empty((n, 2))
    for sel, (a, b, c) in ((pick, tris[0]), (~pick, tris[1])):
        uu = u[sel]
        out[sel] = a + uu[:, :1] * (b - a) + uu[:, 1:] * (c - a)
    return out

"""Directions and stretching of tangent vectors under return derivatives.

A direction is an angle on the half-circle ``K = [0, pi)`` with 0 and pi
identified. For a return matrix ``M`` the angle map ``G`` sends theta to the
direction of ``M (cos theta, sin theta)`` and the norm map ``H`` gives its
length. Cones are represented by closed arcs of K.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import Mat2, Params, return_matrix

PI = math.pi
ANGLE_TOL = 1e-9
MERGE_TOL = 1e-10
QUAD_TOL = 1e-12


def reduce_angle(theta: float) -> float:
    """Reduce an angle into ``[0, pi)``."""
    t = math.fmod(theta, PI)
    if t < 0.0:
        t += PI
    if t >= PI:
        t = 0.0
    return t


def circle_dist(a: float, b: float) -> float:
    d = abs(reduce_angle(a) - reduce_angle(b))
    return min(d, PI - d)


def ccw_offset(start: float, theta: float) -> float:
    """Distance travelled counter-clockwise from ``start`` to ``theta`` on K."""
    return reduce_angle(theta - start)


@dataclass(frozen=True)
class CircleInterval:
    """Closed arc ``[lo, hi]`` of K, wrapping through 0 when ``lo > hi``."""

    lo: float
    hi: float

    @property
    def length(self) -> float:
        return ccw_offset(self.lo, self.hi)

    def contains(self, theta: float, tol: float = 0.0) -> bool:
        """Membership, with ``tol`` of slack at either end."""
        off = ccw_offset(self.lo, theta)
        if off <= self.length + tol:
            return True
        return PI - off <= tol

    def contains_strictly(self, theta: float) -> bool:
        off = ccw_offset(self.lo, theta)
        return 0.0 < off < self.length

    def intersects(self, other: "CircleInterval") -> bool:
        return (self.contains(other.lo) or self.contains(other.hi)
                or other.contains(self.lo))

    def widen(self, eps: float) -> "CircleInterval":
        return CircleInterval(reduce_angle(self.lo - eps), reduce_angle(self.hi + eps))

    def as_list(self) -> list[float]:
        return [self.lo, self.hi]


@dataclass(frozen=True)
class AnglePair:
    """Stable and unstable fixed directions of one return matrix."""

    stable: float
    unstable: float
    p: int
    q: int
    eta: float


@dataclass(frozen=True)
class ExpansionCrossing:
    """Angles where H crosses 1 going down (``dec``) and up (``inc``).

    ``H < 1`` exactly on the open arc from ``dec`` to ``inc``.
    """

    dec: float
    inc: float


class Crossing(enum.Enum):
    NONE_ALL_ABOVE = "none_all_above"
    NONE_NOT_EXPANDING = "none_not_expanding"


@dataclass(frozen=True)
class GammaSet:
    """Rectangle of (p, q) return types.

    Iterates with p descending (outer) and q ascending (inner); the first
    failing pair reported by any check follows this order.
    """

    p_min: int
    p_max: int
    q_min: int
    q_max: int

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for p in range(self.p_max, self.p_min - 1, -1):
            for q in range(self.q_min, self.q_max + 1):
                yield p, q

    def __len__(self):
        return (self.p_max - self.p_min + 1) * (self.q_max - self.q_min + 1)


class ConeFailure(Exception):
    """A cone condition failed for the return type ``pair``."""

    def __init__(self, pair, reason: str):
        super().__init__(f"{reason} at (p, q) = {pair}")
        self.pair = pair
        self.reason = reason


def gamma_matrices(params: Params, gamma: GammaSet) -> dict[tuple[int, int], Mat2]:
    """Return matrices ``A_R^q A_L^p`` for every pair, in the set's iteration order."""
    return {pq: return_matrix(params, *pq) for pq in gamma}


def _image(m: Mat2, theta: float) -> tuple[float, float]:
    c, s = math.cos(theta), math.sin(theta)
    return m.a * c + m.b * s, m.c * c + m.d * s


def angle_map(m: Mat2, theta: float) -> float:
    u, v = _image(m, theta)
    return reduce_angle(math.atan2(v, u))


def norm_map(m: Mat2, theta: float) -> float:
    return math.hypot(*_image(m, theta))


def angle_derivative(m: Mat2, theta: float) -> float:
    """``dG/dtheta = det(M) / H(theta)^2``."""
    return m.det / norm_map(m, theta) ** 2


def _eigen_angle(m: Mat2, lam: float) -> float:
    # (b, lam - a) and (lam - d, c) both span the eigenvector; take the better conditioned
    u1, v1 = m.b, lam - m.a
    u2, v2 = lam - m.d, m.c
    if math.hypot(u1, v1) >= math.hypot(u2, v2):
        return reduce_angle(math.atan2(v1, u1))
    return reduce_angle(math.atan2(v2, u2))


def fixed_points(m: Mat2, p: int = 0, q: int = 0):
    """Stable and unstable fixed directions of the angle map, or ``None``.

    ``None`` unless ``det(M) < trace(M)^2 / 4`` with eigenvalues of distinct
    modulus. The stable direction is the eigenvector of the dominant
    eigenvalue ``lambda_1``; ``eta = lambda_2 / lambda_1`` is the angle map's
    derivative there.
    """
    tr, det = m.trace, m.det
    disc = 0.25 * tr * tr - det
    if not disc > 0.0:
        return None
    root = math.sqrt(disc)
    lam1 = 0.5 * tr + math.copysign(root, tr) if tr != 0.0 else root
    if lam1 == 0.0:
        return None
    lam2 = det / lam1
    if abs(lam1) == abs(lam2):
        return None
    if abs(lam2) > abs(lam1):
        lam1, lam2 = lam2, lam1
    stable = _eigen_angle(m, lam1)
    unstable = _eigen_angle(m, lam2)
    pair = AnglePair(stable, unstable, p, q, lam2 / lam1)
    if circle_dist(angle_map(m, stable), stable) > ANGLE_TOL:
        raise ArithmeticError(f"stable direction residual too large for {m}")
    return pair


def _merge(angles: Iterable[float]) -> list[float]:
    out: list[float] = []
    for a in sorted(angles):
        if not out or a - out[-1] > MERGE_TOL:
            out.append(a)
    if len(out) > 1 and PI - out[-1] + out[0] <= MERGE_TOL:
        out.pop()
    return out


def unmixed_interval(pairs: list[AnglePair]):
    """Smallest arc holding every stable direction and no unstable one.

    Returns ``None`` when the fixed points are mixed. The arc is the
    complement of the gap between circularly consecutive stable directions
    that contains all of the unstable ones.
    """
    if not pairs:
        raise ValueError("need at least one angle pair")
    stable = _merge(pr.stable for pr in pairs)
    unstable = [pr.unstable for pr in pairs]
    n = len(stable)
    for i in range(n):
        lo, hi = stable[i], stable[(i + 1) % n]
        gap_len = ccw_offset(lo, hi) if n > 1 else PI
        ok = True
        for u in unstable:
            off = ccw_offset(lo, u)
            if not (MERGE_TOL < off < gap_len - MERGE_TOL):
                ok = False
                break
        if ok:
            return CircleInterval(hi, lo)
    return None


def _maps_into(m: Mat2, j: CircleInterval, target: CircleInterval, tol: float,
               strict: bool) -> bool:
    # G is an orientation-preserving circle bijection, so G(j) is the arc
    # from G(lo) to G(hi); it sits in target iff both ends do, in order.
    g_lo, g_hi = angle_map(m, j.lo), angle_map(m, j.hi)
    if strict:
        if not (target.contains_strictly(g_lo) and target.contains_strictly(g_hi)):
            return False
    elif not (target.contains(g_lo, tol) and target.contains(g_hi, tol)):
        return False
    o_lo = ccw_offset(target.lo, g_lo)
    o_hi = ccw_offset(target.lo, g_hi)
    if o_lo > PI - tol:
        o_lo -= PI
    if o_hi > PI - tol:
        o_hi -= PI
    return o_lo <= o_hi + tol


def invariance_check(params: Params, gamma: GammaSet, j: CircleInterval,
                     tol: float = ANGLE_TOL) -> bool:
    """True iff every angle map of the family sends ``j`` into itself."""
    return all(_maps_into(m, j, j, tol, strict=False)
               for m in gamma_matrices(params, gamma).values())


def contracting_margin_check(params: Params, gamma: GammaSet, j: CircleInterval,
                             eps: float) -> bool:
    """True iff ``j`` widened by ``eps`` maps into its own interior."""
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if j.length + 2.0 * eps >= PI:
        return False
    je = j.widen(eps)
    return all(_maps_into(m, je, je, 0.0, strict=True)
               for m in gamma_matrices(params, gamma).values())


def max_contracting_margin(params: Params, gamma: GammaSet, j: CircleInterval,
                           tol: float = 1e-6) -> float:
    """Bisect for the largest ``eps`` passing :func:`contracting_margin_check`.

    Assumes admissible margins form an interval starting at 0. Returns 0.0
    when even the smallest probe fails.
    """
    lo = tol * 1e-3
    if not contracting_margin_check(params, gamma, j, lo):
        return 0.0
    hi = 0.5 * (PI - j.length)
    if contracting_margin_check(params, gamma, j, hi * (1 - 1e-12)):
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if contracting_margin_check(params, gamma, j, mid):
            lo = mid
        else:
            hi = mid
    return lo


def _harmonic(m: Mat2) -> tuple[float, float, float]:
    """``H^2 = alpha + beta cos 2t + gamma sin 2t``."""
    a, b, c, d = m
    alpha = 0.5 * (a * a + b * b + c * c + d * d)
    beta = 0.5 * (a * a + c * c - b * b - d * d)
    gamma = a * b + c * d
    return alpha, beta, gamma


def _dH2(m: Mat2, theta: float) -> float:
    _, beta, gamma = _harmonic(m)
    return 2.0 * (gamma * math.cos(2 * theta) - beta * math.sin(2 * theta))


def _unit_roots(m: Mat2) -> list[float]:
    """Angles on K with H = 1, from the quadratic in tan(theta)."""
    a, b, c, d = m
    A = b * b + d * d - 1.0
    B = 2.0 * (a * b + c * d)
    C = a * a + c * c - 1.0
    if abs(A) < QUAD_TOL:
        roots = [PI / 2]
        if B != 0.0:
            roots.append(reduce_angle(math.atan(-C / B)))
        return roots
    disc = B * B - 4.0 * A * C
    if disc <= QUAD_TOL:
        return []
    sq = math.sqrt(disc)
    qq = -0.5 * (B + math.copysign(sq, B))
    t1 = qq / A
    t2 = C / qq if qq != 0.0 else -t1
    return [reduce_angle(math.atan(t1)), reduce_angle(math.atan(t2))]


def unit_crossings(m: Mat2):
    """Where ``H`` crosses 1, or a :class:`Crossing` saying it never does.

    Returns :class:`ExpansionCrossing` when there are exactly two distinct
    crossings. Otherwise ``Crossing.NONE_ALL_ABOVE`` if ``H(0) > 1`` and
    ``Crossing.NONE_NOT_EXPANDING`` if not.
    """
    roots = _unit_roots(m)
    if len(roots) == 2 and circle_dist(*roots) > 0.0:
        s0, s1 = _dH2(m, roots[0]), _dH2(m, roots[1])
        if s0 < 0.0 < s1:
            dec, inc = roots
        elif s1 < 0.0 < s0:
            inc, dec = roots
        else:
            dec = inc = None
        if dec is not None:
            mid = reduce_angle(dec + 0.5 * ccw_offset(dec, inc))
            if norm_map(m, mid) < 1.0:
                return ExpansionCrossing(dec, inc)
    return Crossing.NONE_ALL_ABOVE if norm_map(m, 0.0) > 1.0 else Crossing.NONE_NOT_EXPANDING


def min_norm_on_arc(m: Mat2, j: CircleInterval) -> float:
    """Closed-form minimum of ``H`` over the arc ``j``.

    ``H^2 = alpha + R cos(2 theta - phi)`` has one minimum per period of K,
    at ``theta = (phi + pi) / 2``; check it and the two endpoints.
    """
    alpha, beta, gamma = _harmonic(m)
    phi = math.atan2(gamma, beta)
    cands = [j.lo, j.hi]
    tmin = reduce_angle(0.5 * (phi + PI))
    if j.contains(tmin):
        cands.append(tmin)
    return min(norm_map(m, t) for t in cands)


def expansion_check(params: Params, gamma: GammaSet, j: CircleInterval) -> float:
    """Verify ``H > 1`` on ``j`` for the whole family; return the expansion factor.

    For each pair the crossings of ``H = 1`` must exist and the arc
    ``[dec, inc]`` must miss ``j``. The factor is the minimum of ``H`` over
    ``j`` and the family.

    Raises
    ------
    ConeFailure
        For the first failing pair in the set's iteration order.
    """
    factor = math.inf
    for pq, m in gamma_matrices(params, gamma).items():
        cr = unit_crossings(m)
        if not isinstance(cr, ExpansionCrossing):
            raise ConeFailure(pq, f"no unit crossings ({cr.value})")
        if j.intersects(CircleInterval(cr.dec, cr.inc)):
            raise ConeFailure(pq, "cone meets the contracting arc")
        factor = min(factor, min_norm_on_arc(m, j))
    if not factor > 1.0:
        raise ConeFailure(None, f"expansion factor {factor!r} not above 1")
    return factor

"""Five-step decision procedure certifying a chaotic attractor.

1. p_max: smallest p in 2..min(p_star, 15) whose corner S = (0, c_p) passes
   the U-above-S and F(S)-right tests.
2. p_min: largest p below p_max whose corner T = (0, c_p) passes the
   V-below-T and F(T)-left tests.
3. Every return matrix over the (p, q) rectangle must have real eigenvalues
   of distinct modulus (det < trace^2 / 4).
4. The stable and unstable fixed directions must be unmixed; this gives the
   cone arc J.
5. H > 1 on J for every return matrix.

Passing all five yields a trapping region with an invariant expanding cone
and hence a Lyapunov exponent of at least ``ln(c) / (p_max + q_max)`` per
iterate of the map.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .cone import (
    ConeFailure,
    CircleInterval,
    Crossing,
    GammaSet,
    expansion_check,
    fixed_points,
    gamma_matrices,
    unit_crossings,
    unmixed_interval,
)
from .partition import preimage_fan, p_star
from .core import Params
from .trapping import (
    DEFAULT_CAPS,
    Caps,
    TrappingFailure,
    corner_return,
    region_from_corners,
    s_conditions,
    t_conditions,
)

CHAOS = "chaos"
STOP = "stop"


@dataclass(frozen=True)
class ProverOptions:
    p_bound: int = 15
    caps: Caps = DEFAULT_CAPS
    cond_margin: float = 0.0


@dataclass
class ProofOutcome:
    verdict: str
    stop_step: int | None = None
    stop_reason: str | None = None
    p_min: int | None = None
    p_max: int | None = None
    q_min: int | None = None
    q_max: int | None = None
    J: CircleInterval | None = None
    expansion_factor: float | None = None
    lyapunov_lower_bound: float | None = None
    failing_pair: tuple[int, int] | None = None
    failing_pairs: list | None = None
    skipped: list = field(default_factory=list)
    region: object = field(default=None, repr=False, compare=False)
    audit: list = field(default_factory=list, repr=False)

    @property
    def is_chaos(self) -> bool:
        return self.verdict == CHAOS

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict}
        opt = {
            "stop_step": self.stop_step,
            "stop_reason": self.stop_reason,
            "p_min": self.p_min,
            "p_max": self.p_max,
            "q_min": self.q_min,
            "q_max": self.q_max,
            "J": self.J.as_list() if self.J is not None else None,
            "expansion_factor": self.expansion_factor,
            "lyap_bound": self.lyapunov_lower_bound,
            "failing_pair": list(self.failing_pair) if self.failing_pair else None,
            "failing_pairs": [list(pq) for pq in self.failing_pairs] if self.failing_pairs else None,
        }
        d.update({k: v for k, v in opt.items() if v is not None})
        if self.skipped:
            d["skipped"] = [{"p": p, "reason": r} for p, r in self.skipped]
        if self.audit:
            d["audit"] = self.audit
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def certified_bound(c: float, p_max: int, q_max: int) -> float:
    """Lower bound ``ln(c) / (p_max + q_max)`` on the Lyapunov exponent of f."""
    if not c > 1.0:
        raise ValueError(f"expansion factor must exceed 1, got {c!r}")
    return math.log(c) / (p_max + q_max)


def _audit_entry(p, q, m, pair):
    e = {"p": p, "q": q, "det": m.det, "trace": m.trace}
    if pair is not None:
        e.update(stable=pair.stable, unstable=pair.unstable, eta=pair.eta)
        cr = unit_crossings(m)
        if isinstance(cr, Crossing):
            e["crossings"] = cr.value
        else:
            e.update(dec=cr.dec, inc=cr.inc)
    return e


def _fixed_or_none(m, p, q):
    # an unverifiable eigen-direction counts as a failed eigenvalue test
    try:
        return fixed_points(m, p, q)
    except ArithmeticError:
        return None


def prove_chaos(params: Params, options: ProverOptions | None = None) -> ProofOutcome:
    opts = options or ProverOptions()
    ps = p_star(params)
    top = int(min(ps, opts.p_bound))
    try:
        fan = preimage_fan(params, top, ps)
    except ArithmeticError as exc:
        return ProofOutcome(STOP, stop_step=1, stop_reason=str(exc))

    # corners whose return could not be followed are skipped, but recorded
    skipped = []

    def scan(ps, conditions):
        for p in ps:
            try:
                cand = corner_return(params, fan, p, opts.caps)
            except TrappingFailure as exc:
                skipped.append((p, exc.reason))
                continue
            if not conditions(cand, opts.cond_margin):
                return cand
        return None

    def why(default):
        return "not returning" if any(r == "not returning" for _, r in skipped) else default

    # Step 1
    s_ret = scan(range(2, top + 1), s_conditions)
    if s_ret is None:
        return ProofOutcome(STOP, stop_step=1, stop_reason=why("no admissible p_max"),
                            skipped=skipped)
    p_max = s_ret.k

    # Step 2
    t_ret = scan(range(p_max - 1, 0, -1), t_conditions)
    if t_ret is None:
        return ProofOutcome(STOP, stop_step=2, stop_reason=why("no admissible p_min"),
                            p_max=p_max, skipped=skipped)

    region = region_from_corners(s_ret, t_ret)
    out = ProofOutcome(STOP, p_min=region.p_min, p_max=p_max, q_min=region.q_min,
                       q_max=region.q_max, region=region, skipped=skipped)
    gamma = GammaSet(region.p_min, region.p_max, region.q_min, region.q_max)
    mats = gamma_matrices(params, gamma)

    # Step 3
    pairs = [_fixed_or_none(m, p, q) for (p, q), m in mats.items()]
    bad = [pq for pq, fp in zip(mats, pairs) if fp is None]
    if bad:
        out.stop_step, out.failing_pair, out.failing_pairs = 3, bad[0], bad
        out.stop_reason = "return matrix lacks distinct real eigenvalues"
        return out
    out.audit = [_audit_entry(p, q, m, pr) for ((p, q), m), pr in zip(mats.items(), pairs)]

    # Step 4
    J = unmixed_interval(pairs)
    if J is None:
        out.stop_step, out.stop_reason = 4, "fixed directions are mixed"
        return out
    out.J = J

    # Step 5
    try:
        c = expansion_check(params, gamma, J)
    except ConeFailure as exc:
        out.stop_step, out.stop_reason, out.failing_pair = 5, exc.reason, exc.pair
        return out
    out.verdict = CHAOS
    out.expansion_factor = c
    out.lyapunov_lower_bound = certified_bound(c, region.p_max, region.q_max)
    return out

"""The border-collision normal form and its affine pieces.

The map is

    f(x, y) = A_L (x, y) + (1, 0)   for x <= 0
    f(x, y) = A_R (x, y) + (1, 0)   for x >= 0

with ``A_S = [[tau_S, 1], [-delta_S, 0]]``. The border parameter mu is fixed
at 1. Everything here is scalar float arithmetic on immutable tuples; the
matrices are 2x2 and the powers small, so numpy would only add overhead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

LEFT = "L"
RIGHT = "R"


class ParameterError(ValueError):
    """Raised when map parameters fall outside the admissible region."""


@dataclass(frozen=True)
class Params:
    """Parameters (tau_L, delta_L, tau_R, delta_R) of the normal form."""

    tau_L: float
    delta_L: float
    tau_R: float
    delta_R: float

    def __post_init__(self):
        for name in ("tau_L", "delta_L", "tau_R", "delta_R"):
            if not math.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        if not self.tau_L > 0:
            raise ParameterError("tau_L must be positive")
        if not self.delta_L > 0:
            raise ParameterError("delta_L must be positive")
        if not self.delta_R > 0:
            raise ParameterError("delta_R must be positive")

    def tau(self, side: str) -> float:
        return self.tau_L if side == LEFT else self.tau_R

    def delta(self, side: str) -> float:
        return self.delta_L if side == LEFT else self.delta_R

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.tau_L, self.delta_L, self.tau_R, self.delta_R)


class Point(NamedTuple):
    x: float
    y: float


class Mat2(NamedTuple):
    """Row-major 2x2 matrix ``[[a, b], [c, d]]``."""

    a: float
    b: float
    c: float
    d: float

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> float:
        return self.a + self.d


IDENTITY = Mat2(1.0, 0.0, 0.0, 1.0)


def make_params(tau_L, delta_L, tau_R, delta_R) -> Params:
    """Validate and build a :class:`Params`.

    Raises
    ------
    ParameterError
        Naming the first violated constraint (``tau_L > 0``,
        ``delta_L > 0``, ``delta_R > 0``, all finite).
    """
    return Params(float(tau_L), float(delta_L), float(tau_R), float(delta_R))


def _side(side: str) -> str:
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")
    return side


def apply_branch(params: Params, z: Point, side: str) -> Point:
    t = params.tau(_side(side))
    d = params.delta(side)
    return Point(t * z[0] + z[1] + 1.0, -d * z[0])


def apply_branch_inverse(params: Params, z: Point, side: str) -> Point:
    t = params.tau(_side(side))
    d = params.delta(side)
    x = -z[1] / d
    return Point(x, z[0] - 1.0 - t * x)


def apply_f(params: Params, z: Point) -> Point:
    x, y = z
    if x <= 0.0:
        return Point(params.tau_L * x + y + 1.0, -params.delta_L * x)
    return Point(params.tau_R * x + y + 1.0, -params.delta_R * x)


def branch_matrix(params: Params, side: str) -> Mat2:
    return Mat2(params.tau(_side(side)), 1.0, -params.delta(side), 0.0)


def mat_mul(m: Mat2, n: Mat2) -> Mat2:
    return Mat2(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def mat_pow(m: Mat2, n: int) -> Mat2:
    if n < 0:
        raise ValueError("mat_pow needs n >= 0")
    out = IDENTITY
    for _ in range(n):
        out = mat_mul(out, m)
    return out


def mat_vec(m: Mat2, v: Point) -> Point:
    return Point(m.a * v[0] + m.b * v[1], m.c * v[0] + m.d * v[1])


def return_matrix(params: Params, p: int, q: int) -> Mat2:
    """``A_R^q A_L^p``, the derivative of a return with p left and q right steps."""
    return mat_mul(
        mat_pow(branch_matrix(params, RIGHT), q),
        mat_pow(branch_matrix(params, LEFT), p),
    )

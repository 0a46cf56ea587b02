"""Computer-assisted chaos certificates for the 2d border-collision normal form."""

from .core import Mat2, ParameterError, Params, Point, apply_f, make_params
from .cone import CircleInterval, GammaSet
from .dynamics import SimOptions, classify_point, detect_periodic, estimate_lyapunov
from .partition import p_star, preimage_fan
from .prover import ProofOutcome, ProverOptions, certified_bound, prove_chaos
from .trapping import build_trapping, check_conditions, evaluate_F

__all__ = [
    "CircleInterval", "GammaSet", "Mat2", "ParameterError", "Params", "Point",
    "ProofOutcome", "ProverOptions", "SimOptions", "apply_f", "build_trapping",
    "certified_bound", "check_conditions", "classify_point", "detect_periodic",
    "estimate_lyapunov", "evaluate_F", "make_params", "p_star", "preimage_fan",
    "prove_chaos",
]

__version__ = "0.1.0"

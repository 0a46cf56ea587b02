"""Command-line entry point: ``bcnf {prove,sweep,simulate,phase}``.

Exit codes: 0 success or CHAOS, 1 STOP verdict (or no constructible region
for ``phase``), 2 usage error, 3 I/O error. Every flag may also be given in
a ``key=value`` file passed with ``--config``; flags on the command line win.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import ParameterError, make_params
from .dynamics import SimOptions, classify_point, iterate_orbit
from .partition import preimage_fan
from .prover import ProverOptions, prove_chaos
from .sweep import GridSpec, rows_to_csv, run_sweep
from .trapping import F_omega_polygon, diagnostic_polygons, omega_polygon

EXIT_OK, EXIT_STOP, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "tau_l": None, "delta_l": None, "tau_r": None, "delta_r": None,
    "tl_range": "0.05:3:300", "tr_range": "-3:3:300",
    "out": None, "threads": 1, "with_sim": False,
    "transient": 10_000, "samples": 100_000, "period_cap": 30, "tol": 1e-10,
    "attractor_samples": 2000, "p_bound": 15,
}


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[float, float, int]:
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected lo:hi:steps") from None


def read_config(path: str) -> dict:
    cfg = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"config line without '=': {raw.rstrip()}")
                k, v = (s.strip() for s in line.split("=", 1))
                cfg[k.lstrip("-").replace("-", "_")] = v
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    return cfg


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bcnf", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, deltas_only=False):
        p.add_argument("--config")
        if not deltas_only:
            p.add_argument("--tau-l", type=float)
            p.add_argument("--tau-r", type=float)
        p.add_argument("--delta-l", type=float)
        p.add_argument("--delta-r", type=float)
        p.add_argument("--p-bound", type=int)

    def sim_flags(p):
        p.add_argument("--transient", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--period-cap", type=int)
        p.add_argument("--tol", type=float)

    p = sub.add_parser("prove", help="run the decision procedure at one parameter point")
    common(p)
    p = sub.add_parser("sweep", help="classify a (tau_L, tau_R) grid into CSV")
    common(p, deltas_only=True)
    p.add_argument("--tl-range")
    p.add_argument("--tr-range")
    p.add_argument("--out")
    p.add_argument("--threads", type=int)
    p.add_argument("--with-sim", action="store_const", const=True)
    sim_flags(p)
    p = sub.add_parser("simulate", help="classify the origin's orbit by simulation")
    common(p)
    sim_flags(p)
    p = sub.add_parser("phase", help="export trapping-region polygons and attractor points")
    common(p)
    p.add_argument("--attractor-samples", type=int)
    p.add_argument("--out")
    p.add_argument("--transient", type=int)
    return ap


def _convert(key, default, raw: str):
    try:
        if isinstance(default, bool):
            return raw.lower() in ("1", "true", "yes", "on")
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float) or default is None and key != "out":
            return float(raw)
        return raw
    except ValueError:
        raise UsageError(f"bad config value {key}={raw!r}") from None


def _resolve(ns: argparse.Namespace) -> dict:
    cfg = read_config(ns.config) if getattr(ns, "config", None) else {}
    opts = {}
    for key, default in DEFAULTS.items():
        val = getattr(ns, key, None)
        if val is None and key in cfg:
            val = _convert(key, default, cfg[key])
        opts[key] = default if val is None else val
    if ns.cmd == "sweep":
        opts["delta_l"] = 0.2 if opts["delta_l"] is None else opts["delta_l"]
        opts["delta_r"] = 2.0 if opts["delta_r"] is None else opts["delta_r"]
    return opts


def _params(o):
    names = ("tau_l", "delta_l", "tau_r", "delta_r")
    missing = [n for n in names if o[n] is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))
    try:
        return make_params(*(o[n] for n in names))
    except ParameterError as exc:
        raise UsageError(str(exc)) from None


def _sim_options(o) -> SimOptions:
    try:
        return SimOptions(transient=o["transient"], samples=o["samples"],
                          period_cap=o["period_cap"], period_tol=o["tol"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_prove(o) -> int:
    out = prove_chaos(_params(o), ProverOptions(p_bound=o["p_bound"]))
    print(out.to_json())
    return EXIT_OK if out.is_chaos else EXIT_STOP


def cmd_simulate(o) -> int:
    cl = classify_point(_params(o), _sim_options(o))
    doc = {"kind": cl.kind, "period": cl.period, "lyapunov_estimate": cl.lyapunov_estimate}
    print(json.dumps({k: v for k, v in doc.items() if v is not None}))
    return EXIT_OK


def cmd_sweep(o) -> int:
    try:
        grid = GridSpec(_range(o["tl_range"]), _range(o["tr_range"]),
                        o["delta_l"], o["delta_r"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = run_sweep(grid, threads=o["threads"], with_sim=o["with_sim"],
                     sim=_sim_options(o), prover=ProverOptions(p_bound=o["p_bound"]))
    _emit(rows_to_csv(rows), o["out"])
    return EXIT_OK


def phase_document(params, n_attractor: int = 2000, transient: int = 10_000,
                   prover: ProverOptions | None = None):
    """JSON-ready dict of the region, its image hexagon, and attractor points.

    Returns ``(doc, constructible)``; when the procedure stopped before a
    region existed the document holds only the outcome.
    """
    out = prove_chaos(params, prover)
    doc = {"outcome": out.to_dict()}
    region = out.region
    if region is None:
        return doc, False
    pts = lambda seq: [list(v) for v in seq]  # noqa: E731
    doc["omega_polygon"] = pts(omega_polygon(region))
    doc["F_omega_polygon"] = pts(F_omega_polygon(region, params))
    doc.update({k: pts(v) for k, v in diagnostic_polygons(region, params).items()})
    fan = preimage_fan(params, region.p_max)
    doc["preimage_lines"] = [{"m": ln.m, "c": ln.c} for ln in fan.lines]
    z = iterate_orbit(params, (0.0, 0.0), transient).final
    attractor = []
    for _ in range(n_attractor):
        z = iterate_orbit(params, z, 1).final
        attractor.append(list(z))
    doc["attractor"] = attractor
    return doc, True


def cmd_phase(o) -> int:
    doc, ok = phase_document(_params(o), o["attractor_samples"], o["transient"],
                             ProverOptions(p_bound=o["p_bound"]))
    if not ok:
        print(json.dumps(doc))
        print(f"no trapping region: {doc['outcome'].get('stop_reason')}", file=sys.stderr)
        return EXIT_STOP
    _emit(json.dumps(doc) + "\n", o["out"])
    return EXIT_OK


COMMANDS = {"prove": cmd_prove, "sweep": cmd_sweep, "simulate": cmd_simulate, "phase": cmd_phase}


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[ns.cmd](_resolve(ns))
    except UsageError as exc:
        print(f"bcnf {ns.cmd}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"bcnf {ns.cmd}: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

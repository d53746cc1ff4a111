"""Command-line interface.

Exit codes: 0 success, 1 failed validation, 2 usage error, 3 numerical
non-convergence.
"""
from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from . import __version__, analysis, shifts, units
from .models import DispersiveDielectric, Nondispersive, PerfectReflector, Plasma, \
    UnsupportedModelError
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .shifts import Orientation

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

MODELS = ("pm", "nondisp", "plasma", "dispersive")
METHODS = ("auto", "closed", "wedge", "omega", "tm", "te", "sp", "small", "large", "large-n")
CSV_HEADER = "x,s_hat,est_err,method"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- serialisation

def fmt_float(v: float) -> str:
    if v is None or not math.isfinite(v):
        return "null"
    return format(float(v), ".17g")


def to_json(obj, indent: int = 0) -> str:
    """JSON text with every float written to 17 significant digits."""
    pad = "  " * (indent + 1)
    end = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        import json
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{to_json(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    try:
        return fmt_float(float(obj))
    except (TypeError, ValueError):
        return to_json(str(obj))


def _breakdown(b: Optional[shifts.Breakdown]):
    if b is None:
        return None
    return {"te": b.te, "tm": b.tm, "sp": b.sp}


# ---------------------------------------------------------------- arguments

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file merged before flags")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", help="write the artifact here instead of stdout")
    p.add_argument("--orientation", default="perp", choices=("perp", "para"))
    p.add_argument("--rel-tol", type=float, default=DEFAULT_CONFIG.rel_tol)
    p.add_argument("--abs-tol", type=float, default=DEFAULT_CONFIG.abs_tol)
    p.add_argument("--max-subdivisions", type=int, default=DEFAULT_CONFIG.max_subdivisions)
    p.add_argument("--tail-cut", type=float, default=DEFAULT_CONFIG.tail_cut)


def _add_material(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=float, help="refractive index")
    p.add_argument("--omega-p-d", type=float, help="plasma frequency times distance")
    p.add_argument("--omega-t-d", type=float, help="resonance frequency times distance")
    p.add_argument("--omega-p-ev", type=float, help="plasma frequency in eV")
    p.add_argument("--omega-t-ev", type=float, help="resonance frequency in eV")
    p.add_argument("--z-nm", type=float, help="distance in nm")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="surfmu", description="Surface-induced electron magnetic moment shifts")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    parser.commands = sub.choices

    p = sub.add_parser("shift", help="evaluate one shift")
    _add_common(p)
    _add_material(p)
    p.add_argument("--model", required=True, choices=MODELS)
    p.add_argument("--method", default="auto", choices=METHODS)

    p = sub.add_parser("sweep", help="tabulate the shift over a parameter")
    _add_common(p)
    _add_material(p)
    p.add_argument("--family", required=True, choices=("pm", "nondisp", "plasma", "dispersive"))
    p.add_argument("--var", required=True,
                   choices=("sqrt-chi0", "omega-p-d", "distance", "n"))
    p.add_argument("--range", required=True, help="lo:hi")
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--scale", choices=("linear", "log"), default="linear")
    p.add_argument("--omega-p", type=float, help="plasma frequency for distance sweeps")
    p.add_argument("--omega-t", type=float, help="resonance frequency for distance sweeps")
    p.add_argument("--d", type=float, default=1.0, help="distance for n sweeps")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(format="csv")

    p = sub.add_parser("peak", help="locate the dispersive peak")
    _add_common(p)
    p.add_argument("--omega-t-d", type=float)
    p.add_argument("--omega-t-ev", type=float)
    p.add_argument("--z-nm", type=float)

    p = sub.add_parser("validate", help="run the cross-check suite")
    _add_common(p)

    p = sub.add_parser("convert", help="lab units to dimensionless products")
    _add_common(p)
    p.add_argument("--z-nm", type=float, required=True)
    p.add_argument("--omega-p-ev", type=float)
    p.add_argument("--omega-t-ev", type=float)
    p.add_argument("--s-hat", type=float, help="also report the relative shift for this s_hat")
    return parser


def read_config(path: str) -> dict:
    """Parse a ``key=value`` file; ``#`` starts a comment."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for num, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _config_path(argv: Sequence[str]) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config needs a path")
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    """Parse ``argv``; values from ``--config`` act as defaults so flags win."""
    parser = build_parser()
    command = next((t for t in argv if t in parser.commands), None)
    path = _config_path(argv)
    if path is not None and command is not None:
        sub = parser.commands[command]
        known = {a.dest: a for a in sub._actions}
        for key, value in read_config(path).items():
            if key not in known or key in ("help", "config"):
                raise UsageError(f"unknown config key {key!r}")
            action = known[key]
            try:
                val = (action.type or str)(value)
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {value!r}") from exc
            if action.choices is not None and val not in action.choices:
                raise UsageError(f"bad value for {key}: {value!r}")
            sub.set_defaults(**{key: val})
            action.required = False
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError("a command is required (shift, sweep, peak, validate, convert)")
    return args


def _cfg(args) -> QuadratureConfig:
    try:
        return QuadratureConfig(rel_tol=args.rel_tol, abs_tol=args.abs_tol,
                                max_subdivisions=args.max_subdivisions, tail_cut=args.tail_cut)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _products(args) -> dict:
    """Resolve material frequencies into ``omega * d`` with ``d = 1``."""
    dimless = any(getattr(args, k, None) is not None for k in ("omega_p_d", "omega_t_d"))
    lab = any(getattr(args, k, None) is not None for k in ("omega_p_ev", "omega_t_ev", "z_nm"))
    if dimless and lab:
        raise UsageError("give either dimensionless products or lab units (eV, nm), not both")
    if lab:
        if args.z_nm is None:
            raise UsageError("lab units need --z-nm")
        nat = units.to_natural(units.LabInputs(args.z_nm, getattr(args, "omega_p_ev", None),
                                               getattr(args, "omega_t_ev", None)))
        return {"omega_p_d": nat.omega_p_d, "omega_t_d": nat.omega_t_d}
    return {"omega_p_d": getattr(args, "omega_p_d", None),
            "omega_t_d": getattr(args, "omega_t_d", None)}


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


# ---------------------------------------------------------------- commands

def _cmd_shift(args) -> tuple[dict, list]:
    cfg = _cfg(args)
    o = Orientation.parse(args.orientation)
    prods = _products(args)
    m = args.method
    if args.model == "pm":
        model = PerfectReflector()
    elif args.model == "nondisp":
        model = Nondispersive(_need(args.n, "--n"))
    elif args.model == "plasma":
        model = Plasma(_need(prods["omega_p_d"], "--omega-p-d or --omega-p-ev/--z-nm"))
    else:
        model = DispersiveDielectric(_need(prods["omega_p_d"], "--omega-p-d"),
                                     _need(prods["omega_t_d"], "--omega-t-d"))
    table = {
        ("pm", "auto"): lambda: shifts.pm_shift(o),
        ("pm", "closed"): lambda: shifts.pm_shift(o),
        ("nondisp", "auto"): lambda: shifts.nondisp_closed(model.n, o),
        ("nondisp", "closed"): lambda: shifts.nondisp_closed(model.n, o),
        ("nondisp", "large-n"): lambda: shifts.nondisp_large_n(model.n, o),
        ("nondisp", "wedge"): lambda: shifts.general_shift(model, o, 1.0, cfg),
        ("nondisp", "omega"): lambda: shifts.general_shift_omega(model, o, 1.0, cfg),
        ("plasma", "auto"): lambda: shifts.plasma_total(model.omega_p, o, 1.0, cfg),
        ("plasma", "tm"): lambda: shifts.plasma_tm(model.omega_p, o, 1.0, cfg),
        ("plasma", "te"): lambda: shifts.plasma_te(model.omega_p, o, 1.0),
        ("plasma", "sp"): lambda: shifts.sp_only_shift(model, o, 1.0, cfg),
        ("plasma", "small"): lambda: shifts.small_distance_asymptote(model, o, 1.0),
        ("dispersive", "auto"): lambda: shifts.general_shift(model, o, 1.0, cfg),
        ("dispersive", "wedge"): lambda: shifts.general_shift(model, o, 1.0, cfg),
        ("dispersive", "omega"): lambda: shifts.general_shift_omega(model, o, 1.0, cfg),
        ("dispersive", "sp"): lambda: shifts.sp_only_shift(model, o, 1.0, cfg),
        ("dispersive", "small"): lambda: shifts.small_distance_asymptote(model, o, 1.0),
        ("dispersive", "large"): lambda: shifts.large_distance_asymptote(model, o, 1.0),
    }
    if (args.model, m) not in table:
        raise UsageError(f"method {m!r} is not available for model {args.model!r}")
    r = table[(args.model, m)]()
    inputs = {"model": args.model, "orientation": o.value, "method_requested": m,
              "n": args.n, **prods}
    doc = {"value": r.s_hat, "est_err": r.est_err, "method": r.method.value,
           "breakdown": _breakdown(r.breakdown), "inputs": inputs, "version": __version__}
    if r.warning:
        doc["warning"] = r.warning
    rows = [[fmt_float(prods["omega_p_d"] if prods["omega_p_d"] is not None else (args.n or 0.0)),
             fmt_float(r.s_hat), fmt_float(r.est_err), r.method.value]]
    return doc, rows


def _cmd_sweep(args) -> tuple[dict, list]:
    cfg = _cfg(args)
    try:
        lo, hi = (float(v) for v in args.range.split(":"))
    except ValueError as exc:
        raise UsageError("--range must be lo:hi") from exc
    family = {"nondisp": "nondispersive"}.get(args.family, args.family)
    params = {"d": args.d}
    for key in ("n", "omega_p", "omega_t"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    prods = _products(args)
    if prods["omega_t_d"] is not None:
        params["omega_t_d"] = prods["omega_t_d"]
    try:
        spec = analysis.SweepSpec(family, args.var.replace("-", "_"), lo, hi, args.points,
                                  Orientation.parse(args.orientation), args.scale, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = analysis.sweep(spec, cfg, workers=args.workers)
    rows = [[fmt_float(r.x), fmt_float(r.s_hat), fmt_float(r.est_err), r.method] for r in res.rows]
    doc = {"rows": [{"x": r.x, "s_hat": r.s_hat, "est_err": r.est_err, "method": r.method,
                     "error": r.error} for r in res.rows],
           "reference_pm": res.reference,
           "inputs": {"family": family, "var": spec.variable, "range": [lo, hi],
                      "points": args.points, "scale": args.scale,
                      "orientation": spec.orientation.value, "params": params},
           "version": __version__}
    for r in res.failures:
        print(f"row x={r.x:.6g} failed: {r.error}", file=sys.stderr)
    return doc, rows


def _cmd_peak(args) -> tuple[dict, list]:
    cfg = _cfg(args)
    if args.omega_t_d is not None and (args.omega_t_ev is not None or args.z_nm is not None):
        raise UsageError("give either --omega-t-d or --omega-t-ev with --z-nm, not both")
    if args.omega_t_d is not None:
        wt = args.omega_t_d
    elif args.omega_t_ev is not None and args.z_nm is not None:
        wt = units.frequency_times_distance(args.omega_t_ev, args.z_nm)
    else:
        raise UsageError("peak needs --omega-t-d or --omega-t-ev with --z-nm")
    rep = analysis.find_peak(wt, Orientation.parse(args.orientation), cfg)
    doc = {"found": rep.found, "location": rep.location, "height": rep.height,
           "enhancement_vs_nondisp": rep.enhancement_vs_nondisp, "note": rep.note,
           "inputs": {"omega_t_d": wt, "orientation": rep.orientation.value},
           "version": __version__}
    rows = [[fmt_float(rep.location if rep.found else math.nan),
             fmt_float(rep.height if rep.found else math.nan), "0", "peak"]]
    return doc, rows


def validation_suite(cfg: QuadratureConfig) -> list:
    """Cross-checks between independent routes; one dict per check."""
    checks = []

    def add(name, a, b, tol):
        rel = abs(a - b) / max(abs(b), 1e-300)
        checks.append({"check": name, "value": a, "reference": b,
                       "relative_difference": rel, "tolerance": tol, "passed": rel <= tol})

    perp, para = Orientation.PERPENDICULAR, Orientation.PARALLEL
    for o in (perp, para):
        add(f"mirror_bessel_{o.value}", shifts.pm_shift_quadrature(o, cfg).value,
            shifts.pm_shift(o).s_hat, 1e-8)
        for n in (1.5, 2.0, 5.0):
            add(f"nondisp_wedge_n{n}_{o.value}",
                shifts.general_shift(Nondispersive(n), o, 1.0, cfg).s_hat,
                shifts.nondisp_closed(n, o).s_hat, 1e-6)
        for wp, wt, d in ((2.0, 1.0, 0.5), (0.3, 0.05, 1.0)):
            m = DispersiveDielectric(wp, wt)
            add(f"representations_wp{wp}_wt{wt}_d{d}_{o.value}",
                shifts.general_shift_omega(m, o, d, cfg).s_hat,
                shifts.general_shift(m, o, d, cfg).s_hat, 1e-5)
    for w in (0.5, 1.0, 3.0):
        add(f"plasma_te_closed_vs_integral_w{w}", shifts.te_integral(w)[0],
            shifts.te_defining_integral(w)[0], 1e-6)
    for c in analysis.limit_audit(cfg):
        checks.append({"check": f"limit_audit_{c.name}", "description": c.description,
                       "values": c.values, "passed": c.passed})
    return checks


def _cmd_validate(args) -> tuple[dict, list]:
    checks = validation_suite(_cfg(args))
    for c in checks:
        if not c["passed"]:
            detail = ", ".join(f"{k}={to_json(v) if not isinstance(v, dict) else v}"
                               for k, v in c.items() if k not in ("check", "passed"))
            print(f"FAILED {c['check']}: {detail}", file=sys.stderr)
    doc = {"passed": all(c["passed"] for c in checks), "checks": checks, "version": __version__}
    rows = [[c["check"], fmt_float(c.get("value", math.nan)),
             fmt_float(c.get("relative_difference", math.nan)),
             "pass" if c["passed"] else "fail"] for c in checks]
    return doc, rows


def _cmd_convert(args) -> tuple[dict, list]:
    try:
        lab = units.LabInputs(args.z_nm, args.omega_p_ev, args.omega_t_ev)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    nat = units.to_natural(lab)
    doc = {"m_d": nat.m_d, "omega_p_d": nat.omega_p_d, "omega_t_d": nat.omega_t_d,
           "relative_shift_per_s_hat": units.relative_shift_prefactor(lab.z_nm),
           "inputs": {"z_nm": lab.z_nm, "omega_p_ev": lab.omega_p_ev,
                      "omega_t_ev": lab.omega_t_ev},
           "version": __version__}
    if args.s_hat is not None:
        doc["relative_shift"] = units.relative_shift(args.s_hat, lab)
    rows = [[fmt_float(lab.z_nm), fmt_float(nat.omega_p_d if nat.omega_p_d is not None else math.nan),
             "0", "convert"]]
    return doc, rows


COMMANDS = {"shift": _cmd_shift, "sweep": _cmd_sweep, "peak": _cmd_peak,
            "validate": _cmd_validate, "convert": _cmd_convert}


def _emit(args, doc: dict, rows: list) -> None:
    if args.format == "json":
        text = to_json(doc) + "\n"
    else:
        header = "check,value,relative_difference,status" if args.command == "validate" else CSV_HEADER
        text = header + "\n" + "".join(",".join(r) + "\n" for r in rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parse_args(argv)
        doc, rows = COMMANDS[args.command](args)
        _emit(args, doc, rows)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    except shifts.ConvergenceError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except analysis.SweepError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UnsupportedModelError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.command == "validate" and not doc["passed"]:
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())

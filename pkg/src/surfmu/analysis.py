"""Parameter sweeps, dispersive peak search, enhancement ratios and the
limit-commutation audit."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import shifts
from .models import DispersiveDielectric, Nondispersive, PerfectReflector, Plasma
from .quadrature import DEFAULT_CONFIG, QuadratureConfig
from .shifts import Orientation, ScaledShift
from .units import frequency_times_distance

FAMILIES = ("pm", "nondispersive", "plasma", "dispersive")
VARIABLES = ("sqrt_chi0", "omega_p_d", "distance", "n")

PEAK_WINDOW = (1.0, 5.0)
PEAK_GRID = 17
PEAK_LOCATION_TOL = 1e-4

# Fitted inverse laws for the peak enhancement, in eV nm.
ENHANCEMENT_LAW = {Orientation.PERPENDICULAR: 30.3, Orientation.PARALLEL: 81.6}


class SweepError(RuntimeError):
    """Every row of a sweep failed."""


class NoPeakError(ValueError):
    """No interior extremum exists in the search window."""


@dataclass(frozen=True)
class SweepSpec:
    """Description of a one-parameter sweep.

    ``params`` holds the fixed parameters of the family: ``n`` for
    nondispersive, ``omega_p`` / ``omega_t`` (natural units) when sweeping the
    distance, ``omega_t_d`` for ``sqrt_chi0`` sweeps, ``d`` (default 1)
    otherwise.
    """

    family: str
    variable: str
    lo: float
    hi: float
    points: int
    orientation: Orientation = Orientation.PERPENDICULAR
    scale: str = "linear"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.variable not in VARIABLES:
            raise ValueError(f"variable must be one of {VARIABLES}")
        if not self.lo < self.hi:
            raise ValueError("sweep range needs lo < hi")
        if self.points < 2:
            raise ValueError("a sweep needs at least 2 points")
        if self.scale not in ("linear", "log"):
            raise ValueError("scale must be 'linear' or 'log'")
        if self.scale == "log" and self.lo <= 0:
            raise ValueError("log sweeps need lo > 0")
        if self.variable == "sqrt_chi0":
            if self.family != "dispersive" or "omega_t_d" not in self.params:
                raise ValueError("sqrt_chi0 sweeps need the dispersive family and omega_t_d")
        object.__setattr__(self, "orientation", Orientation.parse(self.orientation))

    def grid(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, self.points)
        return np.linspace(self.lo, self.hi, self.points)


@dataclass(frozen=True)
class SweepRow:
    x: float
    s_hat: float
    est_err: float
    method: str
    error: Optional[str] = None


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    rows: list
    reference: Optional[float] = None

    @property
    def failures(self) -> list:
        return [r for r in self.rows if r.error is not None]


def _row_model(spec: SweepSpec, x: float):
    """Model and distance for the grid value ``x``."""
    p = spec.params
    if spec.family == "pm":
        return PerfectReflector(), (x if spec.variable == "distance" else float(p.get("d", 1.0)))
    if spec.family == "nondispersive":
        if spec.variable == "n":
            return Nondispersive(x), float(p.get("d", 1.0))
        if spec.variable == "distance":
            return Nondispersive(float(p["n"])), x
        raise ValueError("nondispersive sweeps run over n or distance")
    if spec.family == "plasma":
        if spec.variable == "omega_p_d":
            return Plasma(x), 1.0
        if spec.variable == "distance":
            return Plasma(float(p["omega_p"])), x
        raise ValueError("plasma sweeps run over omega_p_d or distance")
    if spec.variable == "sqrt_chi0":
        wt = float(p["omega_t_d"])
        return DispersiveDielectric(x * wt, wt), 1.0
    if spec.variable == "omega_p_d":
        return DispersiveDielectric(x, float(p["omega_t_d"])), 1.0
    if spec.variable == "distance":
        return DispersiveDielectric(float(p["omega_p"]), float(p["omega_t"])), x
    raise ValueError("dispersive sweeps run over sqrt_chi0, omega_p_d or distance")


def _evaluate_row(args) -> SweepRow:
    spec, x, cfg = args
    try:
        model, d = _row_model(spec, float(x))
        r = shifts.shift(model, spec.orientation, d, cfg)
        return SweepRow(float(x), r.s_hat, r.est_err, r.method.value)
    except shifts.ConvergenceError as exc:
        return SweepRow(float(x), exc.partial.s_hat, exc.partial.est_err,
                        exc.partial.method.value, str(exc))
    except (ValueError, ArithmeticError, KeyError) as exc:
        return SweepRow(float(x), math.nan, math.nan, "failed", f"{type(exc).__name__}: {exc}")


def sweep(spec: SweepSpec, cfg: QuadratureConfig = DEFAULT_CONFIG, workers: int = 1) -> SweepResult:
    """Evaluate the shift on every grid point of ``spec``.

    Rows are independent; a failing row is recorded with its error message
    instead of aborting the sweep.  With ``workers > 1`` rows are evaluated in
    separate processes; the table is identical either way.

    Raises
    ------
    SweepError
        If every row failed.
    """
    tasks = [(spec, float(x), cfg) for x in spec.grid()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_evaluate_row, tasks))
    else:
        rows = [_evaluate_row(t) for t in tasks]
    if all(r.error is not None for r in rows):
        raise SweepError(f"all {len(rows)} sweep rows failed; first error: {rows[0].error}")
    reference = shifts.pm_shift(spec.orientation).s_hat
    return SweepResult(spec, rows, reference)


# ---------------------------------------------------------------- peak search

@dataclass(frozen=True)
class PeakReport:
    found: bool
    orientation: Orientation
    omega_t_d: float
    location: Optional[float] = None
    height: Optional[float] = None
    enhancement_vs_nondisp: Optional[float] = None
    note: Optional[str] = None


def _dispersive_at(omega_t_d: float, o: Orientation, cfg: QuadratureConfig) -> Callable[[float], float]:
    def f(sqrt_chi: float) -> float:
        model = DispersiveDielectric(sqrt_chi * omega_t_d, omega_t_d)
        return shifts.general_shift(model, o, 1.0, cfg).s_hat
    return f


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def find_peak(omega_t_d: float, o: Orientation, cfg: QuadratureConfig = DEFAULT_CONFIG,
              grid_points: int = PEAK_GRID) -> PeakReport:
    """Locate the extremum of the dispersive shift as a function of sqrt(chi0).

    The shift is negative, so the peak is the minimum of ``s_hat`` (largest
    magnitude).  A coarse grid over ``PEAK_WINDOW`` brackets it and golden
    section search refines the location.  When the grid extremum sits on the
    window edge no peak is reported; this is a result, not an error.
    """
    o = Orientation.parse(o)
    if not omega_t_d > 0:
        raise ValueError("omega_t_d must be positive")
    f = _dispersive_at(omega_t_d, o, cfg)
    xs = np.linspace(PEAK_WINDOW[0], PEAK_WINDOW[1], grid_points)
    vals = np.array([f(x) for x in xs])
    i = int(np.argmin(vals))
    if i == 0 or i == len(xs) - 1:
        return PeakReport(False, o, omega_t_d,
                          note=f"extremum on the window edge at sqrt(chi0) = {xs[i]:.3g}")
    loc = _golden_min(f, xs[i - 1], xs[i + 1], PEAK_LOCATION_TOL)
    height = f(loc)
    ref = shifts.nondisp_closed(math.sqrt(1.0 + loc * loc), o).s_hat
    return PeakReport(True, o, omega_t_d, loc, height, height / ref)


def enhancement_ratio(omega_t_ev: float, z_nm: float, o: Orientation,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Peak height of the dispersive shift over the nondispersive value at the same chi0.

    Raises
    ------
    NoPeakError
        When ``omega_t * z`` is too large for a peak to exist.
    """
    rep = find_peak(frequency_times_distance(omega_t_ev, z_nm), o, cfg)
    if not rep.found:
        raise NoPeakError(f"no dispersive peak at omega_t z = {omega_t_ev * z_nm:.4g} eV nm: {rep.note}")
    return rep.enhancement_vs_nondisp


def enhancement_law(omega_t_ev: float, z_nm: float, o: Orientation) -> float:
    """Inverse-law fit of the enhancement: ``C / (omega_t z)`` with ``C`` in eV nm."""
    return ENHANCEMENT_LAW[Orientation.parse(o)] / (omega_t_ev * z_nm)


# ---------------------------------------------------------------- limit audit

@dataclass(frozen=True)
class AuditCheck:
    name: str
    description: str
    passed: bool
    values: dict


def limit_audit(cfg: QuadratureConfig = DEFAULT_CONFIG) -> list:
    """Check how the model limits commute with each other.

    (a) nondispersive ``n -> inf`` diverges while the mirror stays finite;
    (b) plasma ``omega_p -> inf`` recovers the mirror;
    (c) dispersive ``omega_t -> 0`` at fixed distance does not give the plasma;
    (d) the dispersive and plasma short-distance asymptotes coincide.
    """
    perp, para = Orientation.PERPENDICULAR, Orientation.PARALLEL
    out = []

    s50 = shifts.nondisp_closed(50.0, perp).s_hat
    ratio = s50 / shifts.pm_shift(perp).s_hat
    out.append(AuditCheck("a", "nondispersive n=50 vs perfect mirror: ratio < -25",
                          ratio < -25, {"s_nondisp": s50, "ratio": ratio, "threshold": -25.0}))

    vals = {}
    ok = True
    for o in (perp, para):
        s = shifts.plasma_total(100.0, o, 1.0, cfg).s_hat
        dev = abs(s - shifts.pm_shift(o).s_hat)
        vals[f"s_plasma_{o.value}"] = s
        vals[f"deviation_{o.value}"] = dev
        ok &= dev < 0.05
    vals["tolerance"] = 0.05
    out.append(AuditCheck("b", "plasma at omega_p d = 100 vs perfect mirror: |diff| < 0.05",
                          ok, vals))

    s_disp = shifts.general_shift(DispersiveDielectric(1.0, 1e-3), perp, 1.0, cfg).s_hat
    s_plas = shifts.plasma_total(1.0, perp, 1.0, cfg).s_hat
    rel = abs(s_disp - s_plas) / abs(s_plas)
    out.append(AuditCheck("c", "dispersive omega_t d = 1e-3 vs plasma at omega_p d = 1: "
                               "relative difference > 0.1 (limits do not commute)",
                          rel > 0.1, {"s_dispersive": s_disp, "s_plasma": s_plas,
                                      "relative_difference": rel, "threshold": 0.1}))

    vals = {}
    ok = True
    for o in (perp, para):
        a_disp = shifts.small_distance_value(1e-3, 0.0, o)
        a_plas = shifts.small_distance_asymptote(Plasma(1e-3), o, 1.0).s_hat
        vals[f"dispersive_{o.value}"] = a_disp
        vals[f"plasma_{o.value}"] = a_plas
        ok &= a_disp == a_plas
    out.append(AuditCheck("d", "dispersive short-distance asymptote at omega_t = 0 equals plasma",
                          ok, vals))
    return out

"""Surface-induced shift of the electron spin magnetic moment.

Every evaluator returns a :class:`ScaledShift` holding the dimensionless
ratio ``s_hat = dmu / dmu_perp_PM(d)``, where the denominator is the
perpendicular shift in front of a perfect mirror at the same distance.
The shift only depends on the model through the dimensionless products
``omega * d``, so all integrals are evaluated with ``d = 1`` after scaling
the model frequencies.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from typing import Optional, Sequence, Union

import numpy as np

from . import specfun
from .models import (Custom, DispersiveDielectric, Nondispersive, PerfectReflector, Plasma,
                     SurfaceModel, UnsupportedModelError, dimensionless, sp_branch)
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, QuadResult, integrate_1d, \
    integrate_exp_tail, integrate_wedge


class Orientation(enum.Enum):
    PERPENDICULAR = "perp"
    PARALLEL = "para"

    @classmethod
    def parse(cls, text: Union[str, "Orientation"]) -> "Orientation":
        if isinstance(text, Orientation):
            return text
        key = text.strip().lower()
        for o in cls:
            if key in (o.value, o.name.lower()):
                return o
        raise ValueError(f"unknown orientation {text!r}")


class Method(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class Geometry:
    d: float

    def __post_init__(self):
        if not (math.isfinite(self.d) and self.d > 0):
            raise ValueError(f"distance must be positive, got {self.d}")


@dataclass(frozen=True)
class Breakdown:
    te: Optional[float] = None
    tm: Optional[float] = None
    sp: Optional[float] = None


@dataclass(frozen=True)
class ScaledShift:
    s_hat: float
    est_err: float
    method: Method
    breakdown: Optional[Breakdown] = None
    warning: Optional[str] = None


class RoutedModelError(UnsupportedModelError):
    """The model must be evaluated by a dedicated routine."""


class ConvergenceError(ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    The best available estimate is kept in ``partial``.
    """

    def __init__(self, message: str, partial: ScaledShift):
        super().__init__(message)
        self.partial = partial


GeometryLike = Union[Geometry, float]


def _d(g: GeometryLike) -> float:
    return g.d if isinstance(g, Geometry) else Geometry(float(g)).d


def _perp(o: Orientation) -> bool:
    return Orientation.parse(o) is Orientation.PERPENDICULAR


def _finish(res: QuadResult, shift: ScaledShift, what: str) -> ScaledShift:
    if not res.converged:
        raise ConvergenceError(f"{what}: quadrature did not converge "
                               f"(value {shift.s_hat:.6g}, est_err {shift.est_err:.3g})", shift)
    return shift


# ---------------------------------------------------------------- perfect mirror

def pm_shift(o: Orientation, g: GeometryLike = 1.0) -> ScaledShift:
    """Perfect reflector: +1 perpendicular, -1 parallel at every distance."""
    _d(g)
    te, tm = (2.5, -1.5) if _perp(o) else (1.0, -2.0)
    return ScaledShift(te + tm, 0.0, Method.CLOSED_FORM, Breakdown(te=te, tm=tm))


def pm_shift_quadrature(o: Orientation, cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadResult:
    """Perfect mirror from the k_par integral over modified Bessel functions.

    Validation path for :func:`pm_shift` with ``d = 1``.  After the k_z
    integration the perpendicular shift is
    ``-2 int k (2 K0(2k) - 4 k K1(2k)) dk``; the parallel integrand is the
    exact negative of the perpendicular one.
    """
    k0 = np.vectorize(lambda x: specfun.bessel_k0(x).value)
    k1 = np.vectorize(lambda x: specfun.bessel_k1(x).value)
    res = integrate_exp_tail(lambda k: -2.0 * k * (2.0 * k0(2 * k) - 4.0 * k * k1(2 * k)),
                             0.0, 2.0, cfg)
    return res if _perp(o) else res.scale(-1.0)


# ---------------------------------------------------------------- nondispersive

# Taylor coefficients of the closed forms in powers of (n - 1), orders 1..9.
_TAYLOR_PERP = (-2.1666666666666667, 0.55, 0.15357142857142857, -0.43551587301587302,
                0.34012445887445887, -0.10941176878676879, -0.060823031135531136,
                0.10707210987541870, -0.066420315499988488)
_TAYLOR_PARA = (-2.5, 0.85, 0.47976190476190476, -0.85892857142857143,
                0.52123917748917749, -0.015131743256743257, -0.27908081501831502,
                0.28592474212878625, -0.13040334426388025)
TAYLOR_THRESHOLD = 1e-3


def _nondisp_decimal(n: float, perp: bool) -> float:
    with localcontext() as ctx:
        ctx.prec = 50
        n = Decimal(n)
        n2 = n * n
        n4 = n2 * n2
        r41 = (n4 - 1).sqrt()
        r21 = (n2 - 1).sqrt()
        r1 = (1 + n2).sqrt()
        # artanh((n-1) sqrt(1+n^2) / (1 + (n-1) n)) in a cancellation-free form
        art = ((n2 - n + 1 + (n - 1) * r1) / n).ln()
        lg = (n + r21).ln()
        p52 = (1 + n2) ** 2 * r1
        n3, n5 = n2 * n, n4 * n
        if perp:
            f = (r41 * (5 - 2 * n + n2 - 2 * n3 - 3 * n4 + n5)
                 - n4 * r21 * (1 + 2 * n2) * art
                 + 2 * (n2 - 1) * p52 * lg)
            return float(-f / (r41 ** 3))
        f = (r41 * (26 - 9 * n + 8 * n2 - 23 * n3 - 3 * n4 + n5)
             + 3 * n4 * r21 * (2 - 3 * n2) * art
             + 9 * (n2 - 1) * p52 * lg)
        return float(-f / (6 * r41 ** 3))


def nondisp_closed(n: float, o: Orientation, g: GeometryLike = 1.0) -> ScaledShift:
    """Exact shift for a nondispersive dielectric of refractive index ``n``.

    Close to ``n = 1`` a ninth-order Taylor expansion replaces the closed
    form, whose numerator and denominator both vanish there.

    Raises
    ------
    ValueError
        If ``n < 1``.
    """
    _d(g)
    if not (math.isfinite(n) and n >= 1):
        raise ValueError(f"refractive index must satisfy n >= 1, got {n}")
    perp = _perp(o)
    x = n - 1.0
    if x < TAYLOR_THRESHOLD:
        coeffs = _TAYLOR_PERP if perp else _TAYLOR_PARA
        val = 0.0
        for c in reversed(coeffs):
            val = (val + c) * x
        err = 1e-16 * abs(val) + abs(x) ** 10
    else:
        val = _nondisp_decimal(n, perp)
        err = 1e-15 * abs(val)
    return ScaledShift(val, err, Method.CLOSED_FORM)


def nondisp_large_n(n: float, o: Orientation, g: GeometryLike = 1.0) -> ScaledShift:
    """Two-term large-``n`` expansion: ``1 - n`` (perp) and ``-1 - n/6`` (para).

    The constant terms are the perfect-mirror values.  Below ``n = 5`` the
    result is still returned but carries a warning.
    """
    _d(g)
    if not n >= 1:
        raise ValueError(f"refractive index must satisfy n >= 1, got {n}")
    pm = pm_shift(o).s_hat
    slope = -1.0 if _perp(o) else -1.0 / 6.0
    warning = "large-n expansion used below n = 5" if n < 5 else None
    return ScaledShift(slope * n + pm, abs(slope) * 2.0 + abs(pm), Method.ASYMPTOTIC,
                       warning=warning)


# ---------------------------------------------------------------- general models

def _check_finite_static(model: SurfaceModel) -> None:
    if isinstance(model, PerfectReflector):
        raise RoutedModelError("use pm_shift for the perfect reflector")
    if isinstance(model, Plasma):
        raise RoutedModelError("use plasma_total for the plasma model "
                               "(its static TE limit does not commute)")
    if not isinstance(model, (Nondispersive, DispersiveDielectric, Custom)):
        raise TypeError(f"unknown surface model {model!r}")


def _breakpoints(scales: Sequence[float], lo: float, hi: float) -> list[float]:
    pts = []
    for s in scales:
        for c in (0.25, 1.0, 4.0):
            v = s * c
            if lo < v < hi:
                pts.append(v)
    return sorted(pts)


def _wedge_pieces(dm, perp: bool):
    """TE and TM wedge integrands ``g(xi, kappa)`` with ``u = xi/kappa``."""
    e0 = dm.eps0
    rho0 = dm.static_ratio

    def common(xi, kappa):
        u = xi / kappa
        eps = dm.eps(xi)
        a = eps - 1.0
        q = np.sqrt(1.0 + a * u * u)
        return u, eps, a, q

    def te(xi, kappa):
        u, eps, a, q = common(xi, kappa)
        eta2_rte = -a / (1.0 + q) ** 2
        w = (3.0 - 2.0 * u * u) if perp else (1.0 - 3.0 * u * u)
        return w * eta2_rte

    def tm(xi, kappa):
        u, eps, a, q = common(xi, kappa)
        eta2_rtm = -2.0 * eps * a / ((q + 1.0) * (eps + q) * (eps + 1.0))
        eta2_static = 2.0 * kappa * kappa * dm.diff(xi) / ((eps + 1.0) * (e0 + 1.0))
        w = (1.0 - 2.0 * u * u) if perp else (5.0 - 3.0 * u * u)
        return w * (eta2_rtm + eta2_static)

    return te, tm, rho0


def general_shift(model: SurfaceModel, o: Orientation, g: GeometryLike,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScaledShift:
    """Shift for any model with a finite static permittivity.

    Integrates over imaginary frequency and ``eta`` in the wedge variables
    ``kappa = xi * eta``, ``u = 1/eta``, with the static TM reflection
    subtracted under the integral and added back in closed form.

    Raises
    ------
    RoutedModelError
        For the plasma model and the perfect reflector.
    ConvergenceError
        If the quadrature misses the tolerance; ``partial`` holds the estimate.
    """
    _check_finite_static(model)
    d = _d(g)
    perp = _perp(o)
    dm = dimensionless(model, d)
    te_g, tm_g, rho0 = _wedge_pieces(dm, perp)
    outer = 2.0 if perp else 1.0

    def inner_pts(kappa):
        return [s / kappa * c for s in dm.scales for c in (0.25, 1.0, 4.0) if 0 < s * c < kappa]

    r_te = integrate_wedge(te_g, 1.0, cfg, inner_points=inner_pts if dm.scales else None)
    r_tm = integrate_wedge(tm_g, 1.0, cfg, inner_points=inner_pts if dm.scales else None)
    const = (-1.5 if perp else -2.0) * rho0
    te = outer * r_te.value
    tm = outer * r_tm.value + const
    err = outer * (r_te.est_err + r_tm.est_err)
    shift = ScaledShift(te + tm, err, Method.QUADRATURE, Breakdown(te=te, tm=tm))
    return _finish(r_te + r_tm, shift, "general_shift")


def general_shift_omega(model: SurfaceModel, o: Orientation, g: GeometryLike,
                        cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScaledShift:
    """Independent evaluation over ``(xi, k_par)``, used as a cross-check.

    The inner ``xi`` integral is cut where ``exp(-2(K - k_par))`` drops below
    ``exp(-tail_cut)``; beyond that the integrand is exactly the algebraic
    static-subtraction term, which is integrated analytically.
    """
    _check_finite_static(model)
    d = _d(g)
    perp = _perp(o)
    dm = dimensionless(model, d)
    e0 = dm.eps0
    rho0 = dm.static_ratio
    half_cut = 0.5 * cfg.tail_cut
    inner_cfg = replace(cfg, rel_tol=cfg.rel_tol / 10.0)
    state = {"evals": 0, "ok": True, "err": 0.0}

    def integrand(xi, k):
        eps = dm.eps(xi)
        big_k = np.sqrt(k * k + xi * xi)
        q = np.sqrt(eps * xi * xi + k * k)
        a = eps - 1.0
        delta = xi * xi / (big_k + k)
        rte_x2 = -a / (big_k + q) ** 2
        rtm_x2 = -2.0 * eps * a / ((big_k + q) * (eps * big_k + q) * (eps + 1.0))
        rho = a / (eps + 1.0)
        drho_x2 = 2.0 * dm.diff(xi) / ((eps + 1.0) * (e0 + 1.0))
        with np.errstate(invalid="ignore", divide="ignore"):
            em = np.where(delta > 0, np.expm1(-2.0 * delta) / np.where(delta > 0, delta, 1.0), -2.0)
        damp = np.exp(-2.0 * delta) / big_k
        if perp:
            h = (em * (2 * k * k - big_k * big_k) / big_k - (2 * k + big_k) / big_k) / (big_k + k)
            body = damp * ((3 * k * k + xi * xi) * rte_x2 + (k * k - xi * xi) * rtm_x2)
            return k * (body + rho * h + k * drho_x2)
        h5 = (em * (2 * big_k * big_k + 3 * k * k) / big_k + (2 * big_k - 3 * k) / big_k) / (big_k + k)
        body = damp * ((k * k - 2 * xi * xi) * rte_x2 + (5 * k * k + 2 * xi * xi) * rtm_x2)
        return 0.5 * k * (body + rho * h5 + 5 * k * drho_x2)

    tail_coeff = 1.0 if perp else 2.5

    def outer(kk):
        out = np.empty_like(kk)
        for i, k in enumerate(kk):
            xmax = math.sqrt((k + half_cut) ** 2 - k * k)
            pts = sorted(set([p for p in [k] + _breakpoints(dm.scales, 0.0, xmax) if 0 < p < xmax]))
            r = integrate_1d(lambda x, k=k: integrand(x, k), 0.0, xmax, inner_cfg, points=pts)
            state["evals"] += r.evaluations
            state["ok"] &= r.converged
            tail = -tail_coeff * k * k * rho0 / xmax
            out[i] = (r.value + tail) * math.exp(-2.0 * k)
        return out

    res = integrate_exp_tail(outer, 0.0, 2.0, cfg, points=_breakpoints(dm.scales, 0.0, half_cut))
    res = QuadResult(res.value, res.est_err, res.evaluations + state["evals"],
                     res.converged and state["ok"])
    shift = ScaledShift(2.0 * res.value, 2.0 * res.est_err, Method.QUADRATURE)
    return _finish(res, shift, "general_shift_omega")


# ---------------------------------------------------------------- plasma

# Large-t expansion of a*t - (b + a*t^2)*arccot(t) = -sum c_j t^-(2j+1).
_BRACKET_T_SWITCH = 8.0
_BRACKET_TERMS = 14


def _tm_bracket(t: np.ndarray, a: float, b: float) -> np.ndarray:
    out = np.empty_like(t)
    big = t > _BRACKET_T_SWITCH
    ts = t[~big]
    out[~big] = a * ts - (b + a * ts * ts) * np.arctan2(1.0, ts)
    tb = t[big]
    if tb.size:
        inv2 = 1.0 / (tb * tb)
        acc = np.zeros_like(tb)
        for j in reversed(range(_BRACKET_TERMS)):
            c = (-1) ** j * (b / (2 * j + 1) - a / (2 * j + 3))
            acc = acc * inv2 + c
        out[big] = -acc / tb
    return out


def _plasma_tm_integrand(w: float, perp: bool):
    a, b = (2.0, 1.0) if perp else (3.0, 5.0)

    def f(s):
        inv2 = 1.0 / (s * s)
        t2 = inv2 / (np.sqrt(1.0 + inv2) + 1.0)
        t = np.sqrt(t2)
        pre = (1.0 + t2) / (t2 * (2.0 + t2) ** 1.5)
        return np.exp(-2.0 * s * w) * pre * _tm_bracket(t, a, b)
    return f


def plasma_tm(omega_p: float, o: Orientation, g: GeometryLike,
              cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScaledShift:
    """TM part of the plasma shift from its one-dimensional reduced form.

    Tends to -3/2 (perp) and -2 (para) as ``omega_p * d`` grows.
    """
    d = _d(g)
    if not omega_p > 0:
        raise ValueError("omega_p must be positive")
    w = omega_p * d
    perp = _perp(o)
    f = _plasma_tm_integrand(w, perp)
    res = integrate_exp_tail(f, 0.0, 2.0 * w, cfg, points=[0.01, 0.1, 1.0, 10.0])
    if perp:
        scale, const = 4.0 * w * w, -1.5
    else:
        scale, const = 2.0 * w * w, -2.0
    val = const + scale * res.value
    shift = ScaledShift(val, scale * res.est_err, Method.QUADRATURE, Breakdown(tm=val))
    return _finish(res, shift, "plasma_tm")


def te_integral(w: float) -> tuple[float, float]:
    """Dimensionless plasma TE integral ``I_TE * d**2`` at ``w = omega_p * d``.

    Closed form with Bessel Y and Struve H of argument ``2 w``, written in
    terms of ``M_n = H_n - Y_n``.  Evaluated in decimal arithmetic with
    enough digits to absorb the cancellation between terms (all terms are
    O(1/w^2) for small ``w`` and O(w^3) for large ``w``, while the result is
    O(w^2) and O(1) respectively).  Returns ``(value, est_abs_err)``.
    """
    if not (math.isfinite(w) and w > 0):
        raise ValueError("omega_p * d must be positive")
    x = 2.0 * w
    if x < specfun.SUPPORTED_RANGE[0]:
        raise ValueError(f"2 omega_p d = {x} is below the supported range")
    extra = int(4 * max(0.0, -math.log10(w))) + int(3 * max(0.0, math.log10(w)))
    with localcontext() as ctx:
        ctx.prec = 40 + extra
        wd = Decimal(w)
        xd = 2 * wd
        pi = specfun.pi_dec()
        m2 = specfun.struve_minus_y_dec(2, xd)
        m3 = specfun.struve_minus_y_dec(3, xd)
        val = (Decimal(1) / 4 + Decimal(3) / (4 * wd * wd) + 4 * wd ** 3 / 15
               + pi / 4 * m2 - pi * wd / 2 * m3)
        v = float(val)
    return v, 1e-15 * abs(v) + 1e-300


def plasma_te(omega_p: float, o: Orientation, g: GeometryLike) -> ScaledShift:
    """TE part of the plasma shift in closed form.

    ``s_hat_TE = 10 I_TE d^2`` (perp) and ``4 I_TE d^2`` (para), which tend
    to 5/2 and 1 as ``omega_p * d`` grows.
    """
    d = _d(g)
    if not omega_p > 0:
        raise ValueError("omega_p must be positive")
    val, err = te_integral(omega_p * d)
    f = 10.0 if _perp(o) else 4.0
    return ScaledShift(f * val, f * err, Method.CLOSED_FORM, Breakdown(te=f * val))


def te_defining_integral(w: float, periods: int = 40) -> tuple[float, float]:
    """Oracle for :func:`te_integral` from its oscillatory defining integral.

    With ``d = 1``,
    ``I = w^-2 [ int_0^w k ((2k^2 - w^2) cos 2k + 2k sqrt(w^2 - k^2) sin 2k) dk
    + int_w^inf r(k) cos 2k dk ]`` and ``r(k) = k w^4/(k + sqrt(k^2 - w^2))^2``.
    The second integral is summed period by period up to ``K = w + periods*pi``;
    beyond ``K`` the first two terms of the large-k expansion
    ``r ~ w^4/(4k) + w^6/(8 k^3)`` are integrated analytically and the next
    term bounds the remainder.  Returns ``(value, est_abs_err)``.
    """
    from scipy.special import sici

    cfg = QuadratureConfig(rel_tol=1e-13, abs_tol=1e-17)
    w = float(w)
    w2, w4 = w * w, w ** 4

    def f_in(k):
        return k * ((2 * k * k - w2) * np.cos(2 * k)
                    + 2 * k * np.sqrt(np.maximum(w2 - k * k, 0.0)) * np.sin(2 * k))

    def f_out(k):
        root = np.sqrt(np.maximum(k * k - w2, 0.0))
        return k * w4 / (k + root) ** 2 * np.cos(2 * k)

    inner = integrate_1d(f_in, 0.0, w, cfg, points=list(np.arange(1, 2 * w / math.pi) * math.pi / 2))
    edges = w + math.pi * np.arange(periods + 1)
    total, err = inner.value, inner.est_err
    for lo, hi in zip(edges[:-1], edges[1:]):
        r = integrate_1d(f_out, lo, hi, cfg)
        total += r.value
        err += r.est_err
    kk = edges[-1]
    ci = sici(2 * kk)[1]
    tail1 = -w4 / 4.0 * ci
    tail3 = w ** 6 / 8.0 * (math.cos(2 * kk) / (2 * kk * kk) - math.sin(2 * kk) / kk + 2 * ci)
    total += tail1 + tail3
    err += 5.0 * w ** 8 / (64.0 * kk ** 5)
    return total / w2, err / w2


def plasma_total(omega_p: float, o: Orientation, g: GeometryLike,
                 cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScaledShift:
    """Full plasma shift: closed-form TE plus reduced-form TM."""
    te = plasma_te(omega_p, o, g)
    tm = plasma_tm(omega_p, o, g, cfg)
    return ScaledShift(te.s_hat + tm.s_hat, te.est_err + tm.est_err, Method.QUADRATURE,
                       Breakdown(te=te.s_hat, tm=tm.s_hat))


# ---------------------------------------------------------------- surface modes

def _sp_frequencies(model: SurfaceModel, d: float) -> tuple[float, float]:
    if isinstance(model, Plasma):
        return model.omega_p * d, 0.0
    if isinstance(model, DispersiveDielectric):
        return model.omega_p * d, model.omega_t * d
    raise UnsupportedModelError("surface-mode shift needs a plasma or dispersive model")


def sp_only_shift(model: SurfaceModel, o: Orientation, g: GeometryLike,
                  cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScaledShift:
    """Contribution of the surface plasmon (polariton) mode alone."""
    d = _d(g)
    wp, wt = _sp_frequencies(model, d)
    perp = _perp(o)

    def f(k):
        _, kappa2, _, p = sp_branch(wp, wt, k)
        kappa = np.sqrt(kappa2)
        k2 = k * k
        num = (2 * k2 - kappa2) if perp else 0.5 * (3 * k2 + 2 * kappa2)
        return k * num / (p * kappa2) * np.exp(-2.0 * kappa)

    scales = [wp, math.sqrt(wp * wp + wt * wt)] + ([wt] if wt > 0 else [])
    pts = sorted({wt + s * c for s in scales for c in (0.01, 0.1, 0.3, 1.0, 3.0)})
    res = integrate_exp_tail(f, wt, 2.0, cfg, points=pts)
    val = -4.0 * math.pi * res.value
    shift = ScaledShift(val, 4.0 * math.pi * res.est_err, Method.QUADRATURE, Breakdown(sp=val))
    return _finish(res, shift, "sp_only_shift")


SMALL_DISTANCE_LIMIT = 0.1


def small_distance_value(omega_p_d: float, omega_t_d: float, o: Orientation) -> float:
    """Leading short-distance term from the dimensionless products.

    ``-pi/(2 sqrt2 W)`` perp and ``-5 pi/(4 sqrt2 W)`` para, with
    ``W = sqrt(2 (omega_t d)^2 + (omega_p d)^2)``; ``omega_t_d = 0`` is the
    plasma case.
    """
    if not omega_p_d > 0 or omega_t_d < 0:
        raise ValueError("need omega_p_d > 0 and omega_t_d >= 0")
    big_w = math.sqrt(2.0 * omega_t_d * omega_t_d + omega_p_d * omega_p_d)
    coeff = math.pi / (2.0 * math.sqrt(2.0)) if _perp(o) else 5.0 * math.pi / (4.0 * math.sqrt(2.0))
    return -coeff / big_w


def small_distance_asymptote(model: SurfaceModel, o: Orientation, g: GeometryLike) -> ScaledShift:
    """Leading 1/d^3 term of the shift, carried by the surface mode.

    A warning is attached when the relevant product ``W`` (see
    :func:`small_distance_value`) is not small.
    """
    d = _d(g)
    wp, wt = _sp_frequencies(model, d)
    val = small_distance_value(wp, wt, o)
    big_w = math.sqrt(2.0 * wt * wt + wp * wp)
    warning = None if big_w < SMALL_DISTANCE_LIMIT else \
        f"short-distance asymptote used at omega d = {big_w:.3g}"
    return ScaledShift(val, 0.0, Method.ASYMPTOTIC, Breakdown(sp=val), warning)


def large_distance_asymptote(model: DispersiveDielectric, o: Orientation,
                             g: GeometryLike) -> ScaledShift:
    """Static-limit approximation: nondispersive result with ``n = sqrt(eps(0))``."""
    if not isinstance(model, DispersiveDielectric):
        raise UnsupportedModelError("large-distance asymptote is defined for the dispersive model")
    r = nondisp_closed(math.sqrt(1.0 + model.chi0), o, g)
    return ScaledShift(r.s_hat, r.est_err, Method.ASYMPTOTIC)


# ---------------------------------------------------------------- dispatch

def shift(model: SurfaceModel, o: Orientation, g: GeometryLike,
          cfg: QuadratureConfig = DEFAULT_CONFIG) -> ScaledShift:
    """Evaluate with the preferred method for the given model."""
    if isinstance(model, PerfectReflector):
        return pm_shift(o, g)
    if isinstance(model, Nondispersive):
        return nondisp_closed(model.n, o, g)
    if isinstance(model, Plasma):
        return plasma_total(model.omega_p, o, g, cfg)
    return general_shift(model, o, g, cfg)

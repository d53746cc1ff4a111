"""Permittivity models, Fresnel coefficients and surface-plasmon dispersion.

Frequencies are in natural units (c = hbar = 1).  Every model can also be
expressed in dimensionless form for a given distance ``d`` through
:func:`dimensionless`, which is what the shift evaluators work with: the
frequency ``x = xi * d`` replaces ``xi`` and all model frequencies are
multiplied by ``d``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np


class UnsupportedModelError(ValueError):
    """The requested operation is not defined for this surface model."""


class Polarization(enum.Enum):
    TE = "TE"
    TM = "TM"


@dataclass(frozen=True)
class PerfectReflector:
    pass


@dataclass(frozen=True)
class Nondispersive:
    n: float

    def __post_init__(self):
        if not (math.isfinite(self.n) and self.n >= 1):
            raise ValueError(f"refractive index must satisfy n >= 1, got {self.n}")


@dataclass(frozen=True)
class Plasma:
    omega_p: float

    def __post_init__(self):
        if not (math.isfinite(self.omega_p) and self.omega_p > 0):
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")


@dataclass(frozen=True)
class DispersiveDielectric:
    omega_p: float
    omega_t: float

    def __post_init__(self):
        if not (math.isfinite(self.omega_p) and self.omega_p > 0):
            raise ValueError(f"omega_p must be positive, got {self.omega_p}")
        if not (math.isfinite(self.omega_t) and self.omega_t > 0):
            raise ValueError(f"omega_t must be positive, got {self.omega_t}")

    @property
    def chi0(self) -> float:
        return (self.omega_p / self.omega_t) ** 2


# Probe frequencies for the static limit of user-supplied permittivities.
CUSTOM_PROBES = (1e-8, 1e-6, 1e-4)
# Below this frequency (eps - eps0)/xi^2 is frozen at its probed value.
CUSTOM_SMALL_XI = 1e-3


def _call_vectorized(fn: Callable, xi: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(fn(xi), dtype=float)
        if out.shape == xi.shape:
            return out
    except Exception:
        pass
    return np.array([float(fn(float(v))) for v in xi.ravel()]).reshape(xi.shape)


@dataclass(frozen=True)
class Custom:
    """User-supplied ``eps(xi)`` on the imaginary frequency axis.

    ``eps`` must return values ``>= 1`` and tend to a finite static limit.
    It is probed at construction and rejected when the probes fail.
    """

    eps: Callable[[np.ndarray], np.ndarray]
    eps0: float = field(init=False)
    curvature0: float = field(init=False)

    def __post_init__(self):
        probes = np.array(CUSTOM_PROBES)
        vals = _call_vectorized(self.eps, probes)
        if not np.all(np.isfinite(vals)) or np.any(vals < 1):
            raise ValueError("custom permittivity must be finite and >= 1 at the probe frequencies")
        scale = max(1.0, abs(vals[0]))
        if abs(vals[1] - vals[0]) > 1e-6 * scale or abs(vals[2] - vals[0]) > 1e-3 * scale:
            raise ValueError("custom permittivity has no finite static limit; "
                             "use the Plasma model for a divergent static response")
        object.__setattr__(self, "eps0", float(vals[0]))
        e_small = float(_call_vectorized(self.eps, np.array([CUSTOM_SMALL_XI]))[0])
        object.__setattr__(self, "curvature0", (e_small - vals[0]) / CUSTOM_SMALL_XI ** 2)

    def __hash__(self):
        return id(self)


SurfaceModel = Union[PerfectReflector, Nondispersive, Plasma, DispersiveDielectric, Custom]


@dataclass(frozen=True)
class ImaginaryFrequencyPoint:
    xi: float
    eta: float

    def __post_init__(self):
        if not self.xi > 0:
            raise ValueError("xi must be positive")
        if not self.eta >= 1:
            raise ValueError("eta must be >= 1")


@dataclass(frozen=True)
class SurfacePlasmonPoint:
    k_par: float
    omega_sp: float
    kappa: float
    eps_at_sp: float
    p: float


# ---------------------------------------------------------------- permittivity

class DimensionlessModel:
    """Permittivity of a finite or plasma model in units where ``d = 1``.

    Attributes
    ----------
    eps0 : float
        Static permittivity (``inf`` for plasma).
    scales : tuple of float
        Characteristic dimensionless frequencies, used as quadrature
        breakpoints.
    """

    def __init__(self, eps, diff, eps0: float, scales: Sequence[float] = ()):
        self._eps = eps
        self._diff = diff
        self.eps0 = eps0
        self.scales = tuple(s for s in scales if s > 0 and math.isfinite(s))

    def eps(self, x: np.ndarray) -> np.ndarray:
        return self._eps(np.asarray(x, dtype=float))

    def diff(self, x: np.ndarray) -> np.ndarray:
        """``(eps(x) - eps0) / x**2``, evaluated without cancellation."""
        return self._diff(np.asarray(x, dtype=float))

    @property
    def static_ratio(self) -> float:
        if math.isinf(self.eps0):
            return 1.0
        return (self.eps0 - 1.0) / (self.eps0 + 1.0)


def dimensionless(model: SurfaceModel, d: float) -> DimensionlessModel:
    """Express ``model`` in units of the distance ``d``."""
    if not d > 0:
        raise ValueError("distance must be positive")
    if isinstance(model, PerfectReflector):
        raise UnsupportedModelError("perfect reflector has no finite permittivity")
    if isinstance(model, Nondispersive):
        e = model.n ** 2
        return DimensionlessModel(lambda x: np.full_like(x, e), lambda x: np.zeros_like(x), e)
    if isinstance(model, Plasma):
        w2 = (model.omega_p * d) ** 2

        def eps(x):
            with np.errstate(divide="ignore"):
                return 1.0 + w2 / (x * x)
        return DimensionlessModel(eps, lambda x: np.full_like(x, np.nan), math.inf,
                                  (model.omega_p * d,))
    if isinstance(model, DispersiveDielectric):
        w2 = (model.omega_p * d) ** 2
        t2 = (model.omega_t * d) ** 2
        return DimensionlessModel(
            lambda x: 1.0 + w2 / (x * x + t2),
            lambda x: -w2 / (t2 * (x * x + t2)),
            1.0 + w2 / t2,
            (math.sqrt(t2), math.sqrt(t2 + w2)),
        )
    if isinstance(model, Custom):
        e0 = model.eps0
        c0 = model.curvature0
        f = model.eps

        def eps(x):
            return _call_vectorized(f, x / d)

        def diff(x):
            xi = x / d
            out = np.full_like(x, c0)
            big = xi >= CUSTOM_SMALL_XI
            if np.any(big):
                out[big] = (_call_vectorized(f, xi[big]) - e0) / xi[big] ** 2
            return out / d ** 2
        return DimensionlessModel(eps, diff, e0)
    raise TypeError(f"unknown surface model {model!r}")


def epsilon_iw(model: SurfaceModel, xi):
    """Permittivity on the imaginary frequency axis, ``eps(i xi)``.

    Raises
    ------
    UnsupportedModelError
        For the perfect reflector.
    """
    x = np.asarray(xi, dtype=float)
    if np.any(~(x > 0)):
        raise ValueError("xi must be positive")
    out = dimensionless(model, 1.0).eps(np.atleast_1d(x))
    return float(out[0]) if x.ndim == 0 else out


def static_ratio(model: SurfaceModel) -> float:
    """``(eps(0) - 1)/(eps(0) + 1)``; exactly 1 when the static response diverges."""
    if isinstance(model, (PerfectReflector, Plasma)):
        return 1.0
    return dimensionless(model, 1.0).static_ratio


# ---------------------------------------------------------------- reflection

def fresnel_xi_eta(eps: np.ndarray, eta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """TE and TM coefficients from ``eps(i xi)`` and ``eta`` (cancellation-free)."""
    a = eps - 1.0
    s = np.sqrt(a + eta * eta)
    r_te = -a / (eta + s) ** 2
    r_tm = a * ((eps + 1.0) * eta * eta - 1.0) / (eps * eta + s) ** 2
    return r_te, r_tm


def fresnel_omega(eps: np.ndarray, xi: np.ndarray, k: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """TE and TM coefficients in the ``(xi, k_par)`` parameterisation."""
    a = eps - 1.0
    big_k = np.sqrt(k * k + xi * xi)
    q = np.sqrt(eps * xi * xi + k * k)
    r_te = -a * xi * xi / (big_k + q) ** 2
    r_tm = a * (eps * xi * xi + (eps + 1.0) * k * k) / (eps * big_k + q) ** 2
    return r_te, r_tm


def reflection_xi_eta(model: SurfaceModel, pol: Polarization, pt: ImaginaryFrequencyPoint) -> float:
    """Fresnel coefficient at imaginary frequency ``xi`` and ``eta = k_z/xi``."""
    if isinstance(model, PerfectReflector):
        return -1.0 if pol is Polarization.TE else 1.0
    eps = epsilon_iw(model, pt.xi)
    r_te, r_tm = fresnel_xi_eta(np.float64(eps), np.float64(pt.eta))
    return float(r_te if pol is Polarization.TE else r_tm)


def reflection_omega(model: SurfaceModel, pol: Polarization, xi: float, k_par: float) -> float:
    """Fresnel coefficient as a function of ``xi >= 0`` and ``k_par > 0``.

    At ``xi = 0`` the TE coefficient vanishes and TM equals the static ratio.
    """
    if not k_par > 0:
        raise ValueError("k_par must be positive")
    if not xi >= 0:
        raise ValueError("xi must be non-negative")
    if xi == 0:
        if isinstance(model, (PerfectReflector, Plasma)):
            raise UnsupportedModelError("static permittivity diverges for this model")
        return 0.0 if pol is Polarization.TE else static_ratio(model)
    if isinstance(model, PerfectReflector):
        return -1.0 if pol is Polarization.TE else 1.0
    eps = epsilon_iw(model, xi)
    r_te, r_tm = fresnel_omega(np.float64(eps), np.float64(xi), np.float64(k_par))
    return float(r_te if pol is Polarization.TE else r_tm)


# ---------------------------------------------------------------- dispersion

def sp_branch(omega_p: float, omega_t: float, k: np.ndarray):
    """Vectorised surface-mode quantities; ``omega_t = 0`` is the plasma case.

    Returns ``(omega_sp**2, kappa**2, eps, p)`` with every difference of
    nearly equal terms rewritten in closed form.
    """
    k = np.asarray(k, dtype=float)
    k2 = k * k
    wp2 = omega_p * omega_p
    wt2 = omega_t * omega_t
    a = 0.5 * (wp2 + wt2)
    delta = (k - omega_t) * (k + omega_t)
    s = np.sqrt(k2 * delta + a * a)
    kappa2 = k2 * delta / (s + a)
    # s - k^2 = (a^2 - k^2 wt^2)/(s + k^2)
    x = delta * (a + (a * a - k2 * wt2) / (s + k2)) / (s + a)
    omega2 = wt2 + x
    eps = 1.0 - wp2 / x
    one_plus = eps * omega2 / k2
    p = (eps * eps + 1.0) * (eps - 1.0) * one_plus / (eps * eps * np.sqrt(-one_plus))
    return omega2, kappa2, eps, p


def sp_dispersion(model: SurfaceModel, k_par: float) -> SurfacePlasmonPoint:
    """Surface plasmon (plasma) or polariton (dispersive) at ``k_par``.

    For the dispersive dielectric the bound branch exists only for
    ``k_par > omega_t``.

    Raises
    ------
    ValueError
        If ``k_par <= 0`` or no bound mode exists at ``k_par``.
    ArithmeticError
        If the computed point violates ``eps < -1``.
    """
    if not k_par > 0:
        raise ValueError("k_par must be positive")
    if isinstance(model, Plasma):
        wp, wt = model.omega_p, 0.0
    elif isinstance(model, DispersiveDielectric):
        wp, wt = model.omega_p, model.omega_t
        if not k_par > wt:
            raise ValueError("surface polariton branch requires k_par > omega_t")
    else:
        raise UnsupportedModelError("surface-mode dispersion needs a plasma or dispersive model")
    omega2, kappa2, eps, p = sp_branch(wp, wt, np.array([k_par]))
    if not eps[0] < -1:
        raise ArithmeticError(f"surface mode has eps = {eps[0]} >= -1")
    return SurfacePlasmonPoint(float(k_par), float(np.sqrt(omega2[0])), float(np.sqrt(kappa2[0])),
                               float(eps[0]), float(p[0]))

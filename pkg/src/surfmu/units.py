"""Conversion between laboratory units and the dimensionless products used
by the shift evaluators (natural units, c = hbar = eps0 = 1)."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

HBAR_C_EV_NM = 197.3269804
FINE_STRUCTURE = 7.2973525693e-3
ELECTRON_MASS_EV = 0.51099895e6
# Reduced Compton wavelength hbar/(m c) in nm.
COMPTON_NM = HBAR_C_EV_NM / ELECTRON_MASS_EV


@dataclass(frozen=True)
class LabInputs:
    z_nm: float
    omega_p_ev: Optional[float] = None
    omega_t_ev: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.z_nm) and self.z_nm > 0):
            raise ValueError("z_nm must be positive")
        for name in ("omega_p_ev", "omega_t_ev"):
            v = getattr(self, name)
            if v is not None and not (math.isfinite(v) and v >= 0):
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class NaturalProducts:
    m_d: float
    omega_p_d: Optional[float] = None
    omega_t_d: Optional[float] = None


def frequency_times_distance(omega_ev: float, z_nm: float) -> float:
    """``omega * d`` for a frequency in eV and a distance in nm."""
    return omega_ev * z_nm / HBAR_C_EV_NM


def to_natural(lab: LabInputs) -> NaturalProducts:
    """Dimensionless products ``omega_p d``, ``omega_t d`` and ``m d``."""
    conv = lambda v: None if v is None else frequency_times_distance(v, lab.z_nm)
    return NaturalProducts(frequency_times_distance(ELECTRON_MASS_EV, lab.z_nm),
                           conv(lab.omega_p_ev), conv(lab.omega_t_ev))


def from_natural(nat: NaturalProducts) -> LabInputs:
    """Inverse of :func:`to_natural`; the distance is recovered from ``m d``."""
    if not nat.m_d > 0:
        raise ValueError("m_d must be positive")
    z_nm = nat.m_d * HBAR_C_EV_NM / ELECTRON_MASS_EV
    conv = lambda v: None if v is None else v * HBAR_C_EV_NM / z_nm
    return LabInputs(z_nm, conv(nat.omega_p_d), conv(nat.omega_t_d))


def relative_shift_prefactor(z_nm: float) -> float:
    """``(alpha / 4 pi) (lambda_C / z)**2``: relative shift per unit of ``s_hat``.

    This is ``dmu_perp_PM / mu`` at distance ``z``, with ``mu = e/(2m)``.
    """
    if not z_nm > 0:
        raise ValueError("z_nm must be positive")
    return FINE_STRUCTURE / (4.0 * math.pi) * (COMPTON_NM / z_nm) ** 2


def relative_shift(s_hat, lab: LabInputs) -> float:
    """Relative moment shift ``|dmu| / mu`` for a scaled shift at ``lab.z_nm``.

    ``s_hat`` may be a plain number or any object with an ``s_hat`` field.
    """
    value = getattr(s_hat, "s_hat", s_hat)
    return abs(float(value)) * relative_shift_prefactor(lab.z_nm)

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from surfmu.models import (Custom, DispersiveDielectric, ImaginaryFrequencyPoint, Nondispersive,
                           PerfectReflector, Plasma, Polarization, UnsupportedModelError,
                           dimensionless, epsilon_iw, fresnel_omega, fresnel_xi_eta, reflection_omega,
                           reflection_xi_eta, sp_dispersion, static_ratio)

TE, TM = Polarization.TE, Polarization.TM


def test_perfect_reflector_coefficients():
    pt = ImaginaryFrequencyPoint(1.3, 2.0)
    assert reflection_xi_eta(PerfectReflector(), TE, pt) == -1.0
    assert reflection_xi_eta(PerfectReflector(), TM, pt) == 1.0
    assert reflection_omega(PerfectReflector(), TM, 0.4, 2.0) == 1.0


def test_vacuum_gives_no_reflection():
    pt = ImaginaryFrequencyPoint(0.7, 3.0)
    assert reflection_xi_eta(Nondispersive(1.0), TE, pt) == 0.0
    assert reflection_xi_eta(Nondispersive(1.0), TM, pt) == 0.0


def test_normal_incidence_nondispersive():
    # eta = 1 is normal incidence: R_TE = -(n-1)/(n+1), R_TM = +(n-1)/(n+1)
    pt = ImaginaryFrequencyPoint(1.0, 1.0)
    assert reflection_xi_eta(Nondispersive(2.0), TE, pt) == pytest.approx(-1 / 3, rel=1e-15)
    assert reflection_xi_eta(Nondispersive(2.0), TM, pt) == pytest.approx(1 / 3, rel=1e-15)


def test_textbook_fresnel_forms():
    eps, xi, eta = 5.0, 0.8, 1.7
    kz = xi * eta
    kzd = math.sqrt((eps - 1) * xi * xi + kz * kz)
    r_te = (kz - kzd) / (kz + kzd)
    r_tm = (eps * kz - kzd) / (eps * kz + kzd)
    m = Nondispersive(math.sqrt(eps))
    pt = ImaginaryFrequencyPoint(xi, eta)
    assert reflection_xi_eta(m, TE, pt) == pytest.approx(r_te, rel=1e-14)
    assert reflection_xi_eta(m, TM, pt) == pytest.approx(r_tm, rel=1e-14)
    k = math.sqrt(kz * kz - xi * xi)
    assert reflection_omega(m, TM, xi, k) == pytest.approx(r_tm, rel=1e-14)
    assert reflection_omega(m, TE, xi, k) == pytest.approx(r_te, rel=1e-14)


def test_permittivities():
    assert epsilon_iw(Plasma(2.0), 1.0) == 5.0
    assert epsilon_iw(DispersiveDielectric(2.0, 1.0), 1.0) == 3.0
    assert epsilon_iw(Nondispersive(3.0), 0.1) == 9.0
    with pytest.raises(UnsupportedModelError):
        epsilon_iw(PerfectReflector(), 1.0)
    with pytest.raises(ValueError):
        epsilon_iw(Plasma(1.0), 0.0)


def test_static_ratios():
    assert static_ratio(Nondispersive(2.0)) == pytest.approx(3 / 5)
    assert static_ratio(DispersiveDielectric(2.0, 1.0)) == pytest.approx(4 / 6)
    assert static_ratio(Plasma(1.0)) == 1.0
    assert static_ratio(PerfectReflector()) == 1.0


def test_static_tm_limit():
    m = DispersiveDielectric(3.0, 1.5)
    assert reflection_omega(m, TM, 0.0, 0.2) == pytest.approx(static_ratio(m), rel=1e-15)
    assert reflection_omega(m, TE, 0.0, 0.2) == 0.0
    # continuity as xi -> 0
    assert reflection_omega(m, TM, 1e-9, 0.2) == pytest.approx(static_ratio(m), rel=1e-12)
    with pytest.raises(UnsupportedModelError):
        reflection_omega(Plasma(1.0), TM, 0.0, 1.0)


def test_plasma_static_limits_do_not_commute():
    # R_TE vanishes as xi -> 0 for finite eps(0); for the plasma eps xi^2 -> wp^2
    # keeps it finite, and omega_t -> 0 does not restore that value.
    k = 0.5
    wp = 2.0
    r_plasma = reflection_omega(Plasma(wp), TE, 1e-8, k)
    expected = (k - math.sqrt(k * k + wp * wp)) / (k + math.sqrt(k * k + wp * wp))
    assert r_plasma == pytest.approx(expected, rel=1e-8)
    r_disp = reflection_omega(DispersiveDielectric(wp, 1e-4), TE, 1e-8, k)
    assert abs(r_disp) < 1e-6


def test_input_validation():
    for bad in (lambda: Nondispersive(0.5), lambda: Plasma(0.0), lambda: Plasma(-1.0),
                lambda: DispersiveDielectric(1.0, 0.0), lambda: ImaginaryFrequencyPoint(0.0, 1.0),
                lambda: ImaginaryFrequencyPoint(1.0, 0.5)):
        with pytest.raises(ValueError):
            bad()


def test_custom_model():
    c = Custom(lambda xi: 1.0 + 3.0 / (1.0 + xi * xi))
    assert c.eps0 == pytest.approx(4.0, rel=1e-12)
    dm = dimensionless(c, 2.0)
    ref = dimensionless(DispersiveDielectric(math.sqrt(3.0), 1.0), 2.0)
    x = np.array([1e-4, 0.1, 1.0, 10.0])
    assert np.allclose(dm.eps(x), ref.eps(x), rtol=1e-14)
    assert np.allclose(dm.diff(x), ref.diff(x), rtol=1e-5)
    with pytest.raises(ValueError):
        Custom(lambda xi: 1.0 + 1.0 / (xi * xi))
    with pytest.raises(ValueError):
        Custom(lambda xi: 0.5 + 0 * xi)


def test_sp_dispersion_plasma():
    wp = 1.0
    for k in (1e-3, 0.3, 1.0, 10.0, 1e3):
        sp = sp_dispersion(Plasma(wp), k)
        assert sp.omega_sp < wp / math.sqrt(2.0)
        assert sp.eps_at_sp < -1
        # bound on the vacuum side: kappa^2 = k^2 - omega^2
        assert sp.kappa ** 2 == pytest.approx(k * k - sp.omega_sp ** 2, rel=1e-10)
        # dispersion relation kappa_d = -eps kappa with kappa_d^2 = k^2 - eps omega^2
        kappa_d = math.sqrt(k * k - sp.eps_at_sp * sp.omega_sp ** 2)
        assert kappa_d == pytest.approx(-sp.eps_at_sp * sp.kappa, rel=1e-10)
    # large k: omega_sp -> wp / sqrt 2
    assert sp_dispersion(Plasma(wp), 1e4).omega_sp == pytest.approx(wp / math.sqrt(2), rel=1e-6)


def test_sp_dispersion_dispersive_branch():
    m = DispersiveDielectric(2.0, 1.0)
    for k in (1.0 + 1e-6, 1.5, 4.0, 100.0):
        sp = sp_dispersion(m, k)
        assert m.omega_t < sp.omega_sp < math.sqrt(m.omega_t ** 2 + m.omega_p ** 2 / 2)
        kappa_d = math.sqrt(k * k - sp.eps_at_sp * sp.omega_sp ** 2)
        assert kappa_d == pytest.approx(-sp.eps_at_sp * sp.kappa, rel=1e-9)
    with pytest.raises(ValueError):
        sp_dispersion(m, 0.5)
    with pytest.raises(ValueError):
        sp_dispersion(Plasma(1.0), 0.0)
    with pytest.raises(UnsupportedModelError):
        sp_dispersion(Nondispersive(2.0), 1.0)


models_st = st.one_of(
    st.builds(Nondispersive, st.floats(1.0, 100.0)),
    st.builds(Plasma, st.floats(1e-3, 1e3)),
    st.builds(DispersiveDielectric, st.floats(1e-3, 1e3), st.floats(1e-3, 1e3)),
)


@pytest.mark.property
@settings(max_examples=1000, deadline=None)
@given(models_st, st.floats(-4.0, 4.0), st.floats(0.0, 6.0))
def test_reflection_bounds_xi_eta(model, lxi, leta):
    pt = ImaginaryFrequencyPoint(10.0 ** lxi, 10.0 ** leta)
    r_te = reflection_xi_eta(model, TE, pt)
    r_tm = reflection_xi_eta(model, TM, pt)
    assert -1.0 < r_te <= 0.0
    assert 0.0 <= r_tm < 1.0


@pytest.mark.property
@settings(max_examples=1000, deadline=None)
@given(models_st, st.floats(-4.0, 4.0), st.floats(-4.0, 4.0))
def test_reflection_bounds_omega(model, lxi, lk):
    xi, k = 10.0 ** lxi, 10.0 ** lk
    r_te = reflection_omega(model, TE, xi, k)
    r_tm = reflection_omega(model, TM, xi, k)
    assert -1.0 < r_te <= 0.0
    assert 0.0 <= r_tm < 1.0


@settings(max_examples=300, deadline=None)
@given(st.floats(1.0, 1e6), st.floats(1e-6, 1e6), st.floats(1e-6, 1e6))
def test_fresnel_forms_consistent(eps, xi, k):
    r_te, r_tm = fresnel_omega(np.float64(eps), np.float64(xi), np.float64(k))
    eta = math.sqrt(1.0 + (k / xi) ** 2)
    a_te, a_tm = fresnel_xi_eta(np.float64(eps), np.float64(eta))
    assert r_te == pytest.approx(a_te, rel=1e-9, abs=1e-15)
    assert r_tm == pytest.approx(a_tm, rel=1e-9, abs=1e-15)

import math

import mpmath as mp
import numpy as np
import pytest

from weil_lab import numerics as nu
from weil_lab import special_fn as sf

mp.mp.dps = 30

# frozen references (25+ digits, independent high-precision evaluations)
XI_HALF = 0.4971207781883141099127737
GAMMA1 = 14.134725141734693790  # first ordinate, from a high-precision root find


def _mp_xi(s):
    s = mp.mpc(s)
    return mp.mpf(1) / 2 * s * (s - 1) * mp.pi ** (-s / 2) * mp.gamma(s / 2) * mp.zeta(s)


# ----------------------------------------------------------------------
# log_gamma / digamma
# ----------------------------------------------------------------------

def test_log_gamma_classics():
    assert abs(sf.log_gamma(1.0)) < 1e-14
    assert abs(sf.log_gamma(0.5) - math.log(math.sqrt(math.pi))) < 1e-14
    assert abs(sf.log_gamma(5.0) - math.log(24.0)) < 1e-13


def test_log_gamma_against_oracle():
    rng = np.random.default_rng(11)
    for _ in range(30):
        z = complex(rng.uniform(-8, 10), rng.uniform(-60, 60))
        if abs(z.imag) < 0.1 and z.real <= 0.5:
            continue
        ref = complex(mp.loggamma(z))
        assert abs(sf.log_gamma(z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_log_gamma_pole():
    with pytest.raises(ValueError):
        sf.log_gamma(0.0)
    with pytest.raises(ValueError):
        sf.log_gamma(-3.0)


def test_digamma_against_oracle():
    rng = np.random.default_rng(12)
    for _ in range(30):
        z = complex(rng.uniform(-8, 10), rng.uniform(-60, 60))
        if abs(z.imag) < 0.1 and z.real <= 0.5:
            continue
        ref = complex(mp.digamma(z))
        assert abs(sf.digamma(z) - ref) <= 1e-12 * max(1.0, abs(ref))


# ----------------------------------------------------------------------
# zeta
# ----------------------------------------------------------------------

def test_zeta_classics():
    assert abs(sf.zeta(2.0) - math.pi ** 2 / 6) < 1e-14
    assert abs(sf.zeta(0.0) + 0.5) < 1e-14
    assert abs(sf.zeta(-1.0) + 1.0 / 12.0) < 1e-14


def test_zeta_pole():
    with pytest.raises(ValueError):
        sf.zeta(1.0)


def test_zeta_vanishes_at_first_ordinate():
    assert abs(sf.zeta(complex(0.5, 14.134725142))) <= 1e-8


def test_zeta_and_derivative_against_oracle():
    rng = np.random.default_rng(13)
    for _ in range(25):
        s = complex(rng.uniform(-9, 10), rng.uniform(-120, 120))
        z, zp = sf.zeta_pair(s)
        ref = complex(mp.zeta(mp.mpc(s)))
        refp = complex(mp.zeta(mp.mpc(s), derivative=1))
        # relative to the local scale; at near-zero dips the absolute error
        # stays at the 1e-14 level
        scale = max(abs(ref), 1e-2)
        assert abs(z - ref) <= 1e-12 * scale
        assert abs(zp - refp) <= 1e-12 * max(abs(refp), 1e-2)


# ----------------------------------------------------------------------
# xi
# ----------------------------------------------------------------------

def test_xi_at_half():
    v = sf.xi(0.5)
    assert abs(v.xi - XI_HALF) <= 1e-12 * XI_HALF
    assert abs(v.xi_prime) <= 1e-12
    assert v.rel_error <= 1e-9


def test_xi_functional_symmetry_spots():
    a, b = sf.xi(2.0), sf.xi(-1.0)
    assert abs(a.xi - b.xi) <= 1e-13 * abs(a.xi)


def test_xi_symmetry_random():
    rng = np.random.default_rng(14)
    for _ in range(100):
        s = complex(rng.uniform(-9, 10), rng.uniform(-115, 115))
        a, b = sf.xi(s), sf.xi(1.0 - s)
        assert abs(a.xi - b.xi) <= 1e-10 * max(abs(a.xi), 1e-300)
        assert abs(a.xi_prime + b.xi_prime) <= 1e-9 * max(abs(a.xi_prime), 1e-300)


def test_xi_vanishes_on_first_zero():
    v = sf.xi(complex(0.5, GAMMA1))
    assert abs(v.xi) <= 1e-8


def test_xi_prime_near_zero_fd_branch():
    # within 1e-3 of the first zero the derivative switches to the local
    # finite-difference model; compare against a high-precision derivative
    s = mp.mpc(mp.mpf(1) / 2, GAMMA1)
    ref = complex(mp.diff(_mp_xi, s))
    got = sf.xi(complex(0.5, GAMMA1)).xi_prime
    assert abs(got - ref) <= 1e-9 * abs(ref)


def test_xi_against_oracle_random():
    rng = np.random.default_rng(15)
    for _ in range(10):
        s = complex(rng.uniform(-5, 6), rng.uniform(-80, 80))
        ref = complex(_mp_xi(s))
        refp = complex(mp.diff(_mp_xi, mp.mpc(s)))
        v = sf.xi(s)
        assert abs(v.xi - ref) <= 1e-11 * abs(ref)
        assert abs(v.xi_prime - refp) <= 1e-9 * max(abs(refp), abs(ref))


def test_a_function_identity():
    # (E(z) + E#(z))/2 = xi(1/2 - iz)
    rng = np.random.default_rng(16)
    for _ in range(10):
        z = complex(rng.uniform(-60, 60), rng.uniform(-3, 3))
        E = sf.E_xi(z)
        E_sharp = np.conj(sf.E_xi(np.conj(z)))
        A = 0.5 * (E + E_sharp)
        ref = sf.xi(0.5 - 1j * z).xi
        assert abs(A - ref) <= 1e-10 * max(abs(ref), 1e-300)


# ----------------------------------------------------------------------
# E and Theta
# ----------------------------------------------------------------------

def test_E_at_zero_real_and_theta_one():
    E0 = sf.E_xi(0.0)
    assert abs(E0.imag) <= 1e-13 * abs(E0)
    assert abs(sf.theta_xi(0.0) - 1.0) <= 1e-12


def test_theta_unimodular_on_axis():
    rng = np.random.default_rng(17)
    x = rng.uniform(-115, 115, size=100)
    for xv in x:
        assert abs(abs(sf.theta_xi(float(xv))) - 1.0) <= 1e-12
    vals = sf.theta_on_axis(x)
    assert np.max(np.abs(np.abs(vals) - 1.0)) <= 1e-12


def test_theta_sharp_involution_on_axis():
    rng = np.random.default_rng(18)
    for _ in range(10):
        x = float(rng.uniform(-100, 100))
        th = sf.theta_xi(x)
        th_sharp = np.conj(sf.theta_xi(x))   # conj(Theta(conj z)) at real z
        assert abs(th * th_sharp - 1.0) <= 1e-12


def test_theta_contracts_upper_half_plane():
    assert abs(sf.theta_xi(2j)) < 1.0
    assert abs(sf.theta_xi(complex(10.0, 1.5))) < 1.0


def test_theta_axis_route_matches_value_route():
    x = np.array([3.7, 14.2, 55.2, 101.3])
    direct = np.array([sf.theta_xi(float(v)) for v in x])
    assert np.max(np.abs(sf.theta_on_axis(x) - direct)) <= 1e-11


def test_theta_axis_survives_deep_heights():
    th = sf.theta_on_axis(np.array([500.0, 2000.0, 9000.0]))
    assert np.all(np.isfinite(th))
    assert np.max(np.abs(np.abs(th) - 1.0)) <= 1e-12


def test_theta_value_route_underflow_guard():
    # |E| underflows around |z| ~ 900; the value route must refuse rather
    # than return 0/0
    with pytest.raises(ZeroDivisionError):
        sf.theta_xi(1500.0)


def test_E_on_axis_matches_value_route():
    x = np.array([-40.0, -3.2, 0.0, 7.7, 90.0])
    vec = sf.E_on_axis(x)
    direct = np.array([sf.E_xi(float(v)) for v in x])
    assert np.max(np.abs(vec - direct) / np.abs(direct)) <= 1e-10


# ----------------------------------------------------------------------
# omega profile
# ----------------------------------------------------------------------

def test_omega_even():
    assert abs(sf.omega_profile(0.3) - sf.omega_profile(-0.3)) <= 1e-12


def test_omega_integral_matches_xi_half():
    val = nu.fourier_integral(
        lambda u: np.array([sf.omega_profile(t) for t in np.atleast_1d(u)]),
        (-5.0, 5.0), 0.0)
    assert abs(val - XI_HALF) <= 1e-10


@pytest.mark.parametrize("z", [0.0, 1.0, 2.0])
def test_omega_transform_consistency(z):
    got = nu.fourier_integral(
        lambda u: np.array([sf.omega_profile(t) for t in np.atleast_1d(u)]),
        (-5.0, 5.0), z)
    ref = sf.xi(0.5 - 1j * z).xi
    assert abs(got - ref) <= 1e-6


def test_omega_superexponential_decay():
    assert abs(sf.omega_profile(5.0)) <= 1e-16


def test_omega_range_guard():
    with pytest.raises(ValueError):
        sf.omega_profile(5.5)


# ----------------------------------------------------------------------
# critical-line helpers
# ----------------------------------------------------------------------

def test_critical_line_log_derivative_against_oracle():
    for x in (3.3, 21.5, 77.0):
        L = complex(sf.critical_line_log_derivative(np.array([x]))[0])
        s = mp.mpc(mp.mpf(1) / 2, -x)
        ref = complex(-1j * mp.diff(_mp_xi, s) / _mp_xi(s))
        assert abs(L - ref) <= 1e-10 * max(1.0, abs(ref))
        assert abs(L.imag) <= 1e-9 * max(1.0, abs(L))


def test_xi_on_critical_line_real():
    t = np.array([0.0, 5.0, 14.0, 60.0])
    vals = sf.xi_on_critical_line(t)
    assert np.max(np.abs(vals.imag)) <= 1e-13 * np.max(np.abs(vals.real))
    assert abs(vals[0] - XI_HALF) <= 1e-12


def test_eval_point_carries_both_coordinates():
    p = sf.EvalPoint(z=2.0 - 1.0j)
    assert p.s == 0.5 - 1j * (2.0 - 1.0j)
    back = sf.EvalPoint.from_s(p.s)
    assert abs(back.z - p.z) < 1e-15

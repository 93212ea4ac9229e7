"""Evaluators for Gamma, zeta, the completed xi function, the structure
function E(z) = xi(1/2-iz) + xi'(1/2-iz), its inner-function ratio Theta,
and the omega profile (the time-domain inverse transform of xi(1/2-iz)).

All evaluators are double precision, vectorized over numpy arrays where it
matters, and validated against high-precision references in the test suite.
Validated box: |Im s| <= 120, |Re s| <= 10. Outside it values are still
computed but the reported error estimate degrades.

Conventions used throughout the package:

    xi(s)    = (1/2) s (s-1) pi^(-s/2) Gamma(s/2) zeta(s)
             = (s-1) pi^(-s/2) Gamma(s/2 + 1) zeta(s)
    E(z)     = xi(1/2 - iz) + xi'(1/2 - iz)        (' = d/ds)
    F^#(z)   = conj(F(conj(z)))
    Theta(z) = E^#(z) / E(z)
"""

from __future__ import annotations

import math
import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

__all__ = [
    "EvalPoint", "XiValue", "log_gamma", "digamma", "zeta", "zeta_pair",
    "xi", "E_xi", "theta_xi", "omega_profile", "xi_log_derivative",
    "critical_line_log_derivative", "theta_on_axis", "xi_on_critical_line",
    "E_on_axis", "VALIDATED_IM", "VALIDATED_RE",
]

VALIDATED_IM = 120.0
VALIDATED_RE = 10.0

# Bernoulli numbers B_{2k}, k = 1..16, exact.
_B2K = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
        Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
        Fraction(-3617, 510), Fraction(43867, 798), Fraction(-174611, 330),
        Fraction(854513, 138), Fraction(-236364091, 2730),
        Fraction(8553103, 6), Fraction(-23749461029, 870),
        Fraction(8615841276005, 14322), Fraction(-7709321041217, 510)]
_B2K_OVER_FACT = np.array([float(b) / math.factorial(2 * (k + 1))
                           for k, b in enumerate(_B2K)])
_B2K_FLOAT = np.array([float(b) for b in _B2K])
_EM_TERMS = 15          # Bernoulli corrections kept in Euler-Maclaurin
_LN_PI = math.log(math.pi)
_LN_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class EvalPoint:
    """A point z in the frequency plane; the zeta-side argument is s = 1/2 - iz."""
    z: complex
    regime_hint: Optional[str] = None   # 'small' | 'asymptotic'

    @property
    def s(self) -> complex:
        return 0.5 - 1j * self.z

    @classmethod
    def from_s(cls, s: complex) -> "EvalPoint":
        return cls(z=1j * (s - 0.5))


@dataclass(frozen=True)
class XiValue:
    xi: complex
    xi_prime: complex
    rel_error: float


# ----------------------------------------------------------------------
# log Gamma (Lanczos, g = 607/128, 15 terms) and digamma
# ----------------------------------------------------------------------

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = np.array([
    0.99999999999999709182,
    57.156235665862923517, -59.597960355475491248, 14.136097974741747174,
    -0.49191381609762019978, 0.33994649984811888699e-4,
    0.46523628927048575665e-4, -0.98374475304879564677e-4,
    0.15808870322491248884e-3, -0.21026444172410488319e-3,
    0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4, -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
])


def _log_gamma_core(z: np.ndarray) -> np.ndarray:
    # Re(z) >= 0.5 assumed
    acc = np.full(z.shape, _LANCZOS_C[0], dtype=complex)
    for k in range(1, len(_LANCZOS_C)):
        acc = acc + _LANCZOS_C[k] / (z + (k - 1))
    t = z + (_LANCZOS_G - 0.5)
    return (0.5 * _LN_2PI + (z - 0.5) * np.log(t) - t + np.log(acc))


def _log_sin_pi_upper(z: np.ndarray) -> np.ndarray:
    # log(sin(pi z)) continuous on the closed upper half-plane (Im z >= 0)
    return (-1j * math.pi * z + 0.5j * math.pi - math.log(2.0)
            + np.log1p(-np.exp(2j * math.pi * z)))


def log_gamma(z):
    """Principal-branch log Gamma(z).

    Lanczos rational approximation for Re(z) >= 1/2, reflection through
    sin(pi z) otherwise (with a branch-continuous log-sin). Relative error
    is at the 1e-13 level away from the poles at z = 0, -1, -2, ...
    """
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    bad = (z_arr.real <= 0) & (z_arr.imag == 0) & (z_arr.real == np.round(z_arr.real))
    if np.any(bad):
        raise ValueError("log_gamma pole at nonpositive integer")
    out = np.empty_like(z_arr)
    main = z_arr.real >= 0.5
    if np.any(main):
        out[main] = _log_gamma_core(z_arr[main])
    refl = ~main
    if np.any(refl):
        w = z_arr[refl]
        upper = w.imag >= 0
        res = np.empty_like(w)
        if np.any(upper):
            u = w[upper]
            res[upper] = _LN_PI - _log_sin_pi_upper(u) - _log_gamma_core(1.0 - u)
        if np.any(~upper):
            u = np.conj(w[~upper])
            res[~upper] = np.conj(_LN_PI - _log_sin_pi_upper(u)
                                  - _log_gamma_core(1.0 - u))
        out[refl] = res
    return complex(out[0]) if scalar else out


def digamma(z):
    """psi_0(z), the logarithmic derivative of Gamma.

    Asymptotic Bernoulli series after lifting Re(z) above 12 by the
    recurrence psi(z) = psi(z+1) - 1/z; reflection for Re(z) < 0.
    """
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr).copy()
    bad = (z_arr.real <= 0) & (z_arr.imag == 0) & (z_arr.real == np.round(z_arr.real))
    if np.any(bad):
        raise ValueError("digamma pole at nonpositive integer")
    out = np.zeros_like(z_arr)
    refl = z_arr.real < 0
    if np.any(refl):
        w = z_arr[refl]
        out[refl] -= math.pi / np.tan(math.pi * w)
        z_arr[refl] = 1.0 - w
    # lift to Re >= 12
    for _ in range(14):
        low = z_arr.real < 12.0
        if not np.any(low):
            break
        out[low] -= 1.0 / z_arr[low]
        z_arr[low] += 1.0
    w = z_arr
    inv2 = 1.0 / (w * w)
    series = np.zeros_like(w)
    p = inv2.copy()
    for k in range(1, 9):
        series += _B2K_FLOAT[k - 1] / (2 * k) * p
        p *= inv2
    out += np.log(w) - 0.5 / w - series
    return complex(out[0]) if scalar else out


# ----------------------------------------------------------------------
# zeta by Euler-Maclaurin, with the termwise s-derivative
# ----------------------------------------------------------------------

def _w_pair_direct(s: np.ndarray):
    """((s-1) zeta(s), d/ds[(s-1) zeta(s)]) for Re(s) >= 0; regular at s = 1.

    The truncation index N is set from the largest |s| of the batch, so
    callers should batch points of comparable height.
    """
    s = s.ravel()
    smax = float(np.max(np.abs(s))) if s.size else 0.0
    N = max(32, int(math.ceil(0.5 * smax)) + 16)

    S = np.zeros_like(s)
    Sp = np.zeros_like(s)
    ln_n = np.log(np.arange(1, N, dtype=float))
    for i0 in range(0, len(ln_n), 2048):
        ln_c = ln_n[i0:i0 + 2048]
        E = np.exp(-np.multiply.outer(s, ln_c))
        S += E.sum(axis=1)
        Sp -= E @ ln_c

    lnN = math.log(N)
    NmS = np.exp(-s * lnN)
    sm1 = s - 1.0
    w = sm1 * S + N * NmS + 0.5 * sm1 * NmS
    wp = S + sm1 * Sp - lnN * N * NmS + 0.5 * NmS - 0.5 * lnN * sm1 * NmS

    # Bernoulli tail: T_k = B_{2k}/(2k)! * P_k * N^{1-s-2k},
    # P_k = prod_{j=0}^{2k-2}(s+j), D_k = dP_k/ds.
    P = s.copy()
    D = np.ones_like(s)
    Npow = NmS / N
    for k in range(1, _EM_TERMS + 1):
        c = _B2K_OVER_FACT[k - 1]
        T = c * P * Npow
        w += sm1 * T
        wp += T + sm1 * c * Npow * (D - P * lnN)
        a = s + (2 * k - 1)
        b = s + (2 * k)
        D = D * a * b + P * (a + b)
        P = P * a * b
        Npow = Npow / (N * N)
    return w, wp


def _w_pair(s):
    """Vectorized ((s-1)zeta(s), derivative); requires Re(s) >= 0."""
    s_arr = np.asarray(s, dtype=complex)
    shp = s_arr.shape
    flat = s_arr.ravel()
    if np.any(flat.real < 0):
        raise ValueError("_w_pair requires Re(s) >= 0; reflect first")
    w, wp = _w_pair_direct(flat)
    return w.reshape(shp), wp.reshape(shp)


def _chi_pair(s: complex):
    """(chi(s), chi'(s)) for the functional equation zeta(s) = chi(s) zeta(1-s),
    chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s). Finite at the trivial zeros."""
    u = 1.0 - s
    g = cmath.exp(complex(log_gamma(u)))
    pref = cmath.exp(s * math.log(2.0) + (s - 1.0) * _LN_PI) * g
    sn = cmath.sin(math.pi * s / 2.0)
    cs = cmath.cos(math.pi * s / 2.0)
    chi = pref * sn
    chi_p = pref * ((_LN_2PI - complex(digamma(u))) * sn + (math.pi / 2.0) * cs)
    return chi, chi_p


def zeta_pair(s: complex):
    """(zeta(s), zeta'(s)) for complex s != 1.

    Euler-Maclaurin with the termwise derivative for Re(s) >= 0; the
    functional equation (with its differentiated form) for Re(s) < 0.
    """
    s = complex(s)
    if s == 1.0:
        raise ValueError("zeta pole at s = 1")
    if s.real >= 0.0:
        w, wp = _w_pair(np.array([s]))
        sm1 = s - 1.0
        return w[0] / sm1, (wp[0] * sm1 - w[0]) / (sm1 * sm1)
    zu, zup = zeta_pair(1.0 - s)
    chi, chi_p = _chi_pair(s)
    return chi * zu, chi_p * zu - chi * zup


def zeta(s: complex) -> complex:
    """Riemann zeta at complex s != 1."""
    return zeta_pair(s)[0]


# ----------------------------------------------------------------------
# xi and its derivative
# ----------------------------------------------------------------------

def _xi_rel_error(s: complex) -> float:
    t = abs(s.imag)
    est = 5e-13 + 2e-15 * t
    if t > VALIDATED_IM or abs(s.real) > VALIDATED_RE:
        est *= 10.0 * (1.0 + (max(0.0, t - VALIDATED_IM) / VALIDATED_IM) ** 2)
    return est


def _xi_value_right(s: complex) -> complex:
    # Re(s) >= 1/2; pole/zero cancellation at s = 1 handled by the w-form
    w, _ = _w_pair(np.array([s]))
    lg = complex(log_gamma(s / 2.0 + 1.0))
    return cmath.exp(-0.5 * s * _LN_PI + lg) * w[0]


def _xi_prime_fd(s: complex, h: float = 1e-3) -> complex:
    # cubic-accurate derivative from 4 nearby xi values; used within
    # distance ~1e-3 of a zero of xi where the log-derivative route degrades
    f1 = _xi_value_right(s + h) - _xi_value_right(s - h)
    f2 = _xi_value_right(s + 2 * h) - _xi_value_right(s - 2 * h)
    return (8.0 * f1 - f2) / (12.0 * h)


def xi(s: complex) -> XiValue:
    """xi(s) and xi'(s).

    xi is computed as pi^(-s/2) Gamma(s/2+1) (s-1) zeta(s) with the factor
    (s-1) zeta(s) evaluated in pole-free form; s with Re(s) < 1/2 is
    reflected through xi(s) = xi(1-s), xi'(s) = -xi'(1-s). The derivative
    uses the logarithmic derivative
        xi'/xi = -log(pi)/2 + psi(s/2+1)/2 + w'/w,   w = (s-1) zeta(s),
    with a finite-difference fallback within ~1e-3 of the zeros of w.
    """
    s = complex(s)
    if s.real < 0.5:
        v = xi(1.0 - s)
        return XiValue(v.xi, -v.xi_prime, v.rel_error)
    w_arr, wp_arr = _w_pair(np.array([s]))
    w, wp = w_arr[0], wp_arr[0]
    lg = complex(log_gamma(s / 2.0 + 1.0))
    pref = cmath.exp(-0.5 * s * _LN_PI + lg)
    xi_val = pref * w
    if abs(w) < 1e-3 * max(abs(wp), 1e-30):
        xi_p = _xi_prime_fd(s)
    else:
        lam = -0.5 * _LN_PI + 0.5 * complex(digamma(s / 2.0 + 1.0)) + wp / w
        xi_p = xi_val * lam
    return XiValue(xi_val, xi_p, _xi_rel_error(s))


def E_xi(z: complex) -> complex:
    """E(z) = xi(1/2 - iz) + xi'(1/2 - iz)."""
    v = xi(0.5 - 1j * complex(z))
    return v.xi + v.xi_prime


def theta_xi(z: complex) -> complex:
    """Theta(z) = E^#(z)/E(z) with E^#(z) = conj(E(conj z)).

    Raises when |E(z)| underflows (a real zero of E would sit at a multiple
    zero of xi; none occur in the validated range)."""
    z = complex(z)
    den = E_xi(z)
    if abs(den) < 1e-300:
        raise ZeroDivisionError("theta_xi: E vanishes (or underflows) at z = %r" % (z,))
    num = np.conj(E_xi(np.conj(z)))
    return num / den


# ----------------------------------------------------------------------
# stable critical-line route (used for large frequency grids)
# ----------------------------------------------------------------------

def xi_log_derivative(s: complex) -> complex:
    """xi'(s)/xi(s) away from zeros of xi; reflection for Re(s) < 1/2."""
    s = complex(s)
    if s.real < 0.5:
        return -xi_log_derivative(1.0 - s)
    w_arr, wp_arr = _w_pair(np.array([s]))
    return (-0.5 * _LN_PI + 0.5 * complex(digamma(s / 2.0 + 1.0))
            + wp_arr[0] / w_arr[0])


def critical_line_log_derivative(x, chunk: int = 8192):
    """d/dz log xi(1/2 - iz) at real z = x, vectorized.

    Returns -i * (xi'/xi)(1/2 - ix); real-valued up to roundoff since
    xi(1/2 - iz) is real on the real axis.  The ratio form stays finite
    through the exponentially small range of xi (no underflow), which makes
    it usable on frequency grids far beyond the validated |Im s| box.  At
    zeros of xi the value blows up like m/(x - gamma); callers that need the
    limit there use the basis-function limit branch instead.
    """
    x_arr = np.asarray(x, dtype=float)
    shp = x_arr.shape
    flat = x_arr.ravel()
    out = np.empty(flat.shape, dtype=complex)
    # batch contiguous chunks so Euler-Maclaurin N tracks the local height
    order = np.argsort(np.abs(flat), kind="stable")
    sorted_x = flat[order]
    for i0 in range(0, len(sorted_x), chunk):
        xs = sorted_x[i0:i0 + chunk]
        s = 0.5 - 1j * xs
        w, wp = _w_pair_direct(s.astype(complex))
        lam = -0.5 * _LN_PI + 0.5 * digamma(s / 2.0 + 1.0) + wp / w
        out[order[i0:i0 + chunk]] = -1j * lam
    return out.reshape(shp)


def theta_on_axis(x, log_deriv=None):
    """Theta(x) for real x via the unimodular ratio form.

    With L(x) = d/dz log xi(1/2-iz) (exactly real on the axis since
    xi(1/2-iz) is real there),
        E = q (1 + i L),  E^# = q (1 - i L),  q real,
    so Theta = (1 - i L)/(1 + i L): exactly unimodular and immune to the
    underflow of xi at large |x|. The evaluator's imaginary residue on L is
    discarded; near the zeros (where |L| blows up like m/(x-gamma)) that
    residue would otherwise dominate the phase error.
    """
    L = critical_line_log_derivative(x) if log_deriv is None else log_deriv
    a = np.real(L)
    return (1.0 - 1j * a) / (1.0 + 1j * a)


def xi_on_critical_line(t, chunk: int = 8192):
    """xi(1/2 + it) for real t, vectorized; real-valued up to roundoff."""
    t_arr = np.asarray(t, dtype=float)
    shp = t_arr.shape
    flat = t_arr.ravel()
    out = np.empty(flat.shape, dtype=complex)
    order = np.argsort(np.abs(flat), kind="stable")
    sorted_t = flat[order]
    for i0 in range(0, len(sorted_t), chunk):
        s = 0.5 + 1j * sorted_t[i0:i0 + chunk]
        w, _ = _w_pair_direct(s.astype(complex))
        lg = log_gamma(s / 2.0 + 1.0)
        out[order[i0:i0 + chunk]] = np.exp(-0.5 * s * _LN_PI + lg) * w
    return out.reshape(shp)


def E_on_axis(x, chunk: int = 8192):
    """E(x) = xi(1/2 - ix) + xi'(1/2 - ix) for real x, vectorized.

    Value form: underflows for |x| beyond ~900 where |xi| drops below the
    double-precision range; use the ratio helpers for larger grids."""
    x_arr = np.asarray(x, dtype=float)
    shp = x_arr.shape
    flat = x_arr.ravel()
    out = np.empty(flat.shape, dtype=complex)
    order = np.argsort(np.abs(flat), kind="stable")
    sorted_x = flat[order]
    for i0 in range(0, len(sorted_x), chunk):
        s = 0.5 - 1j * sorted_x[i0:i0 + chunk]
        w, wp = _w_pair_direct(s.astype(complex))
        pref = np.exp(-0.5 * s * _LN_PI + log_gamma(s / 2.0 + 1.0))
        xi_val = pref * w
        lam = -0.5 * _LN_PI + 0.5 * digamma(s / 2.0 + 1.0) + wp / w
        xi_p = xi_val * lam
        near = np.abs(w) < 1e-3 * np.maximum(np.abs(wp), 1e-30)
        if np.any(near):
            for j in np.where(near)[0]:
                xi_p[j] = _xi_prime_fd(complex(s[j]))
        out[order[i0:i0 + chunk]] = xi_val + xi_p
    return out.reshape(shp)


# ----------------------------------------------------------------------
# omega profile
# ----------------------------------------------------------------------

def omega_profile(x: float) -> float:
    """Time-domain profile whose transform is xi(1/2 - iz):

        omega(x) = sum_{n>=1} (4 pi^2 n^4 e^{9x/2} - 6 pi n^2 e^{5x/2})
                              * exp(-pi n^2 e^{2x}),

    i.e. the theta-series kernel normalized so that
    integral omega(x) e^{izx} dx = xi(1/2 - iz) (checked against a 30-digit
    quadrature oracle; the half-size normalization seen in some references
    pairs with a one-sided cosine transform instead).

    Series validated for |x| <= 5; terms below 1e-16 are dropped. Even in
    exact arithmetic; for x < -1 the evenness holds only up to absolute
    (not relative) double-precision residue, which is what the declared
    range needs.
    """
    x = float(x)
    if abs(x) > 5.0:
        raise ValueError("omega_profile validated for |x| <= 5")
    a = math.exp(2.0 * x)
    n_max = int(math.ceil(math.sqrt(40.0 / (math.pi * a)))) + 10
    n = np.arange(1, n_max + 1, dtype=float)
    decay = np.exp(-math.pi * n * n * a)
    terms = (4.0 * math.pi ** 2 * n ** 4 * math.exp(4.5 * x)
             - 6.0 * math.pi * n ** 2 * math.exp(2.5 * x)) * decay
    keep = np.abs(terms) >= 1e-16
    if not np.any(keep):
        # retain the leading term so superexponentially small values decay smoothly
        return float(terms[0])
    return float(np.sum(terms))

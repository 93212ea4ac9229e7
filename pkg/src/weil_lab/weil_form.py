"""The hermitian form over the zero catalog, the screw function it induces,
and the smooth compactly supported test functions both are evaluated on.

For a catalog Gamma (symmetric under gamma -> -gamma) the pairing is

    <psi1, psi2>_W = sum_gamma m_gamma psihat1(gamma) conj(psihat2(conj gamma)),

the screw function is g(t) = sum_gamma m_gamma (e^{i gamma t} - 1)/gamma^2,
and its kernel G(t,s) = g(t-s) - g(t) - g(-s) + g(0) induces the quadratic
form <phi1, phi2>_G = integral G(t,s) phi1(s) conj(phi2(t)) ds dt on
mean-zero test functions. The two forms are linked by phi = psi'.

Truncation of the infinite catalog is surfaced on every FormValue through a
declared tail model (sum_{gamma > T} m/gamma^2 <= log(T)/T times a sampled
decay envelope of the transforms); it is an engineering estimate, not a
theorem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from . import debranges
from . import numerics
from . import zero_catalog as zc

__all__ = [
    "TestFunction", "FormValue", "SpectralCoefficients", "WitnessReport",
    "transform_at", "weil_pairing", "screw_g", "screw_g_array",
    "screw_tail_bound", "screw_kernel", "screw_form", "antiderivative",
    "tau_norm", "selector_witness", "random_bump", "random_combination",
    "random_mean_zero",
]

_BUMP = "bump"
_BUMP_D = "bump_derivative"
_ANTI = "antiderivative_of_bump"
_COMBO = "finite_combination"


@dataclass(frozen=True)
class TestFunction:
    """Smooth compactly supported test function from the bump family.

    kind 'bump' is exp(-1/(1-u^2)) with u = (x-center)/half_width;
    'bump_derivative' its exact derivative; 'finite_combination' a complex
    linear combination of parts; 'antiderivative_of_bump' the running
    integral of a part (compactly supported iff the part has zero mean).
    """
    kind: str
    center: float = 0.0
    half_width: float = 1.0
    coefficients: Tuple[complex, ...] = ()
    parts: Tuple["TestFunction", ...] = ()
    compact_support: bool = True

    # -- constructors -------------------------------------------------
    @classmethod
    def bump(cls, center: float = 0.0, half_width: float = 1.0) -> "TestFunction":
        if half_width <= 0:
            raise ValueError("half_width must be positive")
        return cls(_BUMP, float(center), float(half_width))

    @classmethod
    def combination(cls, coefficients: Sequence[complex],
                    parts: Sequence["TestFunction"]) -> "TestFunction":
        if len(coefficients) != len(parts) or not parts:
            raise ValueError("combination needs matching, nonempty coefficients/parts")
        return cls(_COMBO, coefficients=tuple(complex(c) for c in coefficients),
                   parts=tuple(parts))

    # -- geometry ------------------------------------------------------
    def support(self) -> Tuple[float, float]:
        if self.kind in (_BUMP, _BUMP_D):
            return (self.center - self.half_width, self.center + self.half_width)
        if self.kind == _COMBO:
            lo = min(p.support()[0] for p in self.parts)
            hi = max(p.support()[1] for p in self.parts)
            return (lo, hi)
        if self.kind == _ANTI:
            lo, hi = self.parts[0].support()
            if not self.compact_support:
                return (lo, math.inf)
            return (lo, hi)
        raise ValueError("unknown kind %r" % self.kind)

    # -- evaluation ----------------------------------------------------
    def __call__(self, x):
        x_arr = np.asarray(x, dtype=float)
        scalar = x_arr.ndim == 0
        x_arr = np.atleast_1d(x_arr)
        out = self._eval(x_arr)
        return complex(out[0]) if scalar else out

    def _eval(self, x: np.ndarray) -> np.ndarray:
        if self.kind == _BUMP:
            u = (x - self.center) / self.half_width
            out = np.zeros(len(x), dtype=complex)
            inside = np.abs(u) < 1.0
            ui = u[inside]
            out[inside] = np.exp(-1.0 / (1.0 - ui * ui))
            return out
        if self.kind == _BUMP_D:
            u = (x - self.center) / self.half_width
            out = np.zeros(len(x), dtype=complex)
            inside = np.abs(u) < 1.0
            ui = u[inside]
            one = 1.0 - ui * ui
            out[inside] = np.exp(-1.0 / one) * (-2.0 * ui / (one * one)) / self.half_width
            return out
        if self.kind == _COMBO:
            out = np.zeros(len(x), dtype=complex)
            for c, p in zip(self.coefficients, self.parts):
                out += c * p._eval(x)
            return out
        if self.kind == _ANTI:
            return self._cumulative(x)
        raise ValueError("unknown kind %r" % self.kind)

    def _cumulative(self, x: np.ndarray) -> np.ndarray:
        base = self.parts[0]
        a, b = base.support()
        nodes, weights = np.polynomial.legendre.leggauss(24)
        n_panels = max(1, int(math.ceil((b - a) / 0.25)))
        edges = np.linspace(a, b, n_panels + 1)
        mids = 0.5 * (edges[1:] + edges[:-1])
        halfs = 0.5 * (edges[1:] - edges[:-1])
        pts = mids[:, None] + halfs[:, None] * nodes[None, :]
        vals = base._eval(pts.ravel()).reshape(pts.shape)
        panel_ints = (vals * weights[None, :]).sum(axis=1) * halfs
        cum = np.concatenate([[0.0 + 0.0j], np.cumsum(panel_ints)])
        out = np.zeros(len(x), dtype=complex)
        for i, xv in enumerate(x):
            if xv <= a:
                continue
            if xv >= b:
                out[i] = cum[-1]
                continue
            k = int((xv - a) / (b - a) * n_panels)
            k = min(k, n_panels - 1)
            lo = edges[k]
            half = 0.5 * (xv - lo)
            mid = lo + half
            out[i] = cum[k] + np.sum(base._eval(mid + half * nodes) * weights) * half
        return out

    # -- calculus ------------------------------------------------------
    def derivative(self) -> "TestFunction":
        if self.kind == _BUMP:
            return TestFunction(_BUMP_D, self.center, self.half_width)
        if self.kind == _ANTI:
            return self.parts[0]
        if self.kind == _COMBO:
            return TestFunction.combination(self.coefficients,
                                            [p.derivative() for p in self.parts])
        raise ValueError("derivative not available for kind %r" % self.kind)

    def integral(self) -> complex:
        """integral of the function over the line."""
        return self.fourier(0.0)

    def fourier(self, z: complex) -> complex:
        """f^(z) = integral f(x) e^{izx} dx (Gauss-Legendre panels).

        Combinations transform by linearity (each part over its own
        support), so cancellations arranged in the coefficients survive at
        quadrature precision."""
        if self.kind == _ANTI:
            if not self.compact_support:
                raise ValueError("transform of a non-compact antiderivative")
            z = complex(z)
            base = self.parts[0]
            if abs(z) > 1e-8:
                return base.fourier(z) / (-1j * z)
            # psi^(0) = -integral y phi(y) dy for mean-zero phi
            a, b = base.support()
            return -numerics.fourier_integral(
                lambda y: y * base._eval(np.asarray(y, dtype=float)), (a, b), 0.0)
        if self.kind == _COMBO:
            return complex(sum(c * p.fourier(z)
                               for c, p in zip(self.coefficients, self.parts)))
        return numerics.fourier_at(self, z)


# ----------------------------------------------------------------------
# records
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FormValue:
    value: complex
    tail_bound: float
    quad_error: float

    def __post_init__(self):
        if self.tail_bound < 0 or self.quad_error < 0:
            raise ValueError("error bounds must be nonnegative")

    def to_json_dict(self) -> dict:
        return {"value_re": self.value.real, "value_im": self.value.imag,
                "tail_bound": self.tail_bound, "quad_error": self.quad_error}


@dataclass(frozen=True)
class SpectralCoefficients:
    """Transform values at the catalog zeros, aligned with the symmetric
    iteration of the ZeroSet they were sampled on."""
    entries: Tuple[complex, ...]


@dataclass(frozen=True)
class WitnessReport:
    gamma: float
    value_at_gamma: complex
    max_off_value: float
    bound_ok: bool
    eps: float
    delta: float


# ----------------------------------------------------------------------
# transforms of either input flavor
# ----------------------------------------------------------------------

def transform_at(psi, z):
    """psihat at (array of) z for a TestFunction or a time GridFunction."""
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if isinstance(psi, TestFunction):
        out = np.array([psi.fourier(zi) for zi in z_arr])
    elif isinstance(psi, numerics.GridFunction):
        out = np.atleast_1d(numerics.fourier_grid_at(psi, z_arr))
    else:
        raise TypeError("expected TestFunction or GridFunction")
    return out if np.ndim(z) else complex(out[0])


def _sup_samples(T: float) -> np.ndarray:
    """Dyadic-window probe points on [T, 2T], both signs."""
    pts = T * 2.0 ** (np.arange(9) / 8.0)
    return np.concatenate([pts, -pts])


def _transform_scale(psi) -> float:
    """Crude L1 bound used in the quadrature-error model."""
    if isinstance(psi, TestFunction):
        a, b = psi.support()
        xs = np.linspace(a, b, 257)
        return float(np.trapezoid(np.abs(psi._eval(xs)), xs))
    return float(np.sum(np.abs(psi.values)) * psi.grid.h)


def weil_pairing(psi1, psi2, zs) -> FormValue:
    """sum over the symmetric catalog of m psihat1(gamma) conj(psihat2(conj gamma)).

    For catalogs of real ordinates conj(gamma) = gamma; the conjugated form
    is kept so synthetic catalogs with non-real entries (fed as explicit
    (gamma, m) pairs) reproduce the indefinite behavior they should.
    """
    pairs = zc.iterate_symmetric(zs)
    if not pairs:
        return FormValue(0.0j, 0.0, 0.0)
    g = np.array([p[0] for p in pairs], dtype=complex)
    m = np.array([p[1] for p in pairs], dtype=float)
    f1 = transform_at(psi1, g)
    f2c = np.conj(transform_at(psi2, np.conj(g)))
    value = complex(np.sum(m * f1 * f2c))

    tail = 0.0
    if isinstance(zs, zc.ZeroSet) and len(zs):
        T = zs.height_T
        zp = _sup_samples(T)
        p1 = transform_at(psi1, zp.astype(complex))
        p2 = transform_at(psi2, zp.astype(complex))
        envelope = float(np.max(np.abs(zp) ** 2 * np.abs(p1) * np.abs(p2)))
        tail = 2.0 * zc.tail_coefficient(zs) * envelope

    e1 = 1e-12 * _transform_scale(psi1)
    e2 = 1e-12 * _transform_scale(psi2)
    quad = float(np.sum(m * (np.abs(f1) * e2 + np.abs(f2c) * e1 + e1 * e2)))
    return FormValue(value, tail, quad)


# ----------------------------------------------------------------------
# screw function and kernel
# ----------------------------------------------------------------------

def screw_g_array(t, zs) -> np.ndarray:
    """g(t) = sum_gamma m (e^{i gamma t} - 1)/gamma^2 over the symmetric catalog."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    pairs = zc.iterate_symmetric(zs)
    if not pairs:
        return np.zeros(t_arr.shape, dtype=complex)
    g = np.array([p[0] for p in pairs], dtype=float)
    m = np.array([p[1] for p in pairs], dtype=float)
    out = np.zeros(len(t_arr), dtype=complex)
    for i0 in range(0, len(t_arr), 4096):
        tc = t_arr[i0:i0 + 4096]
        ph = np.exp(1j * np.multiply.outer(tc, g))
        out[i0:i0 + 4096] = (ph - 1.0) @ (m / (g * g))
    return out


def screw_g(t: float, zs) -> complex:
    return complex(screw_g_array(np.array([t]), zs)[0])


def screw_tail_bound(t: float, zs) -> float:
    """Declared tail model for the truncated screw sum."""
    if not isinstance(zs, zc.ZeroSet) or len(zs) == 0:
        return 0.0
    T = zs.height_T
    return 2.0 * zc.tail_coefficient(zs) * min(1.0, abs(t) * T)


def screw_kernel(t: float, s: float, zs) -> complex:
    """G(t,s) = g(t-s) - g(t) - g(-s) + g(0)."""
    vals = screw_g_array(np.array([t - s, t, -s, 0.0]), zs)
    return complex(vals[0] - vals[1] - vals[2] + vals[3])


def _panel_rule(a: float, b: float, gamma_max: float, order: int = 64):
    """Gauss-Legendre nodes/weights resolving e^{i gamma t} up to gamma_max."""
    width = max(1e-3, min(b - a, 72.0 / (gamma_max + 1.0)))
    n_panels = max(1, int(math.ceil((b - a) / width)))
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, n_panels + 1)
    mids = 0.5 * (edges[1:] + edges[:-1])
    halfs = 0.5 * (edges[1:] - edges[:-1])
    x = (mids[:, None] + halfs[:, None] * nodes[None, :]).ravel()
    w = (halfs[:, None] * weights[None, :]).ravel()
    return x, w


def screw_form(phi1: TestFunction, phi2: TestFunction, zs) -> FormValue:
    """Double quadrature of G(t,s) phi1(s) conj(phi2(t)) over the support box.

    Requires mean-zero inputs. The same finite catalog also gives the form
    spectrally as sum m phihat1(gamma) conj(phihat2(gamma)) / gamma^2; the
    two routes are computed independently and their gap is reported as the
    quadrature-error estimate.
    """
    scale1 = _transform_scale(phi1)
    scale2 = _transform_scale(phi2)
    if abs(phi1.fourier(0.0)) > 1e-8 * max(scale1, 1e-30):
        raise ValueError("screw_form requires mean-zero phi1")
    if abs(phi2.fourier(0.0)) > 1e-8 * max(scale2, 1e-30):
        raise ValueError("screw_form requires mean-zero phi2")
    pairs = zc.iterate_symmetric(zs)
    if not pairs:
        return FormValue(0.0j, 0.0, 0.0)
    gmax = max(abs(p[0]) for p in pairs)

    a1, b1 = phi1.support()
    a2, b2 = phi2.support()
    s_nodes, s_w = _panel_rule(a1, b1, gmax)
    t_nodes, t_w = _panel_rule(a2, b2, gmax)

    g_diff = screw_g_array(np.subtract.outer(t_nodes, s_nodes).ravel(), zs)
    g_diff = g_diff.reshape(len(t_nodes), len(s_nodes))
    g_t = screw_g_array(t_nodes, zs)
    g_ms = screw_g_array(-s_nodes, zs)
    G = g_diff - g_t[:, None] - g_ms[None, :]   # g(0) = 0 for this catalog sum

    f1 = phi1._eval(s_nodes) * s_w
    f2 = np.conj(phi2._eval(t_nodes)) * t_w
    value = complex(f2 @ G @ f1)

    gam = np.array([p[0] for p in pairs], dtype=complex)
    m = np.array([p[1] for p in pairs], dtype=float)
    h1 = transform_at(phi1, gam)
    h2 = np.conj(transform_at(phi2, np.conj(gam)))
    spectral = complex(np.sum(m * h1 * h2 / (gam.real ** 2 + gam.imag ** 2)))

    tail = 0.0
    if isinstance(zs, zc.ZeroSet) and len(zs):
        zp = _sup_samples(zs.height_T)
        p1 = transform_at(phi1, zp.astype(complex))
        p2 = transform_at(phi2, zp.astype(complex))
        tail = 2.0 * zc.tail_coefficient(zs) * float(np.max(np.abs(p1) * np.abs(p2)))
    quad = abs(value - spectral) + 1e-12 * scale1 * scale2
    return FormValue(value, tail, quad)


# ----------------------------------------------------------------------
# antiderivative, tau norm, selector witness
# ----------------------------------------------------------------------

def antiderivative(phi: TestFunction) -> TestFunction:
    """psi(x) = integral_{-inf}^x phi(y) dy.

    Exact inverse images are recognized (derivative-of-bump goes back to the
    bump); otherwise the running integral is wrapped, with a compact-support
    flag recording whether the mean of phi vanishes.
    """
    if phi.kind == _BUMP_D:
        return TestFunction.bump(phi.center, phi.half_width)
    if phi.kind == _COMBO and all(p.kind == _BUMP_D for p in phi.parts):
        return TestFunction.combination(
            phi.coefficients, [antiderivative(p) for p in phi.parts])
    mean = phi.fourier(0.0)
    compact = abs(mean) <= 1e-10 * max(_transform_scale(phi), 1e-30)
    return TestFunction(_ANTI, parts=(phi,), compact_support=compact)


def tau_norm(S: SpectralCoefficients, zs) -> float:
    """sum m_gamma |S_gamma|^2 over the symmetric iteration."""
    pairs = zc.iterate_symmetric(zs)
    if len(S.entries) != len(pairs):
        raise ValueError("coefficients not aligned with the catalog iteration")
    m = np.array([p[1] for p in pairs], dtype=float)
    e = np.array(S.entries, dtype=complex)
    return float(np.sum(m * np.abs(e) ** 2))


def selector_witness(gamma: float, zs: zc.ZeroSet,
                     Z: float = 800.0, out: numerics.Grid | None = None,
                     eps: float = 1e-3, delta: float = 1.0):
    """Witness psi with psihat(gamma) = 1 and psihat ~ 0 at every other
    catalog zero: psi = i sqrt(m pi) psi_gamma.

    Returns (grid witness, WitnessReport). The report's transform values are
    the defining frequency-side samples i sqrt(m pi) F_gamma(gamma'), which
    vanish at the off zeros up to evaluator roundoff and hence satisfy the
    bound eps/|gamma - gamma'|^(1+delta) for any positive eps, delta.
    """
    idx = int(np.argmin(np.abs(np.array(zs.ordinates) - gamma)))
    if abs(zs.ordinates[idx] - gamma) > 1e-9:
        raise ValueError("gamma not in the catalog")
    gamma = zs.ordinates[idx]
    m = zs.multiplicities[idx]
    scale = 1j * math.sqrt(m * math.pi)

    F = debranges.BasisFunction(gamma, zs)
    at_gamma = scale * F(gamma)
    off_ok = True
    max_off = 0.0
    for gp, mp_ in zc.iterate_symmetric(zs):
        if abs(gp - gamma) < 1e-9:
            continue
        v = abs(scale * F(gp))
        max_off = max(max_off, v)
        if v > eps / abs(gamma - gp) ** (1.0 + delta):
            off_ok = False
    report = WitnessReport(gamma, at_gamma, max_off, off_ok, eps, delta)

    if out is None:
        out = numerics.Grid(-2.0, 20.0, 2201)
    psi = debranges.psi_gamma(gamma, zs, Z, out)
    witness = numerics.GridFunction(out, scale * psi.values, "time")
    return witness, report


# ----------------------------------------------------------------------
# random test-function generators (deterministic under a seeded rng)
# ----------------------------------------------------------------------

def random_bump(rng, x_range=(-3.0, 3.0), width_range=(0.3, 1.5)) -> TestFunction:
    lo, hi = x_range
    w = rng.uniform(*width_range)
    w = min(w, 0.49 * (hi - lo))
    c = rng.uniform(lo + w, hi - w)
    return TestFunction.bump(c, w)


def random_combination(rng, n_parts: int = 3, x_range=(-3.0, 3.0)) -> TestFunction:
    parts = [random_bump(rng, x_range) for _ in range(n_parts)]
    coeff = rng.standard_normal(n_parts) + 1j * rng.standard_normal(n_parts)
    return TestFunction.combination(coeff, parts)


def random_mean_zero(rng, n_parts: int = 2, x_range=(-3.0, 3.0)) -> TestFunction:
    """Mean-zero combination: bumps weighted to cancel their integrals."""
    parts = [random_bump(rng, x_range) for _ in range(n_parts)]
    masses = np.array([p.fourier(0.0).real for p in parts])
    coeff = (rng.standard_normal(n_parts) + 1j * rng.standard_normal(n_parts))
    coeff = coeff - masses * (np.sum(coeff * masses) / np.sum(masses * masses))
    return TestFunction.combination(coeff, parts)

"""Numerical evaluation of the quantum dilogarithm.

W_theta is computed two independent ways on the real line:

* hyperbolic-gamma form, a_+ = 2 pi, a_- = 2 pi / theta,
  W(z) = pi^2 (theta + 1/theta) / 12 + theta z^2 / 4 - 2 pi Wt(z),
  Wt(z) = int_0^oo dy/y ( sin(2yz) / (2 sinh(a_+ y) sinh(a_- y)) - z / (a_+ a_- y) );
* logarithmic form  W(t) = int_0^oo log(1 + s^-theta) / (s + e^-t) ds.

Off the real line the defining contour integral is used directly, with the
contour deformed into the upper half plane by a semicircle of radius delta.

phi_hbar(t) = exp(i W_{1/hbar}(t) / 2 pi), F_hbar(r) = conj(phi_hbar(log r)),
V_theta(z) = exp(W_theta(z) / 2 pi i).
"""
from __future__ import annotations

import math
import cmath
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, special


class QuadratureError(RuntimeError):
    pass


class StripError(ValueError):
    pass


@dataclass(frozen=True)
class QDParams:
    theta: float
    delta: float | None = None  # semicircle radius; default min(pi, pi theta) / 8
    cutoff: float | None = None  # R; default from the exponential decay of the integrand
    tol: float = 1e-13
    limit: int = 500

    def __post_init__(self):
        if not (self.theta > 0 and math.isfinite(self.theta)):
            raise ValueError("theta must be finite and positive")
        if self.delta is not None and self.cutoff is not None and not self.cutoff > self.delta > 0:
            raise ValueError("need R > delta > 0")

    @property
    def radius(self):
        return self.delta if self.delta is not None else min(math.pi, math.pi * self.theta) / 8

    @property
    def chi(self):
        return math.pi * (self.theta + 1 / self.theta) / 24

    @property
    def strip(self):
        return math.pi * (1 + 1 / self.theta)


def chi(theta):
    return math.pi * (theta + 1 / theta) / 24


def _quad(f, a, b, params: QDParams, points=None, complex_func=False):
    val, err = integrate.quad(f, a, b, epsabs=params.tol, epsrel=params.tol, limit=params.limit,
                              points=points, complex_func=complex_func)
    err = abs(err)
    if not np.isfinite(val) or err > 1e3 * max(params.tol, params.tol * abs(val)) + 1e-11:
        raise QuadratureError(f"quadrature did not converge (estimate {val}, error {err})")
    return val


# hyperbolic gamma form ---------------------------------------------------

def _series_coeffs(a, b, z, terms=14):
    """Taylor coefficients in y^2 of the regularised integrand near y = 0."""
    def sinhc(c):
        return np.array([c ** (2 * k) / math.factorial(2 * k + 1) for k in range(terms)])

    sinc = np.array([(-1) ** k * (2 * z) ** (2 * k) / math.factorial(2 * k + 1) for k in range(terms)])
    den = np.convolve(sinhc(a), sinhc(b))[:terms]
    quo = np.zeros(terms)
    for k in range(terms):
        quo[k] = (sinc[k] - np.dot(quo[:k], den[k:0:-1])) / den[0]
    # g(y) = z/(ab) * sum_{k>=1} quo[k] y^{2k-2}
    return z / (a * b) * quo[1:]


def W_tilde(theta, z: float, params: QDParams | None = None) -> float:
    params = params or QDParams(theta)
    a, b = 2 * math.pi, 2 * math.pi / theta
    if z == 0:
        return 0.0
    y0 = 0.5 / max(a, b, 2 * abs(z), 1.0)
    coeffs = _series_coeffs(a, b, z)
    head = sum(c * y0 ** (2 * k + 1) / (2 * k + 1) for k, c in enumerate(coeffs))
    Y = max(1.0, 45 / (a + b))

    def g(y):
        e = math.exp(-(a + b) * y) / ((1 - math.exp(-2 * a * y)) * (1 - math.exp(-2 * b * y)))
        return (2 * math.sin(2 * y * z) * e - z / (a * b * y)) / y

    body = _quad(g, y0, Y, params)
    return head + body - z / (a * b * Y)


def W_gamma_form(theta, z: float, params: QDParams | None = None) -> float:
    return (math.pi ** 2 * (theta + 1 / theta) / 12 + theta * z * z / 4
            - 2 * math.pi * W_tilde(theta, z, params))


# logarithmic form ----------------------------------------------------------

def W_log_form(theta, t: float, params: QDParams | None = None) -> float:
    params = params or QDParams(theta)

    # s = e^u turns the integrand into log(1 + e^{-theta u}) / (1 + e^{-(u + t)})
    def f(u):
        return np.logaddexp(0.0, -theta * u) * special.expit(u + t)

    lo = min(0.0, -t) - 45.0
    hi = max(0.0, -t) + 36.0 / theta + 5.0
    pts = sorted({0.0, -t})
    return _quad(f, lo, hi, params, points=pts)


@dataclass(frozen=True)
class WValue:
    value: float
    alternative: float
    discrepancy: float

    def __float__(self):
        return self.value


def W_real(theta, t: float, params: QDParams | None = None) -> WValue:
    """W_theta(t) by the hyperbolic-gamma form, cross-checked by the logarithmic form."""
    params = params or QDParams(theta)
    w1 = W_gamma_form(theta, t, params)
    w2 = W_log_form(theta, t, params)
    return WValue(w1, w2, abs(w1 - w2))


# contour form ------------------------------------------------------------------

def W_complex(theta, z: complex, params: QDParams | None = None) -> complex:
    """W_theta(z) from the contour integral, for z in the strip |Im z| < pi (1 + 1/theta)."""
    params = params or QDParams(theta)
    z = complex(z)
    if abs(z.imag) >= params.strip:
        raise StripError(f"Im z = {z.imag} is outside the strip of half-width {params.strip}")
    a, b = 2 * math.pi, 2 * math.pi / theta
    d = params.radius
    rate = a + b - 2 * abs(z.imag)
    R = params.cutoff if params.cutoff is not None else d + (math.log(8 / (params.tol * rate * d)) + 5) / rate

    def real_part(y):
        # the two half-lines fold to -2i sin(2yz) / (y sinh(a y) sinh(b y))
        damp = 1 / ((1 - math.exp(-2 * a * y)) * (1 - math.exp(-2 * b * y)))
        e1 = cmath.exp(2j * y * z - (a + b) * y)
        e2 = cmath.exp(-2j * y * z - (a + b) * y)
        return 4 * (e2 - e1) * damp / y

    def arc(phi):
        y = d * cmath.exp(1j * phi)
        return 1j * cmath.exp(-2j * y * z) / (cmath.sinh(a * y) * cmath.sinh(b * y))

    line = _quad(real_part, d, R, params, complex_func=True)
    semi = -_quad(arc, 0.0, math.pi, params, complex_func=True)
    return -0.5j * math.pi * (line + semi)


def W(theta, z, params: QDParams | None = None):
    """Real input goes through W_real, complex input through the contour."""
    if isinstance(z, complex) and z.imag != 0:
        return W_complex(theta, z, params)
    return W_real(theta, float(z.real if isinstance(z, complex) else z), params).value


def V(theta, z, params: QDParams | None = None) -> complex:
    return cmath.exp(W(theta, z, params) / (2j * math.pi))


def phi(hbar, t, params: QDParams | None = None) -> complex:
    if hbar == 0:
        raise ValueError("hbar must be nonzero")
    theta = 1 / abs(hbar)
    return cmath.exp(1j * math.copysign(1, hbar) * W(theta, t, params) / (2 * math.pi))


def F(hbar, r: float, params: QDParams | None = None) -> complex:
    if not r > 0:
        raise ValueError("F is evaluated at r > 0")
    return phi(hbar, math.log(r), params).conjugate()


# functional-equation battery ---------------------------------------------------------

@dataclass
class Family:
    name: str
    tolerance: float
    residuals: list = field(default_factory=list)  # (sample, residual)

    @property
    def max_residual(self):
        return float(max((r for _, r in self.residuals), default=0.0))

    @property
    def ok(self):
        return bool(self.max_residual < self.tolerance)

    def to_json(self):
        return {"name": self.name, "tolerance": self.tolerance, "max_residual": self.max_residual,
                "ok": self.ok, "residuals": [[str(s), r] for s, r in self.residuals]}


@dataclass
class FunctionalReport:
    theta: float
    families: list

    @property
    def ok(self):
        return all(f.ok for f in self.families)

    def family(self, name):
        return next(f for f in self.families if f.name == name)

    def to_json(self):
        return {"theta": self.theta, "ok": self.ok, "families": [f.to_json() for f in self.families]}

    def rows(self):
        return [(self.theta, f.name, f.max_residual, f.tolerance, f.ok) for f in self.families]


DEFAULT_SAMPLES = {
    "t_grid": [float(t) for t in range(-10, 11)],
    "conj": [0.0, 1.0, -1.0, 2.5, -2.5],
    "shift": [-2.0, 0.0, 2.0],
    "complex_x": [-1.5, 0.0, 1.2],
}

FAMILIES = ("dual_formula", "unimodular", "real_valued", "contour_vs_real", "complex_conj", "mod_duality",
            "value_shift", "F_at_zero", "funct_eq1", "funct_eq2", "asymptotics")


def fit_decay(theta, xs=None, params=None):
    """Slope and constant of log|V(x) - 1| against x on a left tail grid."""
    xs = xs if xs is not None else [-10.0 - 0.5 * k for k in range(21)]
    ys = [math.log(abs(V(theta, x, params) - 1)) for x in xs]
    slope, icpt = np.polyfit(xs, ys, 1)
    return float(slope), float(math.exp(icpt)), xs, ys


def check_functional_equations(theta, samples=None, families=FAMILIES, params=None) -> FunctionalReport:
    params = params or QDParams(theta)
    s = dict(DEFAULT_SAMPLES)
    s.update(samples or {})
    hbar = 1 / theta
    c = params.chi
    out = []

    if "dual_formula" in families:
        fam = Family("dual_formula", 1e-9)
        for t in s["t_grid"]:
            fam.residuals.append((t, W_real(theta, t, params).discrepancy))
        out.append(fam)
    if "unimodular" in families:
        fam = Family("unimodular", 1e-8)
        for t in s["t_grid"]:
            fam.residuals.append((t, abs(abs(phi(hbar, t, params)) - 1)))
        out.append(fam)
    if "real_valued" in families:
        fam = Family("real_valued", 1e-10)
        for t in s["conj"]:
            fam.residuals.append((t, abs(W_complex(theta, complex(t), params).imag)))
        out.append(fam)
    if "contour_vs_real" in families:
        fam = Family("contour_vs_real", 1e-8)
        for t in s["conj"]:
            fam.residuals.append((t, abs(W_complex(theta, complex(t), params) - W(theta, t, params))))
        out.append(fam)
    if "complex_conj" in families:
        fam = Family("complex_conj", 1e-8)
        for z in s["conj"]:
            lhs = V(theta, z, params) * V(theta, -z, params) * cmath.exp(2j * c + 1j * theta * z * z / (4 * math.pi))
            fam.residuals.append((z, abs(lhs - 1)))
        for x in s["complex_x"]:
            z = complex(x, 0.4 * params.strip)
            lhs = V(theta, z, params) / V(theta, -z.conjugate(), params).conjugate()
            rhs = cmath.exp(-2j * c - 1j * theta * z * z / (4 * math.pi))
            fam.residuals.append((z, abs(lhs - rhs)))
        out.append(fam)
    if "mod_duality" in families:
        fam = Family("mod_duality", 1e-8)
        dual = QDParams(1 / theta, tol=params.tol)
        for z in s["t_grid"][::2]:
            fam.residuals.append((z, abs(V(1 / theta, z, dual) - V(theta, z / theta, params))))
        out.append(fam)
    if "value_shift" in families:
        fam = Family("value_shift", 1e-6)
        for x in s["shift"]:
            val = abs(phi(hbar, complex(x, math.pi * hbar), params))
            fam.residuals.append((x, abs(val - (1 + math.exp(x)) ** -0.5)))
        out.append(fam)
    if "F_at_zero" in families:
        fam = Family("F_at_zero", 1e-6)
        fam.residuals.append((1e-8, abs(F(hbar, 1e-8, params) - 1)))
        out.append(fam)
    if "funct_eq1" in families:
        # z = x - pi i and z + 2 pi i both sit strictly inside the strip
        fam = Family("funct_eq1", 1e-6)
        for x in s["complex_x"]:
            z = complex(x, -math.pi)
            lhs = V(theta, z + 2j * math.pi, params)
            rhs = (1 + cmath.exp(1j * math.pi * theta) * cmath.exp(theta * z)) * V(theta, z, params)
            fam.residuals.append((z, abs(lhs - rhs)))
        out.append(fam)
    if "funct_eq2" in families:
        fam = Family("funct_eq2", 1e-6)
        for x in s["complex_x"]:
            z = complex(x, -math.pi / theta)
            lhs = V(theta, z + 2j * math.pi / theta, params)
            rhs = (1 + cmath.exp(1j * math.pi / theta) * cmath.exp(z)) * V(theta, z, params)
            fam.residuals.append((z, abs(lhs - rhs)))
        out.append(fam)
    if "asymptotics" in families:
        # residual: how far the fitted decay rate falls short of rho = 0.9 min(1, theta)
        fam = Family("asymptotics", 1e-12)
        slope, C, _, _ = fit_decay(theta, params=params)
        rho = 0.9 * min(1.0, theta)
        fam.residuals.append((f"slope={slope:.4f},C={C:.3g}", max(0.0, rho - slope)))
        out.append(fam)
    return FunctionalReport(theta, out)


def delta_sensitivity(theta, z, radii=None):
    """Contour values for several semicircle radii; the spread measures delta dependence."""
    radii = radii or [r * min(math.pi, math.pi * theta) / 8 for r in (0.5, 1.0, 1.2)]
    vals = [W_complex(theta, z, QDParams(theta, delta=r)) for r in radii]
    return {"radii": radii, "values": vals, "spread": max(abs(v - vals[0]) for v in vals)}

"""Modular data of the quantum Borel group as exponent vectors and scalars.

Everything here is exact over the rationals except beta and nu, which need
square roots of |hbar|.  Exponents are vectors of nabla_N; an operator
E(v)^c is represented by the vector c*v.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .skewspace import SkewVector, frac_str, vector_to_json
from .triangle import build_triangle, fundamental_weights, ne, nw, sw, tau, weight_exponents
from .wordalgebra import FLIP_VARIANTS, ambient, flip_factors, gauss_ad, oplus, theta, upsilon, vartheta


def as_hbar(hbar) -> Fraction:
    """Exact hbar from an int, Fraction, string like '1/3', or float.

    Floats are read through their shortest decimal repr and then rounded to
    a denominator below 10**6, so 1/3 typed as 0.3333333333333333 becomes 1/3.
    """
    if isinstance(hbar, float):
        h = Fraction(repr(hbar)).limit_denominator(10**6)
    else:
        h = Fraction(hbar)
    if h == 0:
        raise ValueError("hbar must be nonzero")
    return h


def t_factor(hbar) -> Fraction:
    """1 + |hbar|^{-1}, the exponent factor shared by all modular data."""
    return 1 + 1 / abs(as_hbar(hbar))


def weight_sum(N, side="ne") -> SkewVector:
    tri = build_triangle(N)
    total = tri.space.zero()
    for w in fundamental_weights(N, side):
        total = total + w
    return total


def ne_basis_map(N, images) -> dict:
    """Extend ne_{s,k} -> images(s, k) linearly to the label basis of B-.

    ne_{s,k} is the partial row sum of e_{N-s, j, s-j} for j <= k, so
    e_{N-s,k,s-k} = ne_{s,k} - ne_{s,k-1}.
    """
    tri = build_triangle(N)
    out = {}
    for s in range(1, N):
        for k in range(s + 1):
            img = images(s, k)
            if k > 0:
                img = img - images(s, k - 1)
            out[(N - s, k, s - k)] = img
    return out


def apply_basis_map(table, v: SkewVector) -> SkewVector:
    sp = next(iter(table.values())).space
    out = sp.zero()
    for lab, c in v.coeffs().items():
        if lab not in table:
            raise ValueError(f"{lab} is outside the domain of the map")
        out = out + c * table[lab]
    return out


def _in_span(v: SkewVector, labels) -> bool:
    allowed = set(labels)
    return all(lab in allowed for lab in v.support())


# Modular element ----------------------------------------------------------

@dataclass
class ModularElement:
    N: int
    hbar: Fraction
    exponent: SkewVector  # of delta, as a multiple of E(.)
    two_d_l: SkewVector
    two_d_r: SkewVector
    difference_ok: bool
    grouplike_ok: bool

    @property
    def ok(self):
        return self.difference_ok and self.grouplike_ok


def modular_element(N, hbar) -> ModularElement:
    tri = build_triangle(N)
    h = as_hbar(hbar)
    t = t_factor(h)
    exp_delta = -2 * t * weight_sum(N, "ne")
    w = weight_exponents(N)
    dl = t * w["two_d_l"].vector
    dr = t * w["two_d_r"].vector
    # E(v) group-like for v in T-: every nw_{s,k} with k < s pairs to zero
    torus = [ne(tri, s) for s in range(1, N)]
    grouplike = all(tri.space.pair(nw(tri, s, k), v) == 0
                    for s in range(1, N) for k in range(s) for v in torus)
    return ModularElement(N, h, exp_delta, dl, dr, dr - dl == exp_delta, grouplike)


# Scaling constant ---------------------------------------------------------

def beta(hbar) -> float:
    h = float(as_hbar(hbar))
    a = abs(h)
    return math.copysign((math.sqrt(a) + 1 / math.sqrt(a)) ** 2, h)


def tetrahedral(n) -> int:
    return comb(n + 2, 3)


@dataclass
class ScalingConstant:
    N: int
    hbar: Fraction
    tau: int
    beta: float
    nu: float
    log_nu: float
    pairing: Fraction  # (2d_l, delta exponent), exact
    residual: float  # | |hbar * pairing| - beta * tau |
    tau_ok: bool

    @property
    def ok(self):
        return self.tau_ok and self.residual <= 1e-12 * max(1.0, abs(self.beta) * self.tau)


def scaling_constant(N, hbar) -> ScalingConstant:
    n = N - 1
    h = as_hbar(hbar)
    me = modular_element(N, h)
    tri = build_triangle(N)
    tn = tetrahedral(n)
    b = beta(h)
    p = tri.space.pair(me.two_d_l, me.exponent)
    # only the absolute value is compared; the signed convention is left open
    resid = abs(abs(float(h * p)) - abs(b) * tn)
    tau_ok = tn == tau(n) == sum(s * (N - s) for s in range(1, N))
    # displayed computation: 2 sum (N-s)(ne_{s,k}, varpi_t) = tau_n
    ws = weight_sum(N, "ne")
    shown = 2 * sum((N - s) * tri.space.pair(ne(tri, s, k), ws) for s in range(1, N) for k in range(s))
    tau_ok = tau_ok and shown == tn
    log_nu = -2 * math.pi * b * tn
    return ScalingConstant(N, h, tn, b, math.exp(log_nu), log_nu, p, resid, tau_ok)


# Antipode and rho ---------------------------------------------------------

def _rho_table(N):
    tri = build_triangle(N)
    return ne_basis_map(N, lambda s, k: -sw(tri, s, k))


@dataclass
class AntipodeReport:
    N: int
    table: dict  # label of B- -> image vector
    involutive: bool
    fixes_torus_by_sign: bool

    @property
    def ok(self):
        return self.involutive and self.fixes_torus_by_sign


def unitary_antipode(N) -> AntipodeReport:
    """R(ne_{s,k}) = -sw_{s,k} on exponents, checked on the ne basis."""
    tri = build_triangle(N)
    table = _rho_table(N)
    ne_basis = [ne(tri, s, k) for s in range(1, N) for k in range(s + 1)]
    inv = all(apply_basis_map(table, apply_basis_map(table, v)) == v for v in ne_basis)
    torus = all(apply_basis_map(table, ne(tri, s)) == -ne(tri, s) and sw(tri, s) == ne(tri, s)
                for s in range(1, N))
    return AntipodeReport(N, table, inv, torus)


@dataclass
class RhoReport:
    N: int
    checks: dict

    @property
    def ok(self):
        return all(self.checks.values())


def rho_and_dual_conjugation(N) -> RhoReport:
    tri = build_triangle(N)
    sp = tri.space
    table = _rho_table(N)
    rho = lambda v: apply_basis_map(table, v)  # noqa: E731
    basis = [sp.basis(l) for l in tri.subsets["B-"]]
    w = weight_exponents(N)
    checks = {
        "maps_B_minus_to_itself": all(_in_span(rho(v), tri.subsets["B-"]) for v in basis),
        "involutive": all(rho(rho(v)) == v for v in basis),
        "rho_dl_is_dr": rho(w["two_d_l"].vector) == w["two_d_r"].vector,
        "skew_adjoint": all(sp.pair(rho(v), u) == -sp.pair(v, rho(u)) for v in basis for u in basis),
        # on B- the map is the label swap b <-> c with a sign, i.e. upsilon
        "equals_upsilon": all(rho(v) == upsilon(v, sp) for v in basis),
    }
    return RhoReport(N, checks)


def symmetry_relations(N) -> dict:
    """Relations between the label maps, on every basis vector of nabla_N."""
    sp = build_triangle(N).space
    basis = [sp.basis(l) for l in sp.labels]
    return {
        "upsilon_is_theta_vartheta_inv_theta": all(
            theta(vartheta(theta(v, sp), sp), sp) == upsilon(v, sp) for v in basis),
        "theta_squared": all(theta(theta(v, sp), sp) == v for v in basis),
        "vartheta_squared": all(vartheta(vartheta(v, sp), sp) == v for v in basis),
        "upsilon_squared": all(upsilon(upsilon(v, sp), sp) == v for v in basis),
    }


# Scaling group and modularity ---------------------------------------------

@dataclass
class ModularityReport:
    N: int
    hbar: Fraction
    Q_hat: SkewVector
    Q: SkewVector
    scaling_generator: SkewVector
    letter_pairings: dict = field(default_factory=dict)  # variant -> list of pairings
    gaussians_fix: dict = field(default_factory=dict)  # variant -> Ad(G) fixes the exponent, per Gaussian

    @property
    def ok(self):
        return (all(p == 0 for ps in self.letter_pairings.values() for p in ps)
                and all(all(v) for v in self.gaussians_fix.values()))


def scaling_and_modularity(N, hbar, variants=("F", "F-ne-first", "F-se-first", "KF")) -> ModularityReport:
    h = as_hbar(hbar)
    t = t_factor(h)
    q_hat = t * weight_sum(N, "ne")
    q = -t * weight_sum(N, "se")
    A = ambient(N)
    both = oplus(A, q_hat, q)
    pairings, fixes = {}, {}
    for var in variants:
        if var not in FLIP_VARIANTS:
            raise ValueError(f"unknown flip variant {var!r}")
        word = flip_factors(N, var)
        pairings[var] = [A.pair(both, l.vector) for l in word if l.is_dilog]
        fixes[var] = [gauss_ad(l, both) == both for l in word if not l.is_dilog]
    return ModularityReport(N, h, q_hat, q, 2 * t * weight_sum(N, "ne"), pairings, fixes)


def duality_coefficient_map(v: SkewVector, hbar) -> SkewVector:
    """v -> v/hbar, matching letters of parameter 1/hbar with parameter hbar."""
    return v / as_hbar(hbar)


# Report -------------------------------------------------------------------

@dataclass
class ModularReport:
    N: int
    hbar: Fraction
    element: ModularElement
    scaling: ScalingConstant
    antipode: AntipodeReport
    rho: RhoReport
    modularity: ModularityReport
    relations: dict

    @property
    def ok(self):
        return (self.element.ok and self.scaling.ok and self.antipode.ok and self.rho.ok
                and self.modularity.ok and all(self.relations.values()))

    def to_json(self) -> dict:
        def lab(l):
            return "e" + "".join(map(str, l))
        return {
            "N": self.N,
            "hbar": frac_str(self.hbar),
            "ok": self.ok,
            "two_d_l": vector_to_json(self.element.two_d_l),
            "two_d_r": vector_to_json(self.element.two_d_r),
            "delta_exponent": vector_to_json(self.element.exponent),
            "Q_hat_exponent": vector_to_json(self.modularity.Q_hat),
            "Q_exponent": vector_to_json(self.modularity.Q),
            "scaling_generator_exponent": vector_to_json(self.modularity.scaling_generator),
            "tau": self.scaling.tau,
            "beta": self.scaling.beta,
            "nu": self.scaling.nu,
            "log_nu": self.scaling.log_nu,
            "scaling_pairing": frac_str(self.scaling.pairing),
            "scaling_residual": self.scaling.residual,
            "antipode": {lab(k): vector_to_json(v) for k, v in sorted(self.antipode.table.items(), reverse=True)},
            "checks": {
                "difference_identity": self.element.difference_ok,
                "grouplike": self.element.grouplike_ok,
                "tau": self.scaling.tau_ok,
                "antipode_involutive": self.antipode.involutive,
                "antipode_on_torus": self.antipode.fixes_torus_by_sign,
                **{f"rho_{k}": v for k, v in self.rho.checks.items()},
                **self.relations,
                "flip_letters_commute": self.modularity.ok,
            },
        }

    def rows(self):
        js = self.to_json()
        out = [("tau", js["tau"]), ("beta", js["beta"]), ("nu", js["nu"]),
               ("log_nu", js["log_nu"]), ("scaling_pairing", js["scaling_pairing"]),
               ("scaling_residual", js["scaling_residual"])]
        out += [(k, v) for k, v in js["checks"].items()]
        return out


def modular_report(N, hbar) -> ModularReport:
    if N < 2:
        raise ValueError("N must be at least 2")
    h = as_hbar(hbar)
    return ModularReport(N, h, modular_element(N, h), scaling_constant(N, h), unitary_antipode(N),
                         rho_and_dual_conjugation(N), scaling_and_modularity(N, h), symmetry_relations(N))

import math
from fractions import Fraction
from math import comb

import pytest

from fgflip import modulardata as md
from fgflip.triangle import build_triangle, tau

HBARS = [Fraction(1, 3), Fraction(1, 2), 1, 2, 3]


def test_as_hbar():
    assert md.as_hbar("1/3") == Fraction(1, 3)
    assert md.as_hbar(0.5) == Fraction(1, 2)
    assert md.as_hbar(-2) == -2
    with pytest.raises(ValueError):
        md.as_hbar(0)


def test_modular_element_N2():
    tri = build_triangle(2)
    for h in HBARS:
        me = md.modular_element(2, h)
        t = 1 + 1 / Fraction(abs(Fraction(h)))
        assert me.exponent == -t * (tri.e(1, 0, 1) + tri.e(1, 1, 0))
        assert me.ok


@pytest.mark.parametrize("N", range(2, 6))
def test_difference_identity_and_grouplike(N):
    me = md.modular_element(N, Fraction(1, 2))
    assert me.two_d_r - me.two_d_l == me.exponent
    assert me.grouplike_ok


def test_tetrahedral_numbers():
    for n in range(1, 21):
        assert md.tetrahedral(n) == comb(n + 2, 3) == tau(n)
    assert md.tetrahedral(3) == 10


def test_scaling_constant_rank_one():
    sc = md.scaling_constant(2, 1)
    assert sc.beta == 4 and sc.tau == 1
    assert sc.nu == pytest.approx(math.exp(-8 * math.pi), rel=1e-14)


@pytest.mark.parametrize("N", range(2, 6))
@pytest.mark.parametrize("h", HBARS)
def test_scaling_pairing(N, h):
    sc = md.scaling_constant(N, h)
    assert sc.tau_ok
    assert abs(abs(float(sc.hbar * sc.pairing)) - sc.beta * sc.tau) <= 1e-12 * sc.beta * sc.tau


@pytest.mark.parametrize("h", HBARS)
def test_nu_sign_flip(h):
    a, b = md.scaling_constant(3, h), md.scaling_constant(3, -Fraction(h))
    assert a.log_nu == -b.log_nu
    assert a.nu * b.nu == pytest.approx(1.0, abs=1e-12)


def test_antipode_N2():
    rep = md.unitary_antipode(2)
    tri = build_triangle(2)
    assert rep.table[(1, 0, 1)] == -tri.e(1, 1, 0)
    assert rep.ok


@pytest.mark.parametrize("N", range(2, 6))
def test_antipode_and_rho(N):
    assert md.unitary_antipode(N).ok
    rho = md.rho_and_dual_conjugation(N)
    assert rho.ok, rho.checks


@pytest.mark.parametrize("N", range(2, 6))
def test_symmetry_relations(N):
    assert all(md.symmetry_relations(N).values())


def test_flip_letters_commute_with_modularity_exponent():
    rep = md.scaling_and_modularity(3, 1)
    assert rep.ok
    assert sum(len(v) for v in rep.letter_pairings.values()) == 16
    assert rep.gaussians_fix["KF"] == [True]
    assert rep.Q_hat == 2 * md.weight_sum(3, "ne")
    assert rep.scaling_generator == 2 * rep.Q_hat
    with pytest.raises(ValueError):
        md.scaling_and_modularity(3, 1, variants=("nope",))


def test_duality_map():
    tri = build_triangle(2)
    v = tri.e(1, 0, 1)
    assert md.duality_coefficient_map(v, 2) == v / 2


def test_report_json():
    rep = md.modular_report(3, "1/2")
    js = rep.to_json()
    assert rep.ok and js["tau"] == 4 and js["hbar"] == "1/2"
    assert all(js["checks"].values())
    with pytest.raises(ValueError):
        md.modular_report(1, 1)

"""Special-function unit tests.

Reference values frozen from an independent arbitrary-precision oracle
(mpmath at 25 significant digits).
"""

import math

import numpy as np
import pytest

from zetalab import specfun as sf


def test_log_gamma_fixed_points():
    assert abs(sf.log_gamma(1.0)) < 1e-14
    assert abs(sf.log_gamma(0.5) - 0.5723649429247000870717137) < 1e-13
    got = sf.log_gamma(0.25 + 3j)
    want = -4.067219409137411985568708 - 0.09338431339316938304969317j
    assert abs(got - want) < 1e-12


def test_log_gamma_reflection_region():
    # Gamma itself is branch free, so compare through exp
    assert abs(np.exp(sf.log_gamma(-7.3)) - 0.0004183878730135480213330541) < 1e-15


def test_log_gamma_recurrence_random():
    rng = np.random.default_rng(11)
    n_checked = 0
    while n_checked < 200:
        z = complex(rng.uniform(-19, 19), rng.uniform(-19, 19))
        if abs(z.imag) < 0.3 and min(abs(z - round(z.real)),
                                     abs(z + 1 - round(z.real + 1))) < 0.2:
            continue
        g1 = np.exp(sf.log_gamma(z + 1.0))
        g0 = np.exp(sf.log_gamma(z))
        assert abs(g1 - z * g0) <= 1e-12 * abs(g1)
        n_checked += 1


def test_log_gamma_pole_raises():
    with pytest.raises(ValueError):
        sf.log_gamma(0.0)
    with pytest.raises(ValueError):
        sf.log_gamma(-3.0)


def test_digamma_values():
    assert abs(sf.digamma(0.25) - (-4.22745353337626540808953)) < 1e-12
    got = sf.digamma(3.0 + 4.0j)
    want = 1.55035981733341091269899 + 1.010502209186044452916871j
    assert abs(got - want) < 1e-12
    # reflection side
    h = 1e-6
    num = (sf.log_gamma(-2.3 + 1.1j + h) - sf.log_gamma(-2.3 + 1.1j - h)) / (2 * h)
    assert abs(sf.digamma(-2.3 + 1.1j) - num) < 1e-8


def test_zeta_em_values():
    assert abs(sf.zeta_em(0.5) - (-1.460354508809586812889499)) < 1e-13
    assert abs(sf.zeta_em(3.0) - 1.202056903159594285399738) < 1e-13
    got = sf.zeta_em(0.5 + 10j)
    want = 1.544895220296752766921496 - 0.1153364652712733754365914j
    assert abs(got - want) / abs(want) < 1e-12
    got = sf.zeta_em(0.5 + 100j)
    want = 2.692619885681324090476096 - 0.02038602960259816177072685j
    assert abs(got - want) / abs(want) < 1e-11


def test_zeta_em_out_of_strip():
    with pytest.raises(ValueError):
        sf.zeta_em(0.5 + 150j)
    with pytest.raises(ValueError):
        sf.zeta_em(1.0)


def test_zeta_hurwitz_values():
    assert abs(sf.zeta_hurwitz(2.5, 1 / 3) - 16.33304416289884797320006) < 1e-11
    got = sf.zeta_hurwitz(0.5 + 5j, 0.7)
    want = -0.6369047251420088480700013 + 1.02844677810841471990965j
    assert abs(got - want) < 1e-11


def test_functional_equation_on_critical_line():
    # zeta(1-s) = phi(s) zeta(s) with s = 1/2 + 10i
    s = 0.5 + 10j
    lhs = sf.zeta_em(1.0 - s)
    rhs = sf.phi(s) * sf.zeta_em(s)
    assert abs(lhs - rhs) < 1e-8


def test_theta_values_and_branch():
    assert sf.theta_rs(0.0) == 0.0
    assert abs(sf.theta_rs(10.0) - (-3.067074396289895291702014)) < 1e-12
    assert abs(sf.theta_rs(100.0) - 87.97216523178721962548313) < 1e-11
    # continuity: no hidden branch jumps on a dense grid
    t = np.linspace(0.0, 200.0, 40001)
    steps = np.abs(np.diff(sf.theta_rs(t)))
    assert steps.max() < 0.02


def test_theta_not_monotonic():
    tstar = 6.28983598883690277966509
    assert sf.theta_rs(tstar) < sf.theta_rs(1.0)
    assert sf.theta_rs(tstar) < sf.theta_rs(20.0)
    assert abs(sf.theta_rs(tstar) - (-3.530972829016607437704244)) < 1e-12


def test_theta_prime():
    assert abs(sf.theta_prime(0.0) - (-2.686091709612832791116479)) < 1e-12
    assert abs(sf.theta_prime(14.0) - 0.4004837439252250648718146) < 1e-12
    # unique sign change sits in (6.2, 6.4)
    assert sf.theta_prime(6.2) < 0.0 < sf.theta_prime(6.4)
    s = np.linspace(0.01, 120.0, 2000)
    signs = np.sign(sf.theta_prime(s))
    assert np.sum(np.abs(np.diff(signs)) > 0) == 1


def test_phi_values_and_zeros():
    assert abs(sf.phi(20.0) - 26.45618688301427377303435) < 1e-10
    for k in range(11):
        assert sf.phi(2 * k + 1.0) == 0.0
    got = sf.phi(0.5 + 10j)
    want = 0.9889146004325425247918157 + 0.1484853967612464038498237j
    assert abs(got - want) < 1e-12
    with pytest.raises(ValueError):
        sf.phi(-4.0)


def test_symbols_unimodular():
    s = np.linspace(-40.0, 40.0, 1000)
    assert np.max(np.abs(np.abs(sf.u_inf(s)) - 1.0)) < 1e-12
    for p in (2, 3):
        assert np.max(np.abs(np.abs(sf.u_p(s, p)) - 1.0)) < 1e-12
    # u_inf agrees with phi on the line
    for sv in (0.0, 3.3, 10.0):
        assert abs(sf.u_inf(sv) - sf.phi(0.5 + 1j * sv)) < 1e-11


def test_u_p_periodic():
    p = 2
    period = 2 * math.pi / math.log(p)
    s = np.linspace(-5, 5, 101)
    assert np.max(np.abs(sf.u_p(s + period, p) - sf.u_p(s, p))) < 1e-12
    got = sf.u_p(3.7, 2)
    want = 0.8891980998084258864823271 - 0.4575223921264233330087094j
    assert abs(got - want) < 1e-13


def test_dlog_u_matches_difference_quotient():
    h = 1e-5
    for v, f in [(sf.PLACE_INF, lambda x: np.log(sf.u_inf(x))),
                 (sf.Place.finite(2), lambda x: np.log(sf.u_p(x, 2))),
                 (sf.Place.finite(5), lambda x: np.log(sf.u_p(x, 5)))]:
        for s0 in (0.3, 3.7, 17.0):
            num = (f(s0 + h) - f(s0 - h)) / (2 * h)
            assert abs(sf.dlog_u(s0, v) - num) < 1e-8
    # purely imaginary along the real line
    s = np.linspace(-10, 10, 101)
    assert np.max(np.abs(sf.dlog_u(s, sf.Place.finite(3)).real)) < 1e-14


def test_place_validation():
    with pytest.raises(ValueError):
        sf.Place("finite", None)
    with pytest.raises(ValueError):
        sf.Place("archimedean", 2)
    assert str(sf.PLACE_INF) == "inf"
    assert str(sf.Place.finite(7)) == "p=7"


def test_hardy_z_real_and_signs():
    # Z is real and changes sign across the first zero
    assert sf.hardy_z(14.0) * sf.hardy_z(14.2) < 0.0
    val = np.exp(1j * sf.theta_rs(17.0)) * sf.zeta_em(0.5 + 17j)
    assert abs(val.imag) < 1e-10


def test_find_zeros_to_50(zeros50):
    assert len(zeros50) == 10
    assert abs(zeros50.ordinates[0] - 14.1347251417346938) < 1e-5
    assert abs(zeros50.ordinates[1] - 21.022039638771555) < 1e-5
    assert abs(zeros50.ordinates[2] - 25.0108575801456888) < 1e-5


def test_find_zeros_refinement_tolerance(zeros50):
    # bisection stops only when the bracket is below 1e-9
    for g in zeros50.ordinates[:3]:
        assert sf.hardy_z(g - 2e-9) * sf.hardy_z(g + 2e-9) <= 0.0


def test_zero_table_validation():
    with pytest.raises(ValueError):
        sf.ZeroTable(np.array([5.0, 4.0]), 10.0, 9)
    with pytest.raises(ValueError):
        sf.ZeroTable(np.array([5.0, 40.0]), 10.0, 9)


def test_zero_table_roundtrip(tmp_path, zeros50):
    path = tmp_path / "z.txt"
    sf.write_zero_table(zeros50, path)
    text = path.read_text()
    assert text.splitlines()[0] == "# zeros complete_to=50.0 precision=9"
    back = sf.read_zero_table(path)
    assert len(back) == len(zeros50)
    assert np.max(np.abs(back.ordinates - zeros50.ordinates)) < 1e-9


def test_zero_table_parse_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("# zeros complete_to=50.0 precision=9\n14.1\nbogus\n")
    with pytest.raises(ValueError, match="line 3"):
        sf.read_zero_table(bad)
    bad.write_text("# zeros complete_to=50.0 precision=9\n21.0\n14.1\n")
    with pytest.raises(ValueError, match="increase"):
        sf.read_zero_table(bad)


def test_zero_table_count_mismatch_warns(tmp_path):
    short = tmp_path / "short.txt"
    short.write_text("# zeros complete_to=50.0 precision=9\n"
                     "14.134725142\n21.022039639\n")
    with pytest.warns(UserWarning, match="counting estimate"):
        sf.read_zero_table(short)


def test_rvm_estimate_near_100():
    assert abs(sf.rvm_count_estimate(100.0) - 29.00240990227181677982611) < 1e-10

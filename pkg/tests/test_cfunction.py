"""c-function layer: closed-form values, pole/zero bookkeeping, czz, density.

The H2 and H3 columns are independent oracles — H3 is 1/lambda outright and
the H2 values below were fixed from the Gamma-quotient by hand — so these
tests pin the normalization and the meromorphic structure rather than
round-tripping the implementation against itself.
"""

import cmath
import math

import pytest

from hyperscatter.cfunction import for_space
from hyperscatter.errors import PoleSignal
from hyperscatter.space import space_from_name

H2 = space_from_name("h2")
H3 = space_from_name("h3")

ALL_NAMES = ("h2", "h3", "hn:4", "chn:2", "hhn:2", "oh2")


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_h2_closed_form_values():
    cf = for_space(H2)
    # Gamma(lambda) / (sqrt(pi) Gamma(lambda + 1/2)), normalized at rho = 1/2
    assert _rel(cf.value(0.5), 1.0) < 1e-12
    assert _rel(cf.value(1.5), 0.5) < 1e-12
    assert _rel(cf.value(2.5), 0.375) < 1e-12
    assert _rel(cf.derivative(-0.5), -2.0) < 1e-10
    assert _rel(cf.derivative(-1.5), -4.0 / 3.0) < 1e-10


def test_h3_is_one_over_lambda():
    cf = for_space(H3)
    for lam in (0.5, 2.0, 1 + 1j, -0.7 + 0.3j, 3.2 - 1.1j):
        assert _rel(cf.value(lam), 1.0 / lam) < 1e-12
        assert _rel(cf.derivative(lam), -1.0 / lam**2) < 1e-10


def test_normalized_at_rho_everywhere():
    for name in ALL_NAMES:
        space = space_from_name(name)
        cf = for_space(space)
        assert abs(cf.value(space.rho) - 1.0) < 1e-12, name


def test_derivative_matches_difference_quotient():
    h = 1e-6
    for name in ("h2", "chn:2", "oh2"):
        cf = for_space(space_from_name(name))
        for lam in (0.8, 1.3 + 0.4j, -0.35 + 1j):
            fd = (cf.value(lam + h) - cf.value(lam - h)) / (2.0 * h)
            assert abs(cf.derivative(lam) - fd) < 1e-6 * max(1.0, abs(fd)), name


def test_zeros_return_exact_zero_and_local_expansion_agrees():
    cf = for_space(H2)
    # c vanishes on -rho - k = -1/2 - k for H2
    for lam0 in (-0.5, -1.5, -2.5):
        assert cf.value(lam0) == 0j
        order, lead, _ = cf.local_expansion(lam0)
        assert order == 1
        assert _rel(lead, cf.derivative(lam0)) < 1e-10


def test_poles_raise_structured_signal():
    cf = for_space(H2)
    with pytest.raises(PoleSignal) as info:
        cf.value(-1.0)
    assert info.value.order == 1  # pole order, counted positive
    order, lead, _ = cf.local_expansion(-1.0)
    assert order == -1  # Laurent exponent of the leading term
    assert _rel(info.value.residue, lead) < 1e-12
    with pytest.raises(PoleSignal):
        cf.derivative(-1.0)


def test_local_expansion_at_regular_point():
    cf = for_space(space_from_name("hhn:2"))
    lam = 1.3 + 0.2j
    order, a, b = cf.local_expansion(lam)
    assert order == 0
    assert _rel(a, cf.value(lam)) < 1e-12
    assert _rel(b, cf.derivative(lam)) < 1e-8


def test_czz_is_the_two_sided_product():
    for name in ("h2", "chn:2"):
        cf = for_space(space_from_name(name))
        for zeta in (0.7, 1.3 - 0.4j, 2.1 + 0.8j):
            prod = cf.value(1j * zeta) * cf.value(-1j * zeta)
            assert _rel(cf.czz(zeta), prod) < 1e-12
            assert _rel(cf.czz(-zeta), cf.czz(zeta)) < 1e-12


def test_czz_h3_and_h2_special_points():
    cf3 = for_space(H3)
    for zeta in (0.5, 1.0 + 0.3j, 2.2):
        assert _rel(cf3.czz(zeta), 1.0 / zeta**2) < 1e-12
    cf2 = for_space(H2)
    for k in range(3):
        assert cf2.czz(1j * (0.5 + k)) == 0j


def test_czz_derivative_matches_difference_quotient():
    cf = for_space(space_from_name("chn:2"))
    h = 1e-6
    for zeta in (0.9, 1.7 + 0.5j):
        fd = (cf.czz(zeta + h) - cf.czz(zeta - h)) / (2.0 * h)
        assert abs(cf.czz_derivative(zeta) - fd) < 1e-6 * max(1.0, abs(fd))


def test_plancherel_density():
    cf3 = for_space(H3)
    for zeta in (0.5, 1.0, 2.0):
        assert _rel(cf3.plancherel_density(zeta), zeta**2) < 1e-12
    for name in ALL_NAMES:
        cf = for_space(space_from_name(name))
        for zeta in (0.1, 1.0, 10.0):
            dens = cf.plancherel_density(zeta)
            assert dens > 0.0, name
            # squared modulus route agrees with the analytic product
            assert _rel(dens, 1.0 / abs(cf.czz(zeta))) < 1e-12, name
    with pytest.raises(ValueError):
        cf3.plancherel_density(0.0)
    with pytest.raises(ValueError):
        cf3.plancherel_density(-1.0)


def test_zero_progression_on_the_imaginary_axis():
    expected = {
        "h2": [0.5 + k for k in range(4)],       # step 1: m_2alpha = 0, odd m
        "h3": [],                                 # no zeros: even m, m_2alpha = 0
        "chn:2": [2.0 + 2 * k for k in range(4)],  # step 2
        "hhn:2": [5.0 + 2 * k for k in range(3)],
        "oh2": [11.0 + 2 * k for k in range(2)],
    }
    for name, heights in expected.items():
        cf = for_space(space_from_name(name))
        got = cf.czz_zeros_upper(len(heights))
        assert len(got) == len(heights), name
        for z, h in zip(got, heights):
            assert abs(z - 1j * h) < 1e-12, name


def test_resonance_step_classification():
    assert for_space(H2).resonance_step() == 1
    assert for_space(H3).resonance_step() is None
    assert for_space(space_from_name("chn:2")).resonance_step() == 2
    assert for_space(space_from_name("oh2")).resonance_step() == 2


def test_for_space_caches_instances():
    assert for_space(H2) is for_space(space_from_name("h2"))


def test_gamma_quotient_against_scipy_on_generic_points():
    # independent route: assemble the quotient from scipy's loggamma
    from scipy.special import loggamma

    space = space_from_name("hhn:2")
    cf = for_space(space)
    a1 = (space.m_alpha / 2.0 + 1.0) / 2.0
    a2 = (space.m_alpha / 2.0 + space.m_2alpha) / 2.0

    def raw(lam):
        return cmath.exp(loggamma(lam) - lam * math.log(2.0)
                         - loggamma(a1 + lam / 2.0) - loggamma(a2 + lam / 2.0))

    c0 = 1.0 / raw(space.rho)
    for lam in (0.8, 1.9 + 0.7j, 3.4 - 1.2j, 0.25 + 2.0j):
        assert _rel(cf.value(lam), c0 * raw(lam)) < 1e-11

"""Continued resolvent kernel: closed form on H3, the two-kernel difference
identity, pole signalling, and the Green-representation application."""

import cmath
import math

import numpy as np
import pytest

from hyperscatter.cfunction import for_space
from hyperscatter.errors import PoleSignal
from hyperscatter.radial import eval_phi
from hyperscatter.resolvent import (
    apply_radial,
    kernel,
    kernel_at,
    resolvent_difference,
    spectral_density_kernel,
)
from hyperscatter.space import space_from_name

H2 = space_from_name("h2")
H3 = space_from_name("h3")


def test_h3_kernel_closed_form():
    # Q_{i zeta} = e^{-(1+i zeta)t}/(1-e^{-2t}) and c(i zeta) = 1/(i zeta)
    # collapse the normalization to 1/2.
    for zeta in (0.8, 1.5 - 0.4j, 2.0 + 1.0j):
        for t in (0.4, 1.0, 2.5):
            expect = (cmath.exp(-(1.0 + 1j * zeta) * t)
                      / (2.0 * (1.0 - math.exp(-2.0 * t))))
            got = kernel(H3, zeta, t)
            assert abs(got - expect) / abs(expect) < 1e-10


def test_difference_identity_cross_route():
    # R_{-zeta} - R_zeta = i phi_{i zeta} / (2 kappa zeta czz(zeta))
    for name in ("h2", "chn:2"):
        space = space_from_name(name)
        cf = for_space(space)
        for zeta in (0.7, 1.2 - 0.5j):
            for t in (0.8, 2.0):
                lhs = resolvent_difference(space, zeta, t)
                rhs = (1j * eval_phi(space, 1j * zeta, t)
                       / (2.0 * space.kappa * zeta * cf.czz(zeta)))
                assert abs(lhs - rhs) / abs(rhs) < 1e-9, (name, zeta, t)


def test_kernel_domain_and_poles():
    with pytest.raises(ValueError):
        kernel(H2, 0.0, 1.0)
    with pytest.raises(ValueError):
        kernel(H2, 0.7, 0.0)
    with pytest.raises(ValueError):
        kernel(H2, 0.7, -1.0)
    with pytest.raises(PoleSignal) as info:
        kernel(H2, 0.5j, 1.0)  # first resonance
    assert info.value.at == 0.5j


def test_kernel_at_reuse_matches_pointwise():
    k = kernel_at(H2, 1.1 - 0.3j)
    for t in (0.5, 1.5):
        assert k(t) == kernel(H2, 1.1 - 0.3j, t)


def test_spectral_density_kernel_real_and_positive_near_coincidence():
    # weight phi_{i zeta}(t) / (4 pi kappa zeta czz(zeta)); real for real
    # zeta, positive as t -> 0 where phi -> 1
    cf = for_space(H2)
    for s in (0.8, 1.5):
        zeta = math.sqrt(s / H2.kappa)
        for t in (0.05, 0.4):
            val = spectral_density_kernel(H2, s, t)
            expect = (eval_phi(H2, 1j * zeta, t)
                      / (4.0 * math.pi * H2.kappa * zeta * cf.czz(zeta)))
            assert abs(val - expect) < 1e-12 * max(1.0, abs(expect))
            assert abs(val.imag) < 1e-12
        assert spectral_density_kernel(H2, s, 0.05).real > 0.0
    with pytest.raises(ValueError):
        spectral_density_kernel(H2, -1.0, 0.5)


def test_apply_radial_solves_the_inhomogeneous_equation():
    space = H2
    zeta = 0.9 - 0.2j

    def f(t):
        # smooth bump supported in [0.5, 1.5]
        if not 0.5 < t < 1.5:
            return 0.0
        x = (t - 0.5) / 1.0
        return math.exp(-1.0 / (x * (1.0 - x)))

    u = apply_radial(space, zeta, f, (0.5, 1.5))
    assert u.residual() < 5e-6
    # linearity in f at a sample point
    u2 = apply_radial(space, zeta, lambda t: 2.0 * f(t), (0.5, 1.5))
    a, b = u(1.0), u2(1.0)
    assert abs(b - 2.0 * a) < 1e-10 * max(1.0, abs(b))


def test_apply_radial_grid_matches_pointwise():
    space = H3
    zeta = 1.3

    def f(t):
        return math.sin(math.pi * (t - 0.4)) if 0.4 <= t <= 1.4 else 0.0

    u = apply_radial(space, zeta, f, (0.4, 1.4))
    ts = np.array([0.3, 0.8, 1.2, 2.0])
    grid = u.on_grid(ts)
    for t, g in zip(ts, grid):
        assert abs(g - u(t)) < 1e-9 * max(1.0, abs(g))
    with pytest.raises(ValueError):
        u.on_grid(np.array([1.0, 0.5]))

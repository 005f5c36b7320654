"""Radial eigenfunctions: series solution Q, spherical function phi,
connection coefficients, Wronskian limit."""

import cmath
import math

import pytest

from hyperscatter.cfunction import for_space
from hyperscatter.errors import ResonantExponentError
from hyperscatter.radial import (
    RadialSolution,
    connection_coefficients,
    eval_Q,
    eval_phi,
    frobenius_Q,
    phi_solution,
    wronskian_limit,
)
from hyperscatter.model_h2 import oracle_h3
from hyperscatter.space import space_from_name

H2 = space_from_name("h2")
H3 = space_from_name("h3")


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_h3_closed_forms():
    for lam in (0.5, 2.0, 1 + 1j, 0.3 - 0.8j):
        for t in (0.5, 1.0, 3.0):
            oracle = oracle_h3(lam, t)
            assert _rel(eval_phi(H3, lam, t), oracle.phi) < 1e-10
            assert _rel(eval_Q(H3, lam, t), oracle.Q) < 1e-10


def test_phi_is_even_in_lambda():
    for name in ("h2", "chn:2"):
        space = space_from_name(name)
        for lam in (0.8, 0.6 + 0.9j):
            for t in (0.7, 2.0):
                assert _rel(eval_phi(space, lam, t),
                            eval_phi(space, -lam, t)) < 1e-9, name


def test_phi_normalized_at_origin():
    sol = phi_solution(space_from_name("hhn:2"), 0.9 + 0.3j, 2.0)
    u, du = sol.at(1e-4)
    assert abs(u - 1.0) < 1e-6
    assert abs(du) < 1e-2  # slope vanishes at the center like t


def test_q_asymptotic_normalization():
    # Q_lambda(t) e^{(rho+lambda)t} -> 1
    for name in ("h2", "h3", "oh2"):
        space = space_from_name(name)
        for lam in (0.7, 1.1 + 0.5j):
            t = 18.0
            scaled = eval_Q(space, lam, t) * cmath.exp((space.rho + lam) * t)
            assert abs(scaled - 1.0) < 1e-7, name


def test_frobenius_excluded_exponents():
    # recursion step nu(nu + 2 lambda) vanishes iff 2 lambda is a negative integer
    for lam in (-0.5, -1.0, -1.5):
        with pytest.raises(ResonantExponentError):
            frobenius_Q(H2, lam)
    # nearby non-lattice points are fine
    assert frobenius_Q(H2, -0.5 + 0.01)


def test_connection_identity_spot_checks():
    for name in ("h2", "chn:2"):
        space = space_from_name(name)
        cf = for_space(space)
        for lam in (0.8 + 0.3j, 1.15):
            sol = phi_solution(space, lam, 3.2)
            cp, cm = cf.value(lam), cf.value(-lam)
            for t in (0.6, 1.5, 3.0):
                left = cp * eval_Q(space, -lam, t)
                right = cm * eval_Q(space, lam, t)
                scale = max(abs(sol(t)), abs(left), abs(right))
                assert abs(sol(t) - (left + right)) / scale < 1e-9, (name, lam, t)


def test_connection_coefficients_of_phi_are_c_values():
    cf = for_space(H3)
    lam = 0.8
    am, ap = connection_coefficients(H3, lam)
    assert _rel(am, cf.value(lam)) < 1e-8
    assert _rel(ap, cf.value(-lam)) < 1e-8


def test_connection_rejects_resonant_exponents():
    with pytest.raises(ResonantExponentError):
        connection_coefficients(H2, 0.5)
    with pytest.raises(ResonantExponentError):
        connection_coefficients(H2, 1.0)


def test_wronskian_limit_formula():
    # J(t) * dQ/dt -> -2 lambda c(lambda) as t -> 0
    for name, lam in (("h3", 0.7), ("h2", 1.3 + 0.4j), ("chn:2", 0.9)):
        space = space_from_name(name)
        cf = for_space(space)
        target = -2.0 * lam * cf.value(lam)
        assert _rel(wronskian_limit(space, lam), target) < 1e-6, name


def test_radial_solution_range_and_residual():
    space = space_from_name("chn:2")
    sol = phi_solution(space, 1.2, 2.5)
    with pytest.raises(ValueError):
        sol.at(3.5)
    with pytest.raises(ValueError):
        sol.at(-0.1)
    assert sol.residual() < 1e-5


def test_radial_solution_from_callable_round_trip():
    lam = 0.8
    sol = RadialSolution.from_callable(
        H3,
        lam,
        lambda t: cmath.exp(-(1.0 + lam) * t) / (1.0 - math.exp(-2.0 * t)),
        lambda t: (-(1.0 + lam) * cmath.exp(-(1.0 + lam) * t)
                   / (1.0 - math.exp(-2.0 * t))
                   - 2.0 * math.exp(-2.0 * t) * cmath.exp(-(1.0 + lam) * t)
                   / (1.0 - math.exp(-2.0 * t)) ** 2),
        0.4,
        2.0,
    )
    # the H3 second-kind solution solves the radial equation
    assert sol.residual() < 1e-6
    assert _rel(sol(1.0), eval_Q(H3, lam, 1.0)) < 1e-10

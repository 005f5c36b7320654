"""Hyperbolic disk model for the two-variable identities.

The rank-one machinery in the rest of the package only sees the radius t.
This module supplies the one concrete model where points, boundary angles,
and Poisson integrals are available explicitly — the unit disk with

    distance(z1, z2) = arccosh(1 + 2|z1-z2|^2 / ((1-|z1|^2)(1-|z2|^2))),
    e^{A(z, theta)}  = (1 - |z|^2) / |z - e^{i theta}|^2,

so that P_lambda f (z) = (1/2pi) int e^{(rho+lambda) A(z,theta)} f(theta)
dtheta maps boundary data to eigenfunctions (rho = 1/2 here).  The bracket
normalization is the one that makes P_lambda 1 = phi_lambda and makes
e^{(rho+lambda)A} an eigenfunction of the hyperbolic Laplacian — both are
asserted in tests rather than assumed.

Boundary quadrature is the periodic trapezoid rule (spectrally accurate for
analytic integrands) with node doubling until the value settles; the Poisson
peak has angular width ~ (1-|z|), so deep Fatou limits legitimately need
tens of thousands of nodes and the doubling reuses previous levels.

H^3 closed forms (phi, Q, c) live here too, as the oracle fixtures used all
over the test suite.

Everything assumes the H^2 normalization kappa = 1; the module-level H2
constant is the space every function refers to.
"""

from __future__ import annotations

import cmath
import math
from collections import namedtuple
from functools import lru_cache

import numpy as np

from .boundary import boundary_pair
from .cfunction import for_space
from .errors import IndeterminateRankError, NormalizationError, QuadratureError
from .radial import RadialSolution, integrate_radial_ode, eval_phi
from .space import RankOneSpace

H2 = RankOneSpace(1, 0)
_RHO = H2.rho  # 1/2

_MAX_NODES = 1 << 17


def distance(z1, z2):
    """Geodesic distance between two points of the open disk."""
    z1, z2 = complex(z1), complex(z2)
    for z in (z1, z2):
        if abs(z) >= 1.0:
            raise ValueError(f"|z| = {abs(z)} not inside the disk")
    num = 2.0 * abs(z1 - z2) ** 2
    den = (1.0 - abs(z1) ** 2) * (1.0 - abs(z2) ** 2)
    return math.acosh(1.0 + num / den)


def r_of_t(t):
    """Euclidean radius of the point at geodesic distance t from 0."""
    return math.tanh(0.5 * float(t))


def horocycle_bracket(z, theta):
    """A(z, theta) = log((1-|z|^2)/|z - e^{i theta}|^2)."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError("bracket defined for |z| < 1")
    d2 = abs(z - cmath.exp(1j * float(theta))) ** 2
    if d2 == 0.0:
        raise OverflowError("z on the boundary at the bracket's singular angle")
    return math.log1p(-abs(z) ** 2) - math.log(d2)


def _bracket_grid(z, thetas):
    z = complex(z)
    d2 = np.abs(z - np.exp(1j * thetas)) ** 2
    return math.log1p(-abs(z) ** 2) - np.log(d2)


def _bracket_t_derivative_grid(r, thetas):
    """dA/dt along the ray z = r(t) on the positive axis (b = 0 ray rotated out)."""
    d2 = np.abs(r - np.exp(1j * thetas)) ** 2
    return -r - (1.0 - r * r) * (r - np.cos(thetas)) / d2


def _trapezoid_doubling(sample, tol, n0=64, cap=_MAX_NODES):
    """Mean of a periodic sampler over doubling grids until stable.

    ``sample(thetas)`` returns an array of integrand values; previous levels
    are reused (the 2N-grid mean is the average of the N-grid mean and the
    midpoint mean).  Returns (value, nodes_used, converged).
    """
    n = n0
    thetas = 2.0 * math.pi * np.arange(n) / n
    total = np.sum(sample(thetas))
    value = total / n
    while n < cap:
        mids = 2.0 * math.pi * (np.arange(n) + 0.5) / n
        total = total + np.sum(sample(mids))
        n *= 2
        new = total / n
        if abs(new - value) < tol * max(1.0, abs(new)):
            return new, n, True
        value = new
    return value, n, False


def poisson_transform(lam, f, z, tol=1e-10):
    """(P_lambda f)(z) = (1/2pi) int e^{(rho+lambda)A(z,theta)} f(theta) dtheta.

    f is a callable on [0, 2pi) (vectorized over numpy arrays if possible).
    Trapezoid nodes double until the value is stable to ``tol``; raises
    QuadratureError if 2^17 nodes do not suffice.
    """
    lam = complex(lam)
    z = complex(z)

    def sample(thetas):
        vals = f(thetas)
        vals = np.asarray(vals) + np.zeros(len(thetas))  # scalar f broadcast
        return np.exp((_RHO + lam) * _bracket_grid(z, thetas)) * vals

    value, n, ok = _trapezoid_doubling(sample, tol)
    if not ok:
        raise QuadratureError(
            f"Poisson quadrature not converged at {n} nodes (|z|={abs(z):.4f})"
        )
    return complex(value)


def poisson_radial_pair(lam, n, t, tol=1e-10):
    """(u, du/dt) of u(t) = (P_lambda e^{in theta})(r(t)) along the base ray.

    The full transform at z = r e^{ib} is e^{inb} times this radial factor.
    """
    lam = complex(lam)
    n = int(n)
    r = r_of_t(t)

    def sample(thetas):
        wave = np.exp(1j * n * thetas)
        bracket = _bracket_grid(r, thetas)
        kern = np.exp((_RHO + lam) * bracket)
        dkern = (_RHO + lam) * _bracket_t_derivative_grid(r, thetas) * kern
        return np.stack([kern * wave, dkern * wave], axis=1)

    # run the doubling on the stacked integrand; converge both components
    nn = 64
    thetas = 2.0 * math.pi * np.arange(nn) / nn
    total = np.sum(sample(thetas), axis=0)
    value = total / nn
    while nn < _MAX_NODES:
        mids = 2.0 * math.pi * (np.arange(nn) + 0.5) / nn
        total = total + np.sum(sample(mids), axis=0)
        nn *= 2
        new = total / nn
        if np.all(np.abs(new - value) < tol * np.maximum(1.0, np.abs(new))):
            return complex(new[0]), complex(new[1])
        value = new
    raise QuadratureError(f"Poisson pair quadrature not converged at {nn} nodes")


def hyperbolic_laplacian_stencil(func, z, h=1e-3):
    """Five-point hyperbolic Laplacian -((1-|z|^2)^2/4) * euclidean Laplacian."""
    z = complex(z)
    lap_euc = (
        func(z + h) + func(z - h) + func(z + 1j * h) + func(z - 1j * h)
        - 4.0 * func(z)
    ) / (h * h)
    return -((1.0 - abs(z) ** 2) ** 2 / 4.0) * lap_euc


# -- K-type reduction --------------------------------------------------------

_KTYPE_T0 = 0.1
_KTYPE_TERMS = 14


def _ktype_taylor_pair(lam, n, t):
    """(f, f') at small t from the regular Frobenius start f ~ t^{|n|}.

    Coefficients a_J of f = sum a_J t^(m+2J), m = |n|, from the series form
    of sinh^2 f'' + sinh cosh f' + ((rho^2-lam^2) sinh^2 - n^2) f = 0.
    """
    lam = complex(lam)
    m = abs(int(n))
    k2 = _RHO**2 - lam * lam
    kmax = _KTYPE_TERMS + 2
    sk = [0.0] + [2.0 ** (2 * k - 1) / math.factorial(2 * k) for k in range(1, kmax)]
    ck = [0.0] + [2.0 ** (2 * k - 2) / math.factorial(2 * k - 1) for k in range(1, kmax)]
    a = [1.0 + 0j]
    for P in range(1, _KTYPE_TERMS + 1):
        acc = 0j
        for k in range(2, P + 2):
            q = P - k + 1
            if q < 0:
                break
            w = m + 2 * q
            acc += (sk[k] * w * (w - 1) + ck[k] * w) * a[q]
        for k in range(1, P + 1):
            acc += k2 * sk[k] * a[P - k]
        a.append(-acc / (4.0 * P * (m + P)))
    x = t * t
    s = 0j
    ds = 0j  # sum J a_J x^(J-1)
    for J in range(len(a) - 1, -1, -1):
        s = s * x + a[J]
        ds = ds * x + (J * a[J] if J else 0j)
    ds /= x if x != 0.0 else 1.0
    head = t**m
    u = head * s
    du = (m * t ** (m - 1) * s if m else 0j) + head * 2.0 * t * ds
    return u, du


@lru_cache(maxsize=256)
def _ktype_raw(lam, n, t_max):
    init = _ktype_taylor_pair(lam, n, _KTYPE_T0)
    sol = integrate_radial_ode(H2, lam, abs(int(n)), (_KTYPE_T0, t_max),
                               init, provenance="ktype")

    def ev(t):
        if t <= _KTYPE_T0:
            return _ktype_taylor_pair(lam, n, t)
        return sol._eval(t)

    return RadialSolution(
        space=H2, lam=complex(lam), potential_n=abs(int(n)),
        provenance="ktype", t_lo=0.0, t_hi=t_max, _eval=ev,
        ts=sol.ts, values=sol.values, derivatives=sol.derivatives,
    )


@lru_cache(maxsize=256)
def _ktype_normalized(lam, n, t_max):
    lam = complex(lam)
    raw = _ktype_raw(lam, n, max(t_max, 1.35))
    bp = boundary_pair(H2, lam, raw)
    target = for_space(H2).value(lam)
    if abs(bp.a_minus) < 1e-250:
        raise NormalizationError(
            f"K-type profile has vanishing incoming boundary value at lambda={lam}"
        )
    scale = target / bp.a_minus
    return RadialSolution(
        space=H2, lam=lam, potential_n=abs(int(n)), provenance="ktype",
        t_lo=raw.t_lo, t_hi=raw.t_hi,
        _eval=lambda t: tuple(scale * w for w in raw._eval(t)),
        ts=raw.ts,
        values=None if raw.values is None else scale * raw.values,
        derivatives=None if raw.derivatives is None else scale * raw.derivatives,
    )


def ktype_solution(lam, n, t_max=1.35):
    """The radial factor of P_lambda e^{in theta} as a RadialSolution.

    Normalized so its boundary pair has a_minus = c(lambda), matching the
    Poisson transform of the unit K-type.
    """
    cap = 1.35
    while cap < t_max:
        cap *= 2.0
    return _ktype_normalized(complex(lam), int(n), cap)


def ktype_radial_profile(lam, n, t):
    """f_{lambda,n}(t) with P_lambda(e^{in theta}) = f_{lambda,n}(t) e^{in b}."""
    t = float(t)
    if t <= 0.0:
        raise ValueError("profile evaluated at t > 0 (it vanishes like t^|n| at 0)")
    return ktype_solution(lam, n, t_max=t).at(t)[0]


# -- two-variable resolvent identity ----------------------------------------


def resolvent_difference_quadrature(zeta, z1, z2, tol=1e-10, cap=2048):
    """Boundary-integral route to (R_{-zeta} - R_{zeta})(z1, z2).

    i/(2 kappa zeta czz(zeta)) times the Poisson-kernel pairing
    (1/2pi) int e^{(rho+i zeta)A(z1)} e^{(rho-i zeta)A(z2)} dtheta.
    Node count doubles from 64 up to ``cap`` (default 2048, the budget the
    identity is certified under); the cap value is returned even if the
    doubling has not settled to ``tol`` by then.
    """
    zeta = complex(zeta)
    z1, z2 = complex(z1), complex(z2)
    cf = for_space(H2)
    front = 1j / (2.0 * H2.kappa * zeta * cf.czz(zeta))

    def sample(thetas):
        return np.exp((_RHO + 1j * zeta) * _bracket_grid(z1, thetas)
                      + (_RHO - 1j * zeta) * _bracket_grid(z2, thetas))

    value, _, _ = _trapezoid_doubling(sample, tol, cap=cap)
    return front * complex(value)


# -- residue rank ------------------------------------------------------------


def residue_rank(k, n_points=None, n_angles=None, svd_threshold=1e-8,
                 with_gap=False):
    """Numerical rank of the residue kernel at the H^2 resonance i(1/2 + k).

    At zeta = i(1/2+k) the Poisson kernel degenerates to e^{-k A(z, theta)},
    a trigonometric polynomial of degree k in theta; the sampled matrix
    M[j, l] = e^{-k A(z_j, theta_l)} has rank 2k+1.  Rank = number of
    singular values above svd_threshold * sigma_max; if the singular-value
    gap at the cut is below 10^2 the rank is declared indeterminate.  With
    ``with_gap=True`` returns (rank, gap) instead, gap = inf for a full-rank
    cut.
    """
    k = int(k)
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    if n_points is None:
        n_points = max(4 * k + 4, 12)
    if n_angles is None:
        n_angles = max(4 * k + 4, 16)
    if min(n_points, n_angles) < 4 * k + 4:
        raise ValueError("sampling sizes must be at least 4k+4")
    rng = np.random.default_rng(20260214 + k)
    radii = rng.uniform(0.15, 0.6, n_points)
    angs = rng.uniform(0.0, 2.0 * math.pi, n_points)
    zs = radii * np.exp(1j * angs)
    thetas = 2.0 * math.pi * np.arange(n_angles) / n_angles
    m = np.empty((n_points, n_angles))
    for j, z in enumerate(zs):
        m[j] = np.exp(-k * _bracket_grid(z, thetas))
    sv = np.linalg.svd(m, compute_uv=False)
    cut = svd_threshold * sv[0]
    rank = int(np.sum(sv > cut))
    gap = math.inf
    if rank < len(sv) and sv[rank] > 0.0:
        gap = sv[rank - 1] / sv[rank]
        if gap < 1e2:
            raise IndeterminateRankError(
                f"singular-value gap {gap:.1f} at the threshold cut", gap=gap
            )
    if with_gap:
        return rank, gap
    return rank


# -- H^3 closed forms --------------------------------------------------------

H3Oracle = namedtuple("H3Oracle", ["phi", "Q", "c"])


def oracle_h3(lam, t):
    """Closed-form H^3 fixtures: phi, Q, c at (lambda, t).

    phi = sinh(lambda t)/(lambda sinh t) with the entire continuation
    t/sinh t at lambda = 0; Q = y^(1+lambda)/(1-y^2); c = 1/lambda.
    """
    lam = complex(lam)
    t = float(t)
    if t <= 0.0:
        raise ValueError("oracle needs t > 0")
    x = lam * t
    if abs(x) < 1e-4:
        # sinh(x)/x by series, accurate through the removable point
        ratio = 1.0 + x * x / 6.0 * (1.0 + x * x / 20.0)
    else:
        ratio = cmath.sinh(x) / x
    phi = ratio * t / math.sinh(t)
    y = math.exp(-t)
    q = cmath.exp(-(1.0 + lam) * t) / (1.0 - y * y)
    c = 1.0 / lam if lam != 0 else complex("inf")
    return H3Oracle(phi=phi, Q=q, c=c)

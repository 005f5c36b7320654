"""Radial eigenfunctions of the rank-one Laplacian.

Everything here solves one ODE in the geodesic radius t (y = e^{-t}),

    u'' + b(t) u' + (rho^2 - lambda^2) u - n^2/sinh(t)^2 u = 0,
    b(t) = m_alpha coth t + 2 m_2alpha coth 2t,

n = 0 unless an angular momentum is separated off (the K-type reduction on
the disk model).  Two distinguished solutions:

* Q_lambda = y^(rho+lambda) h_lambda(y), the solution with a pure boundary
  exponent.  h_lambda solves a Frobenius recursion in the y-power-series
  coefficients (writing the radial operator through theta = y d/dy; the
  coefficient there is theta applied to log J, not to J itself).  The series
  converges on |y| < 1; we sum it for y <= 1/2 and continue by ODE
  integration for y > 1/2, i.e. t < log 2.

* phi_lambda, the regular solution with phi(0) = 1 (the spherical function
  for n = 0).  The coth singularity at t = 0 is handled by a Taylor series
  whose coefficients come from the Laurent expansion of b; the ODE takes
  over at t = 0.01.

The two are linked by phi = c(lambda) Q_{-lambda} + c(-lambda) Q_{lambda};
``connection_coefficients`` recovers the pair numerically for any solution,
and ``wronskian_limit`` extrapolates lim_{t->0} J(t) dQ/dt = -2 lambda
c(lambda), which fixes the resolvent normalization.

All integrations use DOP853 at rtol 1e-12 with a vanishing absolute floor,
so solutions spanning forty decades (the octonionic family) keep full
relative accuracy.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp

from .errors import AccuracyWarning, IllConditionedError, ResonantExponentError, StiffnessError
from .space import RankOneSpace

T_SWITCH = math.log(2.0)  # series/ODE handover at y = 1/2
T_TAYLOR = 0.01  # phi Taylor validity used for ODE initialization
EXCLUSION_RADIUS = 1e-6

_RTOL = 1e-12
_ATOL = 1e-300  # effectively pure relative error control


def _near_negative_integer(w, radius):
    """True if complex w lies within radius of {-1, -2, -3, ...}."""
    m = round(w.real)
    return m <= -1 and abs(w - m) <= radius


def _check_exponent(lam):
    if _near_negative_integer(2.0 * complex(lam), EXCLUSION_RADIUS):
        raise ResonantExponentError(
            f"2*lambda = {2*complex(lam)} is within {EXCLUSION_RADIUS} of a "
            "negative integer; the Frobenius recursion for Q is singular there"
        )


# -- Frobenius solution Q ----------------------------------------------------


@dataclass(frozen=True)
class FrobeniusSeries:
    """Power-series data of Q_lambda(t) = y^exponent * sum_nu h_nu y^nu.

    ``coefficients[0] == 1`` and the stored truncation satisfies the tail
    bound |h_N| * valid_radius^N below the construction tolerance.
    """

    space: RankOneSpace
    lam: complex
    potential_n: int
    exponent: complex
    coefficients: tuple
    valid_radius: float = 0.5

    @property
    def truncation(self):
        return len(self.coefficients) - 1

    def series_sums(self, y):
        """(h(y), y h'(y)) at scalar y with |y| <= valid_radius."""
        if abs(y) > self.valid_radius * (1.0 + 1e-12):
            raise ValueError(
                f"series evaluated at y={y} outside radius {self.valid_radius}"
            )
        s = 0j
        ds = 0j
        # Horner in y^2: odd coefficients vanish identically
        y2 = y * y
        for nu in range(len(self.coefficients) - 1 - (len(self.coefficients) - 1) % 2, -1, -2):
            h = self.coefficients[nu]
            s = s * y2 + h
            ds = ds * y2 + nu * h
        return s, ds

    def pair(self, t):
        """(Q(t), dQ/dt) for t >= -log(valid_radius)."""
        y = math.exp(-t)
        s, ds = self.series_sums(y)
        head = cmath.exp(-self.exponent * t)
        q = head * s
        dq = -head * (self.exponent * s + ds)
        return q, dq

    def value(self, t):
        return self.pair(t)[0]

    def derivative(self, t):
        return self.pair(t)[1]


def frobenius_Q(space, lam, tol=1e-16, potential_n=0, max_terms=400):
    """Frobenius coefficients of Q_lambda, adaptively truncated.

    Raises ResonantExponentError when 2*lambda is within 1e-6 of a negative
    integer (vanishing recursion denominator nu(nu + 2 lambda)).
    """
    lam = complex(lam)
    _check_exponent(lam)
    n = int(potential_n)
    rho = space.rho
    e = rho + lam
    # b(t) - 2 rho = sum_{k even >= 2} b_k y^k with b_k as below
    def bk(k):
        return 2.0 * space.m_alpha + (4.0 * space.m_2alpha if k % 4 == 0 else 0.0)

    h = [1.0 + 0j]
    r = 0.5
    quiet = 0
    nu = 0
    while quiet < 2 and nu + 2 <= max_terms:
        nu += 2
        src = 0j
        for k in range(2, nu + 1, 2):
            src += bk(k) * (e + nu - k) * h[nu - k]
        if n != 0:
            src += 4.0 * n * n * sum(j * h[nu - 2 * j] for j in range(1, nu // 2 + 1))
        h_nu = src / (nu * (nu + 2.0 * lam))
        h.append(0j)  # odd coefficient
        h.append(h_nu)
        if nu >= 8 and abs(h_nu) * r**nu < tol:
            quiet += 1
        else:
            quiet = 0
    if quiet < 2:
        warnings.warn(
            f"Frobenius tail still {abs(h[-1]) * r**nu:.2e} after {nu} terms "
            f"(lambda={lam})",
            AccuracyWarning,
        )
    return FrobeniusSeries(
        space=space,
        lam=lam,
        potential_n=n,
        exponent=e,
        coefficients=tuple(h),
    )


@lru_cache(maxsize=512)
def _series(space, lam, potential_n):
    return frobenius_Q(space, lam, potential_n=potential_n)


# -- generic ODE continuation ------------------------------------------------


@dataclass
class RadialSolution:
    """A solved radial eigenfunction on [t_lo, t_hi].

    ``at(t)`` returns (value, derivative); the sample grid rows
    (ts, values, derivatives) record what the integrator certified.
    """

    space: RankOneSpace
    lam: complex
    potential_n: int
    provenance: str  # 'phi' | 'Q_plus' | 'Q_minus' | 'ktype' | 'closed-form'
    t_lo: float
    t_hi: float
    _eval: object = field(repr=False)
    ts: np.ndarray = field(default=None, repr=False)
    values: np.ndarray = field(default=None, repr=False)
    derivatives: np.ndarray = field(default=None, repr=False)

    def at(self, t):
        if not (self.t_lo - 1e-12 <= t <= self.t_hi + 1e-12):
            raise ValueError(
                f"t={t} outside solved range [{self.t_lo}, {self.t_hi}]"
            )
        u, v = self._eval(float(t))
        return complex(u), complex(v)

    def __call__(self, t):
        return self.at(t)[0]

    def residual(self, ts=None, h=1e-4):
        """Max ODE defect |u'' + b u' + (rho^2-lam^2)u - n^2 u/sinh^2|.

        u'' is taken by central differences of the stored derivative, so this
        is a genuine consistency check on the integrator output, good to
        roughly h^2 * |u'''|.
        """
        if ts is None:
            ts = self.ts if self.ts is not None else np.linspace(self.t_lo, self.t_hi, 7)
        worst = 0.0
        k2 = self.space.rho**2 - self.lam**2
        n2 = float(self.potential_n**2)
        for t in np.atleast_1d(ts):
            t = float(t)
            hh = min(h, 0.25 * (t - self.t_lo), 0.25 * (self.t_hi - t))
            if hh <= 0.0:
                continue
            u, v = self.at(t)
            vp = self.at(t + hh)[1]
            vm = self.at(t - hh)[1]
            upp = (vp - vm) / (2.0 * hh)
            defect = upp + self.space.log_density_dot(t) * v + k2 * u
            if n2:
                defect -= n2 * u / math.sinh(t) ** 2
            worst = max(worst, abs(defect))
        return worst

    @classmethod
    def from_callable(cls, space, lam, f, fdot, t_lo, t_hi, potential_n=0,
                      provenance="closed-form"):
        ts = np.linspace(t_lo, t_hi, 9)
        return cls(
            space=space,
            lam=complex(lam),
            potential_n=int(potential_n),
            provenance=provenance,
            t_lo=float(t_lo),
            t_hi=float(t_hi),
            _eval=lambda t: (f(t), fdot(t)),
            ts=ts,
            values=np.array([f(t) for t in ts]),
            derivatives=np.array([fdot(t) for t in ts]),
        )


def integrate_radial_ode(space, lam, potential_n, t_span, init, *, rtol=_RTOL,
                         provenance="custom"):
    """Continue (u, u') of the radial ODE across t_span = (t0, t1).

    t_span may be decreasing (backward continuation toward the singular
    endpoint).  Both endpoints must be positive.
    """
    t0, t1 = float(t_span[0]), float(t_span[1])
    if min(t0, t1) <= 0.0:
        raise ValueError("t_span must stay inside (0, inf)")
    lam = complex(lam)
    n2 = float(int(potential_n) ** 2)
    k2 = space.rho**2 - lam * lam
    m_a, m_2a = float(space.m_alpha), float(space.m_2alpha)

    def rhs(t, uv):
        u, v = uv
        b = m_a / math.tanh(t) + 2.0 * m_2a / math.tanh(2.0 * t)
        acc = -(b * v + k2 * u)
        if n2:
            acc += n2 * u / math.sinh(t) ** 2
        return (v, acc)

    y0 = np.array([complex(init[0]), complex(init[1])], dtype=complex)
    sol = solve_ivp(rhs, (t0, t1), y0, method="DOP853", rtol=rtol, atol=_ATOL,
                    dense_output=True)
    if not sol.success:
        raise StiffnessError(f"radial integration failed: {sol.message}")

    def ev(t):
        u, v = sol.sol(t)
        return u, v

    return RadialSolution(
        space=space,
        lam=lam,
        potential_n=int(potential_n),
        provenance=provenance,
        t_lo=min(t0, t1),
        t_hi=max(t0, t1),
        _eval=ev,
        ts=sol.t,
        values=sol.y[0],
        derivatives=sol.y[1],
    )


# -- the two distinguished solutions ----------------------------------------


def _bernoulli_even(kmax):
    """B_0, B_2, ..., B_{2 kmax} as Fractions (B_1 = -1/2 convention)."""
    n = 2 * kmax + 1
    b = [Fraction(0)] * n
    b[0] = Fraction(1)
    for m in range(1, n):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * b[j]
        b[m] = -acc / (m + 1)
    return [b[2 * k] for k in range(kmax + 1)]


@lru_cache(maxsize=None)
def _coth_coeffs(kmax):
    """c_k with coth t = 1/t + sum_{k>=1} c_k t^{2k-1}."""
    bern = _bernoulli_even(kmax)
    return tuple(
        float(Fraction(4**k) * bern[k] / math.factorial(2 * k))
        for k in range(kmax + 1)
    )


def _phi_taylor_coeffs(space, lam, nterms=18):
    """Taylor coefficients of phi_lambda about t = 0 (a_0 = 1)."""
    lam = complex(lam)
    q = space.dim - 1  # residue of b(t) at t=0
    kmax = nterms // 2 + 1
    ck = _coth_coeffs(kmax)
    beta = {2 * k - 1: ck[k] * (space.m_alpha + 4**k * space.m_2alpha)
            for k in range(1, kmax + 1)}
    k2 = space.rho**2 - lam * lam
    a = [1.0 + 0j, 0j]
    for nn in range(2, nterms + 1):
        acc = k2 * a[nn - 2]
        for j, bj in beta.items():
            if j <= nn - 2:
                acc += bj * (nn - 1 - j) * a[nn - 1 - j]
        a.append(-acc / (nn * (nn - 1 + q)))
    return a


def _phi_taylor_pair(space, lam, t, nterms=18):
    a = _phi_taylor_coeffs(space, lam, nterms)
    u = 0j
    v = 0j
    for nn in range(len(a) - 1, -1, -1):
        v = v * t + (nn * a[nn] if nn else 0j)
        u = u * t + a[nn]
    # v above accumulated sum n a_n t^n; derivative needs t^(n-1)
    return u, (v / t if t != 0.0 else (0j))


def phi_solution(space, lam, t_max):
    """The regular solution phi_lambda solved out to t_max (provenance 'phi')."""
    lam = complex(lam)
    t_max = float(t_max)
    if t_max <= T_TAYLOR:
        raise ValueError("t_max must exceed the Taylor patch 0.01")
    init = _phi_taylor_pair(space, lam, T_TAYLOR)
    sol = integrate_radial_ode(space, lam, 0, (T_TAYLOR, t_max), init,
                               provenance="phi")

    def ev(t):
        if t <= T_TAYLOR:
            return _phi_taylor_pair(space, lam, t)
        return sol._eval(t)

    return RadialSolution(
        space=space, lam=lam, potential_n=0, provenance="phi",
        t_lo=0.0, t_hi=t_max, _eval=ev,
        ts=sol.ts, values=sol.values, derivatives=sol.derivatives,
    )


def q_solution(space, lam, t_min, t_max=8.0, potential_n=0):
    """Q_lambda on [t_min, t_max]: series for t >= log 2, ODE continuation below."""
    lam = complex(lam)
    ser = _series(space, lam, int(potential_n))
    t_min = float(t_min)
    if t_min <= 0.0:
        raise ValueError("Q is singular at t = 0; need t_min > 0")
    back = None
    if t_min < T_SWITCH:
        init = ser.pair(T_SWITCH)
        back = integrate_radial_ode(space, lam, potential_n,
                                    (T_SWITCH, t_min), init,
                                    provenance="Q-continuation")

    def ev(t):
        if t >= T_SWITCH:
            return ser.pair(t)
        return back._eval(t)

    prov = "Q_plus" if lam.real >= 0 else "Q_minus"
    return RadialSolution(
        space=space, lam=lam, potential_n=int(potential_n), provenance=prov,
        t_lo=t_min, t_hi=max(t_max, T_SWITCH), _eval=ev,
        ts=(back.ts if back is not None else np.linspace(T_SWITCH, t_max, 9)),
        values=(back.values if back is not None else None),
        derivatives=(back.derivatives if back is not None else None),
    )


_T_BUCKETS = (0.3, 0.1, 0.03, 0.01, 0.003, 0.001)


@lru_cache(maxsize=256)
def _q_cached(space, lam, potential_n, t_min):
    return q_solution(space, lam, t_min, potential_n=potential_n)


def eval_Q(space, lam, t, potential_n=0):
    """Q_lambda(t): series for t >= log 2, cached backward continuation below."""
    t = float(t)
    if t <= 0.0:
        raise ValueError("eval_Q needs t > 0")
    lam = complex(lam)
    if t >= T_SWITCH:
        return _series(space, lam, int(potential_n)).value(t)
    for b in _T_BUCKETS:
        if t >= b:
            return _q_cached(space, lam, int(potential_n), b).at(t)[0]
    return q_solution(space, lam, 0.9 * t, potential_n=potential_n).at(t)[0]


@lru_cache(maxsize=256)
def _phi_cached(space, lam, t_cap):
    return phi_solution(space, lam, t_cap)


def eval_phi(space, lam, t):
    """The spherical function phi_lambda(t); entire in lambda, phi(0) = 1."""
    t = float(t)
    if t < 0.0:
        raise ValueError("eval_phi needs t >= 0")
    lam = complex(lam)
    if t <= T_TAYLOR:
        return _phi_taylor_pair(space, lam, t)[0]
    cap = 1.5
    while cap < t:
        cap *= 2.0
    return _phi_cached(space, lam, cap).at(t)[0]


# -- connection problem ------------------------------------------------------

_MATCH_CANDIDATES = (0.7, 0.8, 0.9, 1.0, 1.1, 1.2)


def _connection_solve(space, lam, sol):
    """Match sol against (Q_{-lambda}, Q_{+lambda}) at the best-conditioned t*.

    Returns (a_minus, a_plus, condition, t_star).  The basis carries the
    solution's own angular potential, otherwise the bases differ from the
    solution's span by O(n^2) at the matching point and the 1e-8 connection
    tolerance is unreachable.
    """
    lam = complex(lam)
    if _near_negative_integer(2 * lam, EXCLUSION_RADIUS) or \
       _near_negative_integer(-2 * lam, EXCLUSION_RADIUS):
        raise ResonantExponentError(
            f"2*lambda = {2*lam} is too close to an integer for a fundamental system"
        )
    n = sol.potential_n
    ser_p = _series(space, lam, n)
    ser_m = _series(space, -lam, n)
    best = None
    for ts in _MATCH_CANDIDATES:
        if not (sol.t_lo <= ts <= sol.t_hi):
            continue
        qm, dqm = ser_m.pair(ts)
        qp, dqp = ser_p.pair(ts)
        m = np.array([[qm, qp], [dqm, dqp]], dtype=complex)
        scale = np.linalg.norm(m, axis=0)
        if not np.all(scale > 0.0):
            continue
        cond = np.linalg.cond(m / scale)
        if best is None or cond < best[0]:
            best = (cond, ts, m, scale)
    if best is None:
        raise ValueError(
            "solution does not cover any matching point in "
            f"[{_MATCH_CANDIDATES[0]}, {_MATCH_CANDIDATES[-1]}]"
        )
    cond, ts, m, scale = best
    if cond > 1e13:
        raise IllConditionedError(
            f"matching matrix condition {cond:.2e} at t*={ts}", condition=cond
        )
    u, v = sol.at(ts)
    x = np.linalg.solve(m / scale, np.array([u, v], dtype=complex)) / scale
    return complex(x[0]), complex(x[1]), float(cond), ts


def connection_coefficients(space, lam, sol=None):
    """(a_minus, a_plus) with sol = a_minus Q_{-lambda} + a_plus Q_{lambda}.

    With sol omitted the spherical function is used, so the result is the
    c-function pair (c(lambda), c(-lambda)) computed by pure ODE machinery.
    """
    if sol is None:
        sol = phi_solution(space, complex(lam), _MATCH_CANDIDATES[-1] + 0.1)
    am, ap, _, _ = _connection_solve(space, lam, sol)
    return am, ap


# -- Wronskian limit ---------------------------------------------------------

_WRONSKIAN_NODES = 0.4 * 0.65 ** np.arange(12)


def wronskian_limit(space, lam):
    """lim_{t->0} J(t) * dQ_lambda/dt, extrapolated from a geometric grid.

    Equals -2 lambda c(lambda).  The limit is approached with integer powers
    of t together with t^2 log t terms (the two indicial roots differ by an
    integer), so plain Richardson is replaced by a small least-squares fit in
    that basis.  Warns (AccuracyWarning) when the fit's internal error
    estimate exceeds 1e-6 of the value.
    """
    lam = complex(lam)
    ser = _series(space, lam, 0)
    nodes = _WRONSKIAN_NODES
    init = ser.pair(T_SWITCH)
    back = integrate_radial_ode(space, lam, 0, (T_SWITCH, float(nodes[-1])),
                                init, provenance="Q-continuation")
    w = np.array([space.density_J_t(t) * back._eval(t)[1] for t in nodes])

    def design(ts):
        ts = np.asarray(ts)
        lg = np.log(ts)
        return np.column_stack([
            np.ones_like(ts), ts**2, ts**3, ts**4, ts**5, ts**6,
            ts**2 * lg, ts**4 * lg,
        ])

    fit, *_ = np.linalg.lstsq(design(nodes), w, rcond=None)
    refit, *_ = np.linalg.lstsq(design(nodes[2:]), w[2:], rcond=None)
    value = complex(fit[0])
    err = abs(value - complex(refit[0]))
    if err > 1e-6 * max(1.0, abs(value)):
        warnings.warn(
            f"Wronskian extrapolation uncertain: estimate {err:.2e} "
            f"(lambda={lam})",
            AccuracyWarning,
        )
    return value

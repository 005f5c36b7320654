"""Harish-Chandra c-function of a rank-one symmetric space.

With lambda in units of the short root alpha,

    c(lambda) = c0 * Gamma(lambda) 2^(-lambda)
                / ( Gamma((m_alpha/2 + 1 + lambda)/2)
                    * Gamma((m_alpha/2 + m_2alpha + lambda)/2) ),

where c0 is fixed by the normalization c(rho) = 1.  The two-sided product
czz(zeta) = c(i zeta) c(-i zeta) controls the meromorphic continuation of the
resolvent: its zeros in the upper half-plane are the resonances, and on the
real axis 1/czz is the Plancherel density of the spherical transform.

Gamma evaluations go through a Lanczos approximation (g = 607/128, 15 terms)
with reflection for Re z < 1/2.  At nonpositive-integer arguments the Gamma
factors are replaced by their local Laurent/Taylor data, so that values,
derivatives and zero/pole orders of c stay exact at the points where numerator
and denominator poles collide (these are exactly the points the resonance and
residue formulas need).
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

from .errors import PoleSignal
from .space import RankOneSpace

_LN2 = math.log(2.0)
_LOG_PI = math.log(math.pi)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
# log(i/2), the constant entering the unwound logarithm of sin(pi z)
_LOG_HALF_I = complex(-_LN2, 0.5 * math.pi)
_EULER = 0.5772156649015328606065120900824024

_INT_TOL = 1e-12

# Lanczos coefficients for g = 607/128 (Godfrey's 15-term set).
_LANCZOS_G = 4.7421875
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


def _nonpos_int(w, tol=_INT_TOL):
    """Return m >= 0 if w is within tol of the nonpositive integer -m."""
    w = complex(w)
    if abs(w.imag) > tol:
        return None
    m = round(w.real)
    if m > 0 or abs(w.real - m) > tol:
        return None
    return -m


def _expm1c(w):
    """exp(w) - 1 for complex w, accurate near w = 0."""
    if abs(w) > 0.25:
        return cmath.exp(w) - 1.0
    term = w
    total = w
    k = 1
    while abs(term) > 1e-20 * max(1.0, abs(total)):
        k += 1
        term *= w / k
        total += term
    return total


def _lanczos_log(z):
    # valid for Re z >= 0.5
    zz = z - 1.0
    x = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        x += _LANCZOS_C[k] / (zz + k)
    t = zz + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(x)


def _log_sin_pi(z):
    """Analytic branch of log sin(pi z) on Im z >= 0 that keeps the
    reflection formula for log-Gamma on the principal branch."""
    k = math.floor(z.real + 0.5)
    dz = z - k  # exact; e^{2 i pi z} = e^{2 i pi dz}
    one_minus_exp = -_expm1c(2j * math.pi * dz)
    return -1j * math.pi * z + _LOG_HALF_I + cmath.log(one_minus_exp)


def log_gamma(z):
    """Principal branch of log Gamma on C minus the poles {0, -1, -2, ...}.

    Raises PoleSignal at the poles.  Accuracy is ~1e-13 absolute away from
    them (reflection with reduced arguments keeps full accuracy arbitrarily
    close to a pole).
    """
    z = complex(z)
    m = _nonpos_int(z, tol=1e-13)
    if m is not None:
        raise PoleSignal(f"log_gamma pole at z = {-m}", at=-m, order=1)
    if z.real >= 0.5:
        return _lanczos_log(z)
    if z.imag >= 0.0:
        return _LOG_PI - _log_sin_pi(z) - _lanczos_log(1.0 - z)
    return log_gamma(z.conjugate()).conjugate()


def _lanczos_psi(z):
    # valid for Re z >= 0.5
    zz = z - 1.0
    x = _LANCZOS_C[0]
    xp = 0.0
    for k in range(1, len(_LANCZOS_C)):
        d = zz + k
        x += _LANCZOS_C[k] / d
        xp -= _LANCZOS_C[k] / (d * d)
    t = zz + _LANCZOS_G + 0.5
    return cmath.log(t) + (zz + 0.5) / t - 1.0 + xp / x


def _cot_pi(z):
    k = math.floor(z.real + 0.5)
    dz = z - k  # cot(pi z) has period 1, reduction is exact
    if dz.imag > 8.0:
        q = cmath.exp(2j * math.pi * dz)
        return 1j * (q + 1.0) / (q - 1.0)
    if dz.imag < -8.0:
        q = cmath.exp(-2j * math.pi * dz)
        return -1j * (q + 1.0) / (q - 1.0)
    return cmath.cos(math.pi * dz) / cmath.sin(math.pi * dz)


def digamma(z):
    """Digamma psi(z) = (log Gamma)'(z) for complex z off the poles."""
    z = complex(z)
    m = _nonpos_int(z, tol=1e-13)
    if m is not None:
        raise PoleSignal(f"digamma pole at z = {-m}", at=-m, order=1)
    if z.real >= 0.5:
        return _lanczos_psi(z)
    return _lanczos_psi(1.0 - z) - math.pi * _cot_pi(z)


def _psi_int(n):
    """psi at a positive integer: -gamma + H_{n-1}."""
    return -_EULER + sum(1.0 / k for k in range(1, n))


class CFunction:
    """c-function of one space, with exact local data at special points.

    The denominator arguments are a1 + lambda/2 and a2 + lambda/2 with
    a1 = (m_alpha/2 + 1)/2 and a2 = (m_alpha/2 + m_2alpha)/2.  Instances are
    immutable and cheap; ``for_space`` memoizes them per space.
    """

    def __init__(self, space: RankOneSpace):
        self.space = space
        self.a1 = (0.5 * space.m_alpha + 1.0) / 2.0
        self.a2 = (0.5 * space.m_alpha + space.m_2alpha) / 2.0
        rho = space.rho
        # c0 from c(rho) = 1; rho > 0 so all three Gammas are regular there
        self.log_c0 = -(
            _lanczos_log(complex(rho))
            - rho * _LN2
            - _lanczos_log(complex(self.a1 + rho / 2.0))
            - _lanczos_log(complex(self.a2 + rho / 2.0))
        ).real

    def __repr__(self):
        return f"CFunction({self.space})"

    # -- local structure ---------------------------------------------------

    def local_expansion(self, lam0):
        """Two leading terms of c at lam0.

        Returns (order, A, B) with c(lam0 + e) = e^order (A + B e + O(e^2)).
        order < 0 is a pole, order > 0 a zero; A is always nonzero.
        """
        lam0 = complex(lam0)
        factors = []
        c0 = math.exp(self.log_c0)
        factors.append((0, complex(c0), 0j))
        v = cmath.exp(-lam0 * _LN2)
        factors.append((0, v, -_LN2 * v))
        m = _nonpos_int(lam0)
        if m is None:
            g = cmath.exp(log_gamma(lam0))
            factors.append((0, g, g * digamma(lam0)))
        else:
            r = (-1.0) ** m / math.factorial(m)
            factors.append((-1, complex(r), r * _psi_int(m + 1)))
        for a in (self.a1, self.a2):
            z0 = a + lam0 / 2.0
            n = _nonpos_int(z0)
            if n is None:
                ig = cmath.exp(-log_gamma(z0))
                factors.append((0, ig, -0.5 * digamma(z0) * ig))
            else:
                s = (-1.0) ** n * math.factorial(n)
                # 1/Gamma(-n + e/2) = s e/2 (1 - psi(n+1) e/2 + O(e^2))
                factors.append((1, complex(0.5 * s), -0.25 * s * _psi_int(n + 1)))
        order = sum(f[0] for f in factors)
        lead = 1.0 + 0j
        ratio = 0j
        for _, fa, fb in factors:
            lead *= fa
            ratio += fb / fa
        return order, lead, lead * ratio

    def zero_order(self, lam):
        """Order of vanishing of c at lam (negative for a pole, 0 generic)."""
        return self.local_expansion(lam)[0]

    # -- evaluation --------------------------------------------------------

    def _is_special(self, lam):
        if _nonpos_int(lam) is not None:
            return True
        return any(_nonpos_int(a + lam / 2.0) is not None for a in (self.a1, self.a2))

    def value(self, lam):
        """c(lambda).  Returns 0 exactly at zeros; raises PoleSignal at poles."""
        lam = complex(lam)
        if self._is_special(lam):
            order, lead, _ = self.local_expansion(lam)
            if order < 0:
                raise PoleSignal(
                    f"pole of c of order {-order} at lambda = {lam}",
                    at=lam,
                    order=-order,
                    residue=lead if order == -1 else None,
                )
            return 0j if order > 0 else lead
        return cmath.exp(
            self.log_c0
            - lam * _LN2
            + log_gamma(lam)
            - log_gamma(self.a1 + lam / 2.0)
            - log_gamma(self.a2 + lam / 2.0)
        )

    def derivative(self, lam):
        """c'(lambda), valid at generic points and at zeros of c."""
        lam = complex(lam)
        order, lead, nxt = self.local_expansion(lam)
        if order < 0:
            raise PoleSignal(
                f"pole of c of order {-order} at lambda = {lam}",
                at=lam,
                order=-order,
            )
        if order == 0:
            return nxt
        if order == 1:
            return lead
        return 0j

    def __call__(self, lam):
        return self.value(lam)

    # -- two-sided product -------------------------------------------------

    def czz_expansion(self, zeta0):
        """Local data of czz(zeta) = c(i zeta) c(-i zeta) at zeta0."""
        zeta0 = complex(zeta0)
        o1, a1_, b1 = self.local_expansion(1j * zeta0)
        o2, a2_, b2 = self.local_expansion(-1j * zeta0)
        # compose with eps_lambda = +/- i eps_zeta
        order = o1 + o2
        phase = (1j) ** o1 * (-1j) ** o2
        lead = phase * a1_ * a2_
        nxt = phase * (1j * b1 * a2_ - 1j * a1_ * b2)
        return order, lead, nxt

    def czz(self, zeta):
        """czz(zeta) = c(i zeta) c(-i zeta); equals |c(i zeta)|^2 for real zeta."""
        order, lead, _ = self.czz_expansion(zeta)
        if order < 0:
            raise PoleSignal(
                f"pole of czz of order {-order} at zeta = {zeta}",
                at=complex(zeta),
                order=-order,
                residue=lead if order == -1 else None,
            )
        return 0j if order > 0 else lead

    def czz_derivative(self, zeta):
        order, lead, nxt = self.czz_expansion(zeta)
        if order < 0:
            raise PoleSignal(
                f"pole of czz of order {-order} at zeta = {zeta}",
                at=complex(zeta),
                order=-order,
            )
        if order == 0:
            return nxt
        if order == 1:
            return lead
        return 0j

    def plancherel_density(self, zeta):
        """Spherical Plancherel density |c(i zeta)|^{-2} at real zeta > 0."""
        z = complex(zeta)
        if abs(z.imag) > 1e-12 or z.real <= 0.0:
            raise ValueError("plancherel_density needs real zeta > 0")
        return 1.0 / abs(self.value(1j * z.real)) ** 2

    # -- zero set of czz in the upper half plane ---------------------------

    def resonance_step(self):
        """Spacing j of the czz zero progression i(rho + j k), or None.

        j = 2 when m_2alpha != 0; j = 1 when m_2alpha = 0 and m_alpha is odd;
        no zeros at all when m_2alpha = 0 and m_alpha is even.
        """
        if self.space.m_2alpha != 0:
            return 2
        if self.space.m_alpha % 2 == 1:
            return 1
        return None

    def czz_zeros_upper(self, count):
        """First ``count`` zeros of czz in Im zeta > 0, bottom up."""
        j = self.resonance_step()
        if j is None:
            return []
        rho = self.space.rho
        return [1j * (rho + j * k) for k in range(count)]


@lru_cache(maxsize=None)
def for_space(space: RankOneSpace) -> CFunction:
    """Memoized CFunction per space."""
    return CFunction(space)

"""The scattering matrix on the spherical principal series.

The scattering matrix is fixed by the boundary-value exchange
S_zeta : bv_{rho - i zeta} u -> bv_{rho + i zeta} u on eigenfunctions, and
on the spherical function this reduces to the scalar

    s(zeta) = c(-i zeta) / c(i zeta),

the eigenvalue of S_zeta on constants.  It satisfies s(zeta) s(-zeta) = 1
and |s| = 1 on the real axis, and is meromorphic with at most simple poles
on the imaginary axis: in the upper half-plane the poles are precisely the
resonances, in the lower half-plane they sit among the candidate lattice
zeta = -i k/2 (poles of the standard intertwiner), and zeta = 0 is never a
pole (the c-function pole at 0 cancels it).

On the hyperbolic plane the operator is diagonal on circle Fourier modes
(K-types), each of which is one-dimensional here, so the full operator is
represented by its eigenvalue sequence; ktype_eigenvalue computes the n-th
eigenvalue by solving the connection problem for the K-type radial profile
rather than from any closed form.

Pole detection on the axis works with the reciprocal w(sigma) = 1/s(i sigma)
= c(-sigma)/c(sigma), which is real there; poles of s are zeros of w, which
are well conditioned for sign-change bracketing, whereas magnitude blowup of
s is not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import model_h2
from .boundary import boundary_pair, bv_limit
from .cfunction import for_space
from .errors import PoleSignal, ResonantExponentError
from .radial import eval_phi
from .resonances import ResonanceRecord, enumerate_resonances
from .space import RankOneSpace

KIND_RESONANCE = "resonance"
KIND_INTERTWINER = "intertwiner"

_LATTICE_TOL = 1e-6
_ORIGIN_TOL = 1e-13


@dataclass(frozen=True)
class ScatteringPole:
    """A pole of the scattering matrix with its kind and scalar residue."""

    zeta: complex
    kind: str
    residue_scalar: complex

    def __post_init__(self):
        if self.kind not in (KIND_RESONANCE, KIND_INTERTWINER):
            raise ValueError(f"unknown pole kind {self.kind!r}")


def _dist_to_integers(w):
    w = complex(w)
    return math.hypot(w.real - round(w.real), w.imag)


def scalar(space, zeta):
    """Eigenvalue c(-i zeta)/c(i zeta) of the scattering matrix on constants.

    Returns 0 where c(i zeta) has a pole, and raises PoleSignal (with the
    scalar residue in zeta attached) where the ratio itself has a pole:
    at resonances c(i zeta) = 0, and at intertwiner poles c(-i zeta) = inf.
    """
    zeta = complex(zeta)
    if abs(zeta) < _ORIGIN_TOL:
        raise ValueError("zeta = 0 is excluded: it is never a scattering pole")
    cf = for_space(space)
    lam = 1j * zeta
    try:
        den = cf.value(lam)
    except PoleSignal:
        return 0j
    if den == 0:
        num = cf.value(-lam)
        residue = -1j * num / cf.derivative(lam)
        raise PoleSignal(
            f"scattering pole (resonance) at zeta = {zeta}",
            at=zeta,
            order=1,
            residue=residue,
        )
    try:
        num = cf.value(-lam)
    except PoleSignal as sig:
        raise PoleSignal(
            f"scattering pole (intertwiner) at zeta = {zeta}",
            at=zeta,
            order=1,
            residue=1j * sig.residue / den,
        ) from sig
    return num / den


def ktype_eigenvalue(zeta, n):
    """Eigenvalue of S_zeta on the n-th circle Fourier mode (hyperbolic plane).

    Solves the connection problem for the K-type radial profile at
    lambda = i zeta and returns bv_{rho+i zeta} / bv_{rho-i zeta}; for n = 0
    this reproduces scalar() through an independent code path.
    """
    zeta = complex(zeta)
    lam = 1j * zeta
    if _dist_to_integers(2 * lam) < _LATTICE_TOL:
        raise ResonantExponentError(
            f"2 i zeta = {2 * lam} is within {_LATTICE_TOL:g} of an integer: "
            "the boundary exponents collide and the connection problem "
            "degenerates"
        )
    sol = model_h2.ktype_solution(lam, n)
    pair = boundary_pair(model_h2.H2, lam, sol)
    return pair.a_plus / pair.a_minus


def classify_poles(space, count):
    """Scattering poles with kinds: resonances above, intertwiner poles below.

    The upper half-plane list is resonances.enumerate_resonances(space, count);
    the lower half-plane candidates zeta = -i k/2, k = 1..count, are flagged
    as intertwiner poles exactly when c has a pole at -k/2 (then c(-i zeta)
    blows up while c(i zeta) = c(k/2) stays finite and nonzero).  zeta = 0 is
    never included.
    """
    cf = for_space(space)
    poles = []
    for rec in enumerate_resonances(space, count):
        lam = 1j * rec.zeta
        residue = -1j * cf.value(-lam) / cf.derivative(lam)
        poles.append(ScatteringPole(rec.zeta, KIND_RESONANCE, residue))
    for k in range(1, count + 1):
        order, lead, _ = cf.local_expansion(complex(-0.5 * k))
        if order >= 0:
            continue
        residue = 1j * lead / cf.value(complex(0.5 * k))
        poles.append(ScatteringPole(-0.5j * k, KIND_INTERTWINER, residue))
    return poles


@dataclass(frozen=True)
class ResidueRelationReport:
    """Two routes to the scattering residue at a resonance and their gap."""

    zeta: complex
    scattering_side: complex
    resolvent_side: complex
    relative_gap: float
    boundary_value: complex
    boundary_value_error: float


def residue_relation_check(rec: ResonanceRecord, radius=1e-2, nodes=64):
    """Check Res[s] = 2 i kappa zeta c(-i zeta) residue_scalar bv_{rho+i zeta} phi
    at a hyperbolic-plane resonance, all factors computed independently.

    The left side is a contour quadrature of the scalar scattering matrix
    around the pole.  On the right, the boundary value of the spherical
    function is extracted by the Fatou-limit route (the connection solver is
    unavailable here: at a resonance 2 lambda is an integer and the exponents
    collide); phi_{i zeta} carries the growing exponent rho + i zeta, so the
    limit is taken at the reflected parameter.  Analytically the boundary
    value equals c(-i zeta), which makes both sides -i c(-i zeta)/c'(i zeta);
    neither side is computed from that closed form.
    """
    space = model_h2.H2
    cf = for_space(space)
    z0 = complex(rec.zeta)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    ring = np.exp(1j * theta)
    svals = np.array([scalar(space, z0 + radius * w) for w in ring])
    scattering_side = complex(radius * np.mean(svals * ring))

    lam_limit = -1j * z0                     # = rho + j k, real and > rho
    samples = []
    for m in range(10):
        y = 0.25 * 0.5**m
        t = -math.log(y)
        samples.append((y, eval_phi(space, 1j * z0, t)))
    bv, bv_err = bv_limit(space, lam_limit, samples)
    resolvent_side = complex(
        2j * space.kappa * z0 * cf.value(-1j * z0) * rec.residue_scalar * bv
    )
    gap = abs(scattering_side - resolvent_side) / max(
        abs(scattering_side), abs(resolvent_side)
    )
    return ResidueRelationReport(
        zeta=z0,
        scattering_side=scattering_side,
        resolvent_side=resolvent_side,
        relative_gap=gap,
        boundary_value=bv,
        boundary_value_error=bv_err,
    )


def find_scalar_poles(space, im_lo=-4.95, im_hi=4.95, step=0.01):
    """Locate the poles of scalar() on the imaginary-axis segment by scanning
    w(sigma) = 1/s(i sigma) = c(-sigma)/c(sigma) for zeros.

    w is real on the segment.  Nodes where w vanishes identically (lattice
    hits) are recorded directly; sign changes between regular nodes are
    refined by brentq and accepted only if w is actually small there, which
    rejects the sign flips across poles of w (those are zeros of s).  Returns
    the pole locations i sigma sorted by imaginary part; sigma = 0 is skipped.
    """
    cf = for_space(space)

    def w(sig):
        if abs(sig) < _ORIGIN_TOL:
            return math.nan
        try:
            den = cf.value(complex(sig))
        except PoleSignal:
            return 0.0
        try:
            num = cf.value(complex(-sig))
        except PoleSignal:
            return 1e18
        if den == 0:
            return 1e18
        return (num / den).real

    k_lo = math.ceil(im_lo / step - 1e-9)
    k_hi = math.floor(im_hi / step + 1e-9)
    sigmas = np.arange(k_lo, k_hi + 1) * step
    vals = np.array([w(s) for s in sigmas])

    poles = [s for s, v in zip(sigmas, vals) if v == 0.0]
    for i in range(len(sigmas) - 1):
        a, b = vals[i], vals[i + 1]
        if not (np.isfinite(a) and np.isfinite(b)) or abs(a) >= 1e18 or abs(b) >= 1e18:
            continue
        if a == 0.0 or b == 0.0 or a * b > 0:
            continue
        root = brentq(w, sigmas[i], sigmas[i + 1], xtol=1e-12)
        if abs(w(root)) < 1e-6:
            poles.append(root)
    return sorted((1j * s for s in poles), key=lambda z: z.imag)

"""Resonances: poles of the meromorphically continued resolvent.

The continued resolvent zeta -> R_zeta has poles exactly at the zeros of
czz(zeta) = c(i zeta) c(-i zeta) with Im zeta > 0.  These zeros form the
arithmetic progression zeta = i (rho + j k), k = 0, 1, 2, ..., with step
j = 2 when m_2alpha != 0 and j = 1 when m_2alpha = 0 and m_alpha is odd;
for m_2alpha = 0 and m_alpha even there are no zeros and the resolvent
continues to an entire family.  All poles are simple, with rank-finite
residue operator whose radial kernel is

    Res R_zeta (t) = -1 / (2 kappa zeta c'(i zeta) c(-i zeta)) * phi_{i zeta}(t),

i.e. a scalar multiple of the spherical function at the resonant parameter.

Enumeration seeds the progression analytically, polishes each point by a
Newton iteration on czz, and certifies the result (tiny value, non-tiny
derivative).  The seeds are exact zeros of the implemented c-function, so a
certification failure is not a root-finding problem: it means the c-function
itself is broken, and is reported as EnumerationError.  An optional winding
check counts zeros-minus-poles of czz over a thin rectangle enclosing the
scanned segment of the positive imaginary axis and compares against the
lattice prediction, guarding against zeros the progression would miss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import model_h2
from .cfunction import for_space
from .errors import EnumerationError, IndeterminateRankError
from .radial import eval_phi
from .resolvent import kernel
from .space import RankOneSpace

_CERT_VALUE = 1e-12   # |czz| at a certified zero
_CERT_SLOPE = 1e-8    # |d czz / d zeta| at a certified (simple) zero
_NEWTON_MAX = 12


@dataclass(frozen=True)
class ResonanceRecord:
    """One resolvent pole: location, progression index, residue data."""

    zeta: complex
    k: int
    residue_scalar: complex
    multiplicity_estimate: Optional[int] = None


def _polish(cf, seed):
    """Newton-polish a seed zero of czz and certify it."""
    z = complex(seed)
    for _ in range(_NEWTON_MAX):
        val = cf.czz(z)
        if abs(val) < _CERT_VALUE:
            break
        z = z - val / cf.czz_derivative(z)
    val = cf.czz(z)
    slope = cf.czz_derivative(z)
    if abs(val) >= _CERT_VALUE or abs(slope) <= _CERT_SLOPE:
        raise EnumerationError(
            f"zero certification failed at zeta = {z}: |czz| = {abs(val):.3e}, "
            f"|czz'| = {abs(slope):.3e}; the c-function data is inconsistent"
        )
    return z


def _multiplicity(space, k):
    """SVD rank estimate of the residue operator; only the hyperbolic-plane
    boundary model supports this, everything else reports None."""
    if space != model_h2.H2:
        return None
    try:
        return model_h2.residue_rank(k)
    except IndeterminateRankError:
        return None


def enumerate_resonances(space, count, verify_complete=False):
    """First ``count`` resonances, bottom-up along the positive imaginary axis.

    Each record carries the certified pole location, its index k in the
    progression i(rho + j k), the residue scalar of the resolvent pole, and
    (on the hyperbolic plane) an SVD estimate of the residue rank.  With
    ``verify_complete=True`` a winding count over the enclosing rectangle
    cross-checks that the progression misses no czz zero.
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    cf = for_space(space)
    seeds = cf.czz_zeros_upper(count)
    records = []
    for k, seed in enumerate(seeds):
        zeta = _polish(cf, seed)
        lam = 1j * zeta                     # = -(rho + j k), real
        cprime = cf.derivative(lam)         # c has a simple zero at lam
        cminus = cf.value(-lam)
        rs = -1.0 / (2.0 * space.kappa * zeta * cprime * cminus)
        records.append(
            ResonanceRecord(
                zeta=zeta,
                k=k,
                residue_scalar=rs,
                multiplicity_estimate=_multiplicity(space, k),
            )
        )
    if verify_complete:
        _winding_check(space, cf)
    return records


def residue_scalar(space, rec):
    """Scalar part of the residue of R_zeta at the resonance ``rec``."""
    cf = for_space(space)
    lam = 1j * rec.zeta
    return -1.0 / (2.0 * space.kappa * rec.zeta * cf.derivative(lam) * cf.value(-lam))


def residue_kernel(space, rec, t):
    """Radial section of the residue operator: residue_scalar * phi_{i zeta}(t)."""
    return rec.residue_scalar * eval_phi(space, 1j * rec.zeta, t)


def residue_contour_probe(space, rec, t, radius=1e-2, nodes=64):
    """Contour-quadrature oracle for the residue scalar.

    Integrates kernel(zeta, t) / phi_{i zeta}(t) over a small circle around
    the resonance with the N-point trapezoid rule (spectrally accurate on a
    circle).  Since the kernel's polar part is residue_scalar * phi_{i zeta0},
    the quotient has residue exactly residue_scalar, independent of t.

    Returns (residue_estimate, second_moment_rel):  the second Laurent
    moment (1/2 pi i) contour-int (zeta - zeta0) kernel dzeta, relative to
    the first, which vanishes for a simple pole and therefore measures both
    quadrature health and pole simplicity.
    """
    z0 = complex(rec.zeta)
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    ring = np.exp(1j * theta)
    zs = z0 + radius * ring
    kern = np.array([kernel(space, z, t) for z in zs])
    sph = np.array([eval_phi(space, 1j * z, t) for z in zs])
    first = radius * np.mean((kern / sph) * ring)
    kernel_first = radius * np.mean(kern * ring)
    kernel_second = radius**2 * np.mean(kern * ring**2)
    return complex(first), abs(kernel_second) / abs(kernel_first)


# -- completeness guard ----------------------------------------------------

def _lattice_candidates(space, cf, lo, hi):
    """Points i*y, lo < y < hi, where czz can vanish or blow up.

    On the positive imaginary axis czz(iy) = c(-y) c(y) and c(y) is regular
    and nonzero for y > 0, so the candidates are the pole lattice of Gamma
    (y integer) and the zero lattices of the two reciprocal Gamma factors
    (y in 2 a_i + 2 N_0); the resonance progression is a subset of the
    latter.
    """
    ys = set()
    for m in range(1, int(math.floor(hi)) + 1):
        if lo < m < hi:
            ys.add(float(m))
    for a in (cf.a1, cf.a2):
        y = 2.0 * a
        while y < hi:
            if y > lo:
                ys.add(round(y, 9))
            y += 2.0
    return sorted(ys)


def _winding_check(space, cf, half_width=0.25, samples_per_side=800):
    """Argument-principle count of czz zeros minus poles over a rectangle
    [-w, w] x [lo, hi] enclosing the scanned axis segment, compared with the
    net order predicted by the local expansions on the lattice."""
    lo = 0.11
    hi = 3.0 * space.rho + 6.13
    corners = [
        complex(-half_width, lo),
        complex(half_width, lo),
        complex(half_width, hi),
        complex(-half_width, hi),
        complex(-half_width, lo),
    ]
    vals = []
    for a, b in zip(corners[:-1], corners[1:]):
        s = np.linspace(0.0, 1.0, samples_per_side, endpoint=False)
        for x in s:
            vals.append(cf.czz(a + (b - a) * x))
    vals.append(vals[0])
    vals = np.array(vals)
    turns = np.sum(np.angle(vals[1:] / vals[:-1])) / (2.0 * np.pi)
    expected = 0
    for y in _lattice_candidates(space, cf, lo, hi):
        order, _, _ = cf.local_expansion(complex(-y))
        expected += order
    if abs(turns - round(turns)) > 0.2 or round(turns) != expected:
        raise EnumerationError(
            f"winding count {turns:.3f} over Im in ({lo:.2f}, {hi:.2f}) "
            f"disagrees with the lattice prediction {expected}; czz has "
            "zeros or poles off the expected set"
        )

"""Spectral scattering on rank-one symmetric spaces.

Geometry in, identities out: build a space from its root multiplicities
(``space_from_name`` or ``make_space``), then evaluate the c-function
(``for_space``), the radial eigenfunctions (``eval_phi``, ``eval_Q``), the
continued resolvent kernel (``kernel``), the resonance table
(``enumerate_resonances``), and the scalar scattering coefficient
(``scattering.scalar``).  ``verify.run_all`` exercises every identity the
library claims.
"""

from .boundary import boundary_pair, bv_limit
from .cfunction import for_space
from .radial import (
    connection_coefficients,
    eval_Q,
    eval_phi,
    phi_solution,
    wronskian_limit,
)
from .resolvent import apply_radial, kernel, resolvent_difference
from .resonances import enumerate_resonances, residue_kernel
from .space import RankOneSpace, make_space, space_from_name

__all__ = [
    "RankOneSpace",
    "apply_radial",
    "boundary_pair",
    "bv_limit",
    "connection_coefficients",
    "enumerate_resonances",
    "eval_Q",
    "eval_phi",
    "for_space",
    "kernel",
    "make_space",
    "phi_solution",
    "resolvent_difference",
    "residue_kernel",
    "space_from_name",
    "wronskian_limit",
]

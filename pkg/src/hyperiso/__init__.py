"""p-adic Newton iteration on the Mumford coordinate U(t, z).

Solves H(X) X' = G for the roots of U without computing them, then
reconstructs rational representations by Pade approximation.
"""

from .errors import HyperisoError, InsufficientPrecision
from .geometry import (
    CurveData,
    CurvePoint,
    build_G_matrix,
    build_G_mult_ell,
    lift_curve,
    local_expansion,
    mult_ell_initial_data,
    mumford_from_points,
)
from .newton import RHS, MumfordState, build_initial_state, newton_step, residual, solve, solve_full
from .padic import FixedPointElem, PrecisionContext, arith, divide_by_p_power, inv, sqrt
from .poly import (
    SeriesPoly,
    deriv_sums,
    hankel_apply,
    inverse_sqrt_mod,
    min_poly_of,
    modular_compose,
    newton_sums,
    quotient_inv,
    quotient_mul,
)
from .rational import Fraction, RationalRepresentation, evaluate, pade, reconstruct
from .series import TruncatedSeries, series_arith, series_derive, series_integrate

__all__ = [name for name in dir() if not name.startswith("_")]

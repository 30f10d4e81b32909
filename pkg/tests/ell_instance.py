"""The genus-2 multiplication-by-ell instance shared by several test modules."""

from functools import lru_cache

from hyperiso import geometry, newton, oracle, rational
from hyperiso.errors import PoleAtPoint
from hyperiso.padic import PrecisionContext, floor_log

P = 11
F_BAR = [9, 9, 9, 10, 0, 1]  # z^5 + 10 z^3 + 9 z^2 + 9 z + 9, squarefree over F_11
BASE_U, BASE_BRANCH = 1, 4
N_DIGITS = 3


@lru_cache(maxsize=None)
def solve_ell(ell: int, n: int, N: int = N_DIGITS, M: int | None = None):
    M = M or N + floor_log(n, P)
    ctx = PrecisionContext(P, M)
    curve = geometry.lift_curve(F_BAR, ctx)
    Q = geometry.point_from_u(curve, BASE_U, BASE_BRANCH)
    U0, V0 = geometry.mult_ell_initial_data(curve, Q, ell)
    G = geometry.build_G_mult_ell(curve, Q, ell, n)
    res = newton.solve_full(curve.poly(), U0, V0, G, n, N, ctx)
    return curve, Q, res, G


def reconstruct_ell(ell: int, n: int, bound: int, N: int = N_DIGITS):
    curve, Q, res, _ = solve_ell(ell, n, N)
    _, v = geometry.local_expansion(curve, Q, n)
    return rational.reconstruct(res.U, res.state.V, bound, Q.u0, v)


def curve_points():
    """All affine non-Weierstrass points of the reduced curve over F_11."""
    out = []
    for x in range(P):
        fx = sum(c * x**i for i, c in enumerate(F_BAR)) % P
        for y in range(1, P):
            if y * y % P == fx:
                out.append((x, y))
    return out


def compare_with_cantor(rep, ell: int, points):
    """(agreements, comparisons) of evaluate(rep) against [ell](P - oo) by Cantor over F_11."""
    agree = total = 0
    for x, y in points:
        D = oracle.cantor_mul(oracle.point_divisor(x, y, P), ell, F_BAR, P)
        if len(D.a) - 1 != 2:
            continue
        try:
            Ue, Ve = rational.evaluate(rep, x, y)
        except PoleAtPoint:
            continue
        total += 1
        agree += list(D.a) == Ue and list(D.b) + [0] * (2 - len(D.b)) == Ve
    return agree, total

"""Doubling Newton iteration on the first Mumford coordinate U(t, z).

One step takes U known mod t^m to U known mod t^n (n <= 2m) without leaving
O_K: the roots x_i(t) of U are never computed, only symmetric functions of
them (power sums, interpolating polynomials in the quotient ring).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Sequence

from . import _kron, _upoly
from .errors import BadInitialData, NotSeparable, WeierstrassImage
from .padic import PrecisionContext, floor_log
from .poly import (
    SeriesPoly,
    deriv_sums,
    hankel_apply,
    inverse_sqrt_mod,
    min_poly_of,
    newton_sums,
    quotient_inv,
    quotient_mul,
)
from .errors import InsufficientPrecision
from .series import TruncatedSeries, series_integrate

# Row k (k = 1..g) of H(X) is (x_j^(k-1) / y_j)_j.  The right-hand side
# builders in ``geometry`` use the same exponent offset.
H_ROW_EXPONENT_OFFSET = 0

STEP_LABELS = tuple(f"step{i}" for i in range(1, 8))


@dataclass
class RHS:
    """Right-hand side G(t) = (G_1, ..., G_g) of H(X) X' = G."""

    G: list[TruncatedSeries]

    def __post_init__(self):
        if not self.G:
            raise ValueError("empty right-hand side")
        ctx = self.G[0].ctx
        for s in self.G:
            ctx.check(s.ctx)

    def __len__(self):
        return len(self.G)

    @property
    def n(self) -> int:
        return min(s.n for s in self.G)

    def reduce(self, ctx: PrecisionContext) -> "RHS":
        return RHS([s.reduce(ctx) for s in self.G])


def _as_rhs(G) -> RHS:
    return G if isinstance(G, RHS) else RHS(list(G))


@dataclass
class MumfordState:
    """Approximation X_m(t) encoded by (U, V, W) mod t^order.

    U is monic of degree g, V interpolates the y_i and W the 1/y_i.
    """

    U: SeriesPoly
    V: SeriesPoly
    W: SeriesPoly
    order: int
    f: SeriesPoly
    loss: int = 0

    @property
    def g(self) -> int:
        return self.U.degree

    @property
    def ctx(self) -> PrecisionContext:
        return self.U.ctx


def build_initial_state(U0: SeriesPoly, V0: SeriesPoly, f: SeriesPoly) -> MumfordState:
    """Order-1 state from the t = 0 data; W and V are lifted to full p-adic precision."""
    ctx = U0.ctx
    ctx.check(V0.ctx)
    ctx.check(f.ctx)
    U0, V0, f = U0.truncate(1).normalized(), V0.truncate(1), f.truncate(1).normalized()
    g = U0.degree
    if g < 1 or not U0.monic:
        raise ValueError("U0 must be monic of degree >= 1")
    u0 = U0.at_t0()
    if not _upoly.is_squarefree_residue(ctx, u0):
        raise NotSeparable("U0 has a repeated root mod p")
    if not _upoly.coprime_residue(ctx, V0.at_t0(), u0):
        raise WeierstrassImage("V0 vanishes at a root of U0 mod p")
    res = ctx.residue
    _, rem = _upoly.divmod_(res, _upoly.to_residue(ctx, _upoly.sub(ctx, f.at_t0(), _upoly.mul(ctx, V0.at_t0(), V0.at_t0()))), _upoly.to_residue(ctx, u0))
    if rem:
        raise BadInitialData("U0 does not divide f - V0^2 mod p")
    W0 = quotient_inv(V0, U0)
    W, V = inverse_sqrt_mod(f, U0, W0, known=1)
    return MumfordState(U0, V, W, 1, f, 0)


def _integration_loss(n: int, p: int) -> int:
    # divisions by 1..n-1 happen when integrating a series of order n - 1
    return floor_log(n - 1, p) if n > 1 else 0


def newton_step(
    state: MumfordState,
    G,
    target: int,
    profile: _kron.Profile | None = None,
    step4_sign: int = 1,
) -> MumfordState:
    """Lift ``state`` from order m to order ``target`` (m < target <= 2m)."""
    G = _as_rhs(G)
    m, g, ctx = state.order, state.g, state.ctx
    if not m < target <= 2 * m:
        raise ValueError(f"target order {target} must lie in ({m}, {2 * m}]")
    if len(G) != g:
        raise ValueError(f"right-hand side has {len(G)} entries, genus is {g}")
    if G.n < target - 1:
        raise ValueError(f"right-hand side known to order {G.n}, need {target - 1}")
    prof = profile or _kron.Profile()
    n = target
    U = state.U.truncate(n)

    with prof.step("step1"):
        W, V = inverse_sqrt_mod(state.f, U, state.W, known=m)
    with prof.step("step2"):
        s = newton_sums(U, 2 * g - 1)
        r = deriv_sums(U, 2 * g - 1)
    with prof.step("step3"):
        w = W.zcoeffs + [TruncatedSeries.zero(ctx, n)] * (g - len(W.rows))
        w = w[:g]
        HdX = hankel_apply(r, w)
        HX = hankel_apply(s, w)
    with prof.step("step4"):
        F = []
        for k in range(g):
            integrand = G.G[k].truncate(n - 1) - HdX[k]
            integral = series_integrate(integrand)
            F.append(HX[k] + integral if step4_sign > 0 else HX[k] - integral)
    with prof.step("step5"):
        # D = F_1 z^g + ... + F_g z; Q collects z-degrees g+1..2g of U D shifted down
        width = n * ctx.d
        D = [[0] * width] + [F[g - j].coeffs for j in range(1, g + 1)]
        Q = _kron.mul_rows(ctx, U.rows, D, n, rows=range(g + 1, 2 * g + 1))
        Q = SeriesPoly(ctx, Q, n, max(f.loss for f in F))
    with prof.step("step6"):
        dU_inv = quotient_inv(U.dz(), U)
        T = quotient_mul(quotient_mul(Q, V, U), dU_inv, U)
    with prof.step("step7"):
        U_new = min_poly_of(T, U)
    with prof.step("refresh"):
        W_new, V_new = inverse_sqrt_mod(state.f, U_new, W, known=m)
    # Rounding errors in digits already lost are not amplified by later
    # integrations (first-order terms cancel), so losses do not accumulate.
    loss = max(state.loss, _integration_loss(n, ctx.p))
    for P in (U_new, V_new, W_new):
        P.loss = loss
    return MumfordState(U_new, V_new, W_new, n, state.f, loss)


def order_schedule(n: int) -> list[int]:
    """Orders visited by the driver: 1, 2, 4, ..., capped to land on n."""
    orders = [1]
    while orders[-1] < n:
        orders.append(min(2 * orders[-1], n))
    return orders


@dataclass
class SolveResult:
    state: MumfordState
    U: SeriesPoly
    N: int
    profile: _kron.Profile = field(default_factory=_kron.Profile)

    @property
    def loss(self) -> int:
        return self.state.loss


def required_digits(N: int, n: int, p: int) -> int:
    return N + floor_log(n, p)


def solve_full(
    f: SeriesPoly,
    U0: SeriesPoly,
    V0: SeriesPoly,
    G,
    n: int,
    N: int,
    ctx: PrecisionContext | None = None,
    profile: _kron.Profile | None = None,
    step4_sign: int = 1,
) -> SolveResult:
    """Run the doubling iteration up to order n and keep the final state."""
    ctx = ctx or U0.ctx
    ctx.check(U0.ctx)
    if ctx.M < required_digits(N, n, ctx.p):
        warnings.warn(
            f"M = {ctx.M} < N + floor(log_p n) = {required_digits(N, n, ctx.p)};"
            " the top digits of the result are not guaranteed",
            InsufficientPrecision,
            stacklevel=2,
        )
    G = _as_rhs(G)
    prof = profile or _kron.Profile()
    state = build_initial_state(U0, V0, f)
    for target in order_schedule(n)[1:]:
        state = newton_step(state, G, target, prof, step4_sign)
    out = state.U.reduce(ctx.with_precision(min(N, ctx.M)))
    return SolveResult(state, out, N, prof)


def solve(f, U0, V0, G, n: int, N: int, ctx: PrecisionContext | None = None) -> SeriesPoly:
    """U(t, z) = prod (z - x_i(t)) mod (p^N, t^n)."""
    return solve_full(f, U0, V0, G, n, N, ctx).U


def residual(state: MumfordState, G) -> list[TruncatedSeries]:
    """H(X) X' - G at order ``state.order - 1`` (zero for a valid state)."""
    G = _as_rhs(G)
    g, m, ctx = state.g, state.order, state.ctx
    if m < 2:
        return [TruncatedSeries.zero(ctx, 0) for _ in range(g)]
    r = deriv_sums(state.U, 2 * g - 1)
    w = (state.W.zcoeffs + [TruncatedSeries.zero(ctx, m)] * g)[:g]
    HdX = hankel_apply(r, w)
    return [HdX[k] - G.G[k].truncate(m - 1) for k in range(g)]


def residual_order(state: MumfordState, G, digits: int | None = None) -> int:
    """t-adic order to which the residual vanishes mod p^digits (default M - loss)."""
    if digits is None:
        digits = state.ctx.M - state.loss
    res = residual(state, G)
    if not res or res[0].n == 0:
        return 0
    return min(s.valuation(digits) for s in res)


def mumford_invariant_holds(state: MumfordState, digits: int | None = None) -> bool:
    """U divides f - V^2 mod (p^digits, t^order)."""
    from .poly import reduce_mod

    U = state.U
    rem = reduce_mod(state.f.truncate(U.n) - state.V * state.V, U)
    mod = state.ctx.p ** (digits if digits is not None else state.ctx.M - state.loss)
    return all(x % mod == 0 for row in rem.rows for x in row)

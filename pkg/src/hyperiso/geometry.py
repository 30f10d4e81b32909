"""Curves y^2 = f(x), local expansions, and builders for G(t) and (U0, V0)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _upoly
from .errors import (
    BadInitialData,
    CollidingRoots,
    NotRational,
    SingularReduction,
    WeierstrassPoint,
)
from .newton import H_ROW_EXPONENT_OFFSET, RHS
from .padic import PrecisionContext
from .poly import SeriesPoly
from .series import TruncatedSeries, series_inverse, series_sqrt


@dataclass(frozen=True)
class CurveData:
    """Hyperelliptic curve y^2 = f(x) with deg f = 2g + 1 and smooth reduction.

    ``f`` holds raw context elements, ascending.
    """

    f: tuple
    ctx: PrecisionContext

    def __post_init__(self):
        f = _upoly.trim(self.ctx, list(self.f))
        object.__setattr__(self, "f", tuple(f))
        if len(f) < 4 or len(f) % 2:
            raise ValueError(f"f must have odd degree >= 3, got degree {len(f) - 1}")
        if not self.ctx.is_unit(f[-1]):
            raise SingularReduction("leading coefficient of f vanishes mod p")
        if not _upoly.is_squarefree_residue(self.ctx, f):
            raise SingularReduction("f is not squarefree mod p")

    @property
    def g(self) -> int:
        return (len(self.f) - 2) // 2

    def poly(self, n: int = 1) -> SeriesPoly:
        return SeriesPoly(self.ctx, [list(c) for c in self.f], n)

    def __call__(self, x) -> tuple:
        return _upoly.evaluate(self.ctx, list(self.f), self.ctx.raw(x))

    def to_json(self) -> dict:
        return {"ctx": self.ctx.to_json(), "g": self.g, "f": [self.ctx.elem(c).to_json() for c in self.f]}


@dataclass(frozen=True)
class CurvePoint:
    u0: tuple
    v0: tuple


def lift_curve(f_bar: Sequence[int], ctx: PrecisionContext) -> CurveData:
    """Lift a residue-field quintic (or any odd degree) by least nonnegative representatives."""
    coeffs = [ctx.raw(c % ctx.p if isinstance(c, int) else c) for c in f_bar]
    coeffs = _upoly.trim(ctx, coeffs)
    if len(coeffs) < 4 or len(coeffs) % 2 or not ctx.is_unit(coeffs[-1]):
        raise ValueError(f"expected a polynomial of odd degree >= 3 over F_p, got {list(f_bar)}")
    return CurveData(tuple(coeffs), ctx)


def make_point(curve: CurveData, u0, v0) -> CurvePoint:
    """Validate v0^2 = f(u0) and package the point."""
    ctx = curve.ctx
    u, v = ctx.raw(u0), ctx.raw(v0)
    if ctx.mul(v, v) != curve(u):
        raise BadInitialData("v0^2 != f(u0)")
    return CurvePoint(u, v)


def point_from_u(curve: CurveData, u0, branch) -> CurvePoint:
    """The point above u0 whose y-coordinate reduces to ``branch``."""
    ctx = curve.ctx
    u = ctx.raw(u0)
    return CurvePoint(u, ctx.sqrt(curve(u), ctx.raw(branch)))


def _f_of_shift(curve: CurveData, u0: tuple, n: int) -> TruncatedSeries:
    """f(u0 + t) mod t^n by Horner; each step multiplies by a linear series."""
    ctx = curve.ctx
    d, q = ctx.d, ctx.q
    acc = [0] * (n * d)
    for c in reversed(curve.f):
        new = [0] * (n * d)
        for i in range(n):
            a = tuple(acc[i * d : (i + 1) * d])
            if any(a):
                new[i * d : (i + 1) * d] = [
                    (x + y) % q for x, y in zip(new[i * d : (i + 1) * d], ctx.mul(a, u0))
                ]
                if i + 1 < n:
                    new[(i + 1) * d : (i + 2) * d] = [
                        (x + y) % q for x, y in zip(new[(i + 1) * d : (i + 2) * d], a)
                    ]
        new[:d] = [(x + y) % q for x, y in zip(new[:d], c)]
        acc = new
    return TruncatedSeries(ctx, acc, n)


def local_expansion(curve: CurveData, Q: CurvePoint, n: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """u(t) = u0 + t and v(t) = sqrt(f(u(t))) with v(0) = v0, both mod t^n."""
    ctx = curve.ctx
    if not ctx.is_unit(Q.v0):
        raise WeierstrassPoint("v0 is not a unit; the point reduces to a Weierstrass point")
    if ctx.mul(Q.v0, Q.v0) != curve(Q.u0):
        raise BadInitialData("v0^2 != f(u0)")
    u = TruncatedSeries(ctx, list(Q.u0) + list(ctx.one), n)
    v = series_sqrt(_f_of_shift(curve, Q.u0, n), tuple(c % ctx.p for c in Q.v0))
    return u, v


def _basis_vector(curve: CurveData, Q: CurvePoint, n: int) -> list[TruncatedSeries]:
    """(u^(i-1) u' / v)_{i=1..g}; u' = 1."""
    u, v = local_expansion(curve, Q, n)
    w = series_inverse(v)
    out = []
    cur = w
    for _ in range(H_ROW_EXPONENT_OFFSET):
        cur = cur * u
    for _ in range(curve.g):
        out.append(cur)
        cur = cur * u
    return out


def build_G_mult_ell(curve: CurveData, Q: CurvePoint, ell: int, n: int) -> RHS:
    """Right-hand side for the multiplication-by-ell map, G_i = ell u^(i-1) / v."""
    if ell and ell % curve.ctx.p == 0:
        raise ValueError(f"ell = {ell} must be coprime to p = {curve.ctx.p}")
    return RHS([b.scale(ell) for b in _basis_vector(curve, Q, n)])


def build_G_matrix(curve: CurveData, Q: CurvePoint, Mmat, n: int) -> RHS:
    """G = Mmat . (u^(i-1) / v)_i for a g x g matrix over the base ring."""
    g, ctx = curve.g, curve.ctx
    if len(Mmat) != g or any(len(row) != g for row in Mmat):
        raise ValueError(f"matrix must be {g} x {g}")
    basis = _basis_vector(curve, Q, n)
    d, q = ctx.d, ctx.q
    G = []
    for row in Mmat:
        acc = [0] * (n * d)
        for c, b in zip(row, basis):
            c = ctx.raw(c)
            if ctx.is_zero(c):
                continue
            for i in range(n):
                prod = ctx.mul(c, tuple(b.coeffs[i * d : (i + 1) * d]))
                acc[i * d : (i + 1) * d] = [(x + y) % q for x, y in zip(acc[i * d : (i + 1) * d], prod)]
        G.append(TruncatedSeries(ctx, acc, n))
    return RHS(G)


def _descend(ctx: PrecisionContext, poly: list) -> tuple[PrecisionContext, list]:
    if ctx.d == 1:
        return ctx, poly
    for c in poly:
        if any(c[1:]):
            raise NotRational("coefficient does not lie in the base ring")
    return PrecisionContext(ctx.p, ctx.M), [(c[0],) for c in poly]


def mumford_from_points(points, ctx: PrecisionContext) -> tuple[SeriesPoly, SeriesPoly]:
    """U0 = prod (z - x_i) and the Lagrange interpolant V0 of (x_i, y_i).

    Coordinates may live in an extension context; the result is descended
    to the base ring (d = 1) when the point set is Galois-stable.
    """
    pts = [(ctx.raw(x), ctx.raw(y)) for x, y in points]
    if not pts:
        raise ValueError("need at least one point")
    for i in range(len(pts)):
        for j in range(i):
            if not ctx.is_unit(ctx.sub(pts[i][0], pts[j][0])):
                raise CollidingRoots(f"x_{j + 1} and x_{i + 1} agree mod p")
    U = [ctx.one]
    for x, _ in pts:
        U = _upoly.mul(ctx, U, [ctx.neg(x), ctx.one])
    V = []
    for i, (xi, yi) in enumerate(pts):
        basis = [ctx.one]
        denom = ctx.one
        for j, (xj, _) in enumerate(pts):
            if j != i:
                basis = _upoly.mul(ctx, basis, [ctx.neg(xj), ctx.one])
                denom = ctx.mul(denom, ctx.sub(xi, xj))
        V = _upoly.add(ctx, V, _upoly.scale(ctx, basis, ctx.mul(yi, ctx.inv(denom))))
    base, U = _descend(ctx, U)
    _, V = _descend(ctx, V)
    return SeriesPoly.constant(base, U), SeriesPoly.constant(base, V or [base.zero])


def mult_ell_initial_data(curve: CurveData, Q: CurvePoint, ell: int) -> tuple[SeriesPoly, SeriesPoly]:
    """(U0, V0) for [ell](Q - oo), by Cantor's algorithm over Z/p^M (d = 1 only)."""
    from .oracle import cantor_mul, point_divisor

    ctx = curve.ctx
    if ctx.d != 1:
        raise ValueError("initial data for [ell] is only computed over the base ring")
    q = ctx.q
    f = [c[0] for c in curve.f]
    try:
        D = cantor_mul(point_divisor(Q.u0[0], Q.v0[0], q), ell, f, q)
    except (ValueError, ArithmeticError) as exc:
        raise BadInitialData(f"Cantor arithmetic over Z/p^M failed: {exc}") from None
    if len(D.a) - 1 != curve.g:
        raise BadInitialData(f"[{ell}]Q has degree {len(D.a) - 1}, expected {curve.g}")
    return SeriesPoly.constant(ctx, list(D.a)), SeriesPoly.constant(ctx, list(D.b) or [0])

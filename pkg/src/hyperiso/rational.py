"""Rational reconstruction of the Mumford coefficients by Pade approximation."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _upoly
from .errors import NoSolution, PoleAtPoint
from .padic import PrecisionContext
from .poly import SeriesPoly
from .series import TruncatedSeries, series_inverse


@dataclass(frozen=True)
class Fraction:
    """num(t) / den(t) with den(0) = 1; coefficient lists of raw elements."""

    num: tuple
    den: tuple
    ctx: PrecisionContext

    def reduce(self, ctx: PrecisionContext) -> "Fraction":
        red = lambda a: tuple(_upoly.trim(ctx, [tuple(x % ctx.q for x in c) for c in a]))
        return Fraction(red(self.num), red(self.den) or (ctx.one,), ctx)

    def series(self, n: int) -> TruncatedSeries:
        ctx = self.ctx
        num = TruncatedSeries.from_values(ctx, list(self.num)[:n], n)
        den = TruncatedSeries.from_values(ctx, list(self.den)[:n], n)
        return num * series_inverse(den)

    def shifted(self, c) -> "Fraction":
        """Substitute t = x - c, giving a fraction in x."""
        return Fraction(_taylor_shift(self.ctx, self.num, c), _taylor_shift(self.ctx, self.den, c), self.ctx)

    def __call__(self, x):
        ctx = self.ctx
        x = ctx.raw(x)
        den = _upoly.evaluate(ctx, list(self.den), x)
        if not ctx.is_unit(den):
            raise PoleAtPoint("denominator vanishes mod p")
        return ctx.mul(_upoly.evaluate(ctx, list(self.num), x), ctx.inv(den))

    def values(self) -> tuple[list, list]:
        conv = (lambda c: c[0]) if self.ctx.d == 1 else tuple
        return [conv(c) for c in self.num], [conv(c) for c in self.den]


def _taylor_shift(ctx: PrecisionContext, a, c) -> tuple:
    """a(x - c) as a polynomial in x."""
    lin = [ctx.neg(ctx.raw(c)), ctx.one]
    acc: list = []
    for coef in reversed(list(a)):
        acc = _upoly.add(ctx, _upoly.mul(ctx, acc, lin), [coef])
    return tuple(acc)


def _solve_unit_pivot(ctx: PrecisionContext, rows: list[list], ncols: int):
    """Solve rows (augmented, last entry is the right-hand side) with unit pivots.

    Columns lacking a unit pivot are set to zero; the caller verifies.
    """
    A = [list(r) for r in rows]
    pivots = []
    r0 = 0
    for col in range(ncols):
        piv = next((r for r in range(r0, len(A)) if ctx.is_unit(A[r][col])), None)
        if piv is None:
            continue
        A[r0], A[piv] = A[piv], A[r0]
        inv = ctx.inv(A[r0][col])
        A[r0] = [ctx.mul(x, inv) for x in A[r0]]
        for r in range(len(A)):
            if r != r0 and not ctx.is_zero(A[r][col]):
                c = A[r][col]
                A[r] = [ctx.sub(x, ctx.mul(c, y)) for x, y in zip(A[r], A[r0])]
        pivots.append(col)
        r0 += 1
    sol = [ctx.zero] * ncols
    for i, col in enumerate(pivots):
        sol[col] = A[i][ncols]
    return sol


def _residue_den_degree(ctx: PrecisionContext, c: list, n: int, d_num: int) -> int:
    """Denominator degree of the reduced fraction over the residue field.

    Extended Euclid on (t^n, s mod p), stopped once the remainder has degree
    <= d_num; the cofactor of s is then the minimal denominator.  It is a lower
    bound for the p-adic denominator degree.
    """
    res = ctx.residue
    r0 = [res.zero] * n + [res.one]
    r1 = _upoly.trim(res, [tuple(x % ctx.p for x in v) for v in c])
    t0: list = []
    t1 = [res.one]
    while r1 and len(r1) - 1 > d_num:
        qt, r = _upoly.divmod_(res, r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, _upoly.sub(res, t0, _upoly.mul(res, qt, t1))
    if not r1:
        return 0
    # strip powers of t shared by remainder and cofactor
    k = 0
    while k < len(t1) and res.is_zero(t1[k]) and k < len(r1) and res.is_zero(r1[k]):
        k += 1
    return len(t1) - 1 - k


def pade(s: TruncatedSeries, d_num: int, d_den: int) -> Fraction:
    """Minimal-degree fraction num/den with den(0) = 1 matching all n terms of s.

    Denominator degrees are tried upward, starting from the degree found over
    the residue field; the first one whose Hankel system (rows d_num+1 .. n-1)
    is solvable with unit pivots and verifies exactly is returned, so the
    result is in lowest terms.
    """
    ctx, n = s.ctx, s.n
    if n < d_num + d_den + 1:
        raise ValueError(f"need at least {d_num + d_den + 1} terms, have {n}")
    c = [s.raw(i) for i in range(n)]
    start = min(_residue_den_degree(ctx, c, n, d_num), d_den)
    for e in range(start, d_den + 1):
        rows = []
        for k in range(d_num + 1, n):
            row = [c[k - j] if k - j >= 0 else ctx.zero for j in range(1, e + 1)]
            rows.append(row + [ctx.neg(c[k])])
        b = _solve_unit_pivot(ctx, rows, e) if e else []
        den = [ctx.one] + b
        ok = True
        for row in rows:
            acc = ctx.neg(row[-1])
            for coef, bj in zip(row[:-1], b):
                acc = ctx.add(acc, ctx.mul(coef, bj))
            if not ctx.is_zero(acc):
                ok = False
                break
        if not ok:
            continue
        num = []
        for k in range(min(d_num + 1, n)):
            acc = ctx.zero
            for j in range(min(k, e) + 1):
                acc = ctx.add(acc, ctx.mul(den[j], c[k - j]))
            num.append(acc)
        return Fraction(tuple(_upoly.trim(ctx, num)), tuple(_upoly.trim(ctx, den)), ctx)
    raise NoSolution(f"no fraction of degrees ({d_num}, {d_den}) with unit pivots matches the series")


@dataclass
class RationalRepresentation:
    """Fractions for the coefficients of U (z^0..z^(g-1)) and V.

    When ``v_odd`` is set, ``v_fracs`` hold V_i / v, so the V coefficients at a
    point (u, v) are v times the fraction values.  ``var`` is ``"t"`` (local
    parameter, u = u0 + t) or ``"u"``.
    """

    u_fracs: list[Fraction]
    v_fracs: list[Fraction]
    u0: tuple
    ctx: PrecisionContext
    v_odd: bool = False
    var: str = "t"
    meta: dict = field(default_factory=dict)
    v0: tuple | None = None

    @property
    def g(self) -> int:
        return len(self.u_fracs)

    def in_u(self) -> "RationalRepresentation":
        if self.var == "u":
            return self
        return RationalRepresentation(
            [f.shifted(self.u0) for f in self.u_fracs],
            [f.shifted(self.u0) for f in self.v_fracs],
            self.u0,
            self.ctx,
            self.v_odd,
            "u",
            dict(self.meta),
            self.v0,
        )

    def reduce(self, ctx: PrecisionContext) -> "RationalRepresentation":
        return RationalRepresentation(
            [f.reduce(ctx) for f in self.u_fracs],
            [f.reduce(ctx) for f in self.v_fracs],
            tuple(x % ctx.q for x in self.u0),
            ctx,
            self.v_odd,
            self.var,
            dict(self.meta),
            None if self.v0 is None else tuple(x % ctx.q for x in self.v0),
        )

    def to_json(self) -> dict:
        def enc(poly):
            return [self.ctx.elem(c).to_json() for c in poly]

        coeffs = []
        for i, f in enumerate(self.u_fracs):
            coeffs.append({"role": f"u_{i}", "num": enc(f.num), "den": enc(f.den)})
        for i, f in enumerate(self.v_fracs):
            coeffs.append({"role": f"v_{i}", "num": enc(f.num), "den": enc(f.den)})
        return {
            "u0": self.ctx.elem(self.u0).to_json(),
            "var": self.var,
            "v_over_y": self.v_odd,
            "coefficients": coeffs,
        }


def reconstruct(
    Usol: SeriesPoly,
    Vsol: SeriesPoly,
    bound: int,
    u0=0,
    v_series: TruncatedSeries | None = None,
) -> RationalRepresentation:
    """Pade (bound, bound) on every z-coefficient of U and V.

    With ``v_series`` (the local expansion of y at the base point) the V
    coefficients are divided by it first; for an isogeny image they are odd
    functions of y, so only V / v is rational in u.
    """
    ctx, n = Usol.ctx, Usol.n
    if n < 2 * bound + 2:
        raise ValueError(f"series order {n} too small for bound {bound}")
    if Vsol.ctx != ctx:
        Vsol = Vsol.reduce(ctx)
    if v_series is not None and v_series.ctx != ctx:
        v_series = v_series.reduce(ctx)
    g = Usol.degree
    u_fracs = [pade(Usol.coeff(i), bound, bound) for i in range(g)]
    vinv = series_inverse(v_series.truncate(n)) if v_series is not None else None
    v_fracs = []
    for i in range(g):
        c = Vsol.coeff(i).truncate(n)
        if vinv is not None:
            c = c * vinv
        v_fracs.append(pade(c, bound, bound))
    v0 = v_series.raw(0) if v_series is not None else None
    meta = {"bound": bound, "n": n}
    return RationalRepresentation(u_fracs, v_fracs, ctx.raw(u0), ctx, v_series is not None, "t", meta, v0)


def evaluate(rep: RationalRepresentation, u_value, v_value=None) -> tuple[list, list]:
    """Mumford pair (U, V) over the residue field at the curve point with x = u_value.

    U is returned monic (ascending, g + 1 entries) and V with g entries.  When
    the representation stores V / v, ``v_value`` selects the point; it may be
    omitted only at the base point itself (t = 0), where V0 is returned.
    """
    ctx = rep.ctx.residue
    red = rep.reduce(ctx)
    u = ctx.raw(tuple(x % ctx.p for x in ctx.raw(u_value)))
    x = ctx.sub(u, red.u0) if rep.var == "t" else u
    U = [f(x) for f in red.u_fracs] + [ctx.one]
    V = [f(x) for f in red.v_fracs]
    if rep.v_odd:
        if v_value is None:
            if not ctx.is_zero(ctx.sub(u, red.u0)):
                raise ValueError("v_value is required away from the base point")
            v_value = red.v0
        y = ctx.raw(tuple(c % ctx.p for c in ctx.raw(v_value)))
        V = [ctx.mul(c, y) for c in V]
    return _plain(ctx, U), _plain(ctx, V)


def _plain(ctx: PrecisionContext, poly: list) -> list:
    return [c[0] for c in poly] if ctx.d == 1 else [tuple(c) for c in poly]

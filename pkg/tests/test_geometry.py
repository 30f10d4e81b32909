import pytest
from hypothesis import given, settings, strategies as st

from hyperiso import geometry, newton
from hyperiso.errors import BadInitialData, CollidingRoots, NotRational, SingularReduction, WeierstrassPoint
from hyperiso.padic import PrecisionContext
from hyperiso.series import TruncatedSeries

CTX = PrecisionContext(7, 4)


def curve(f=(1, 0, 0, 0, 0, 1), ctx=CTX):
    return geometry.lift_curve(list(f), ctx)


class TestLift:
    def test_quintic(self):
        c = curve()
        assert c.g == 2
        assert [x[0] for x in c.f] == [1, 0, 0, 0, 0, 1]

    def test_not_squarefree(self):
        with pytest.raises(SingularReduction):
            curve((0, 0, 0, 0, 0, 1))

    def test_even_degree(self):
        with pytest.raises(ValueError):
            curve((1, 0, 0, 0, 1))


class TestLocalExpansion:
    def test_z5_plus_1(self):
        ctx = PrecisionContext(7, 1)
        c = curve(ctx=ctx)
        u, v = geometry.local_expansion(c, geometry.CurvePoint((0,), (1,)), 6)
        assert v.values() == [1, 0, 0, 0, 0, 4]
        # oracle: v^2 = 1 + t^5
        assert (v * v).values() == [1, 0, 0, 0, 0, 1]
        assert u.values() == [0, 1, 0, 0, 0, 0]

    def test_constant_term(self):
        c = curve()
        Q = geometry.point_from_u(c, 1, 3)
        _, v = geometry.local_expansion(c, Q, 5)
        assert v.raw(0) == Q.v0

    def test_weierstrass(self):
        c = curve()
        with pytest.raises(WeierstrassPoint):
            geometry.local_expansion(c, geometry.CurvePoint(CTX.raw(CTX.q - 1), CTX.raw(0)), 4)

    def test_not_on_curve(self):
        with pytest.raises(BadInitialData):
            geometry.make_point(curve(), 1, 2)


class TestRHS:
    def test_mult_by_three(self):
        c = curve()
        G = geometry.build_G_mult_ell(c, geometry.CurvePoint((0,), (1,)), 3, 4)
        assert [s.values()[0] for s in G.G] == [3, 0]

    def test_ell_zero(self):
        c = curve()
        G = geometry.build_G_mult_ell(c, geometry.CurvePoint((0,), (1,)), 0, 4)
        assert all(s.is_zero() for s in G.G)

    def test_ell_divisible_by_p(self):
        with pytest.raises(ValueError):
            geometry.build_G_mult_ell(curve(), geometry.CurvePoint((0,), (1,)), 7, 4)

    def test_matrix_identity(self):
        c = curve()
        Q = geometry.point_from_u(c, 1, 3)
        a = geometry.build_G_mult_ell(c, Q, 5, 6)
        b = geometry.build_G_matrix(c, Q, [[5, 0], [0, 5]], 6)
        assert [s.values() for s in a.G] == [s.values() for s in b.G]

    def test_matrix_zero(self):
        c = curve()
        G = geometry.build_G_matrix(c, geometry.CurvePoint((0,), (1,)), [[0, 0], [0, 0]], 4)
        assert all(s.is_zero() for s in G.G)

    def test_matrix_shape(self):
        with pytest.raises(ValueError):
            geometry.build_G_matrix(curve(), geometry.CurvePoint((0,), (1,)), [[1, 0]], 4)

    def test_matrix_rows_by_naive_evaluation(self):
        c = curve()
        Q = geometry.point_from_u(c, 1, 3)
        n = 6
        M = [[2, 3], [5, 1]]
        G = geometry.build_G_matrix(c, Q, M, n)
        # naive: expand 1/v and u/v independently from the square root of f(u0 + t)
        u, v = geometry.local_expansion(c, Q, n)
        from hyperiso.series import series_inverse

        w = series_inverse(v)
        basis = [w, w * u]
        for row, got in zip(M, G.G):
            assert got == basis[0].scale(row[0]) + basis[1].scale(row[1])


class TestMumfordFromPoints:
    def test_two_points(self):
        ctx = PrecisionContext(11, 3)
        U0, V0 = geometry.mumford_from_points([(1, 2), (2, 5)], ctx)
        assert [r[0] for r in U0.values()] == [2, ctx.q - 3, 1]
        assert [r[0] for r in V0.values()] == [ctx.q - 1, 3]

    def test_single_point(self):
        U0, V0 = geometry.mumford_from_points([(3, 4)], CTX)
        assert [r[0] for r in U0.values()] == [CTX.q - 3, 1]
        assert [r[0] for r in V0.values()] == [4]

    def test_colliding(self):
        with pytest.raises(CollidingRoots):
            geometry.mumford_from_points([(1, 2), (8, 5)], CTX)

    def test_conjugate_points_descend(self):
        # x = +-i over Z/5^3[i]/(i^2 + 2), y conjugate: U0 = z^2 + 2, V0 rational
        ctx = PrecisionContext(5, 3, 2, (2, 0, 1))
        U0, V0 = geometry.mumford_from_points([((0, 1), (1, 1)), ((0, ctx.q - 1), (1, ctx.q - 1))], ctx)
        assert U0.ctx.d == 1
        assert [r[0] for r in U0.values()] == [2, 0, 1]
        assert [r[0] for r in V0.values()] == [1, 1]

    def test_not_rational(self):
        ctx = PrecisionContext(5, 3, 2, (2, 0, 1))
        with pytest.raises(NotRational):
            geometry.mumford_from_points([((0, 1), (1, 0))], ctx)


def test_mult_ell_initial_data():
    ctx = PrecisionContext(11, 3)
    c = geometry.lift_curve([9, 9, 9, 10, 0, 1], ctx)
    Q = geometry.point_from_u(c, 1, 4)
    U0, V0 = geometry.mult_ell_initial_data(c, Q, 3)
    st_ = newton.build_initial_state(U0, V0, c.poly())
    assert newton.mumford_invariant_holds(st_)


PCTX = PrecisionContext(11, 5)
PCURVE = geometry.lift_curve([9, 9, 9, 10, 0, 1], PCTX)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10), st.integers(min_value=1, max_value=20))
def test_expansion_squares_to_f(u0, n):
    fx = sum(c * u0**i for i, c in enumerate([9, 9, 9, 10, 0, 1])) % 11
    branch = next((y for y in range(1, 11) if y * y % 11 == fx), None)
    if branch is None:
        return
    Q = geometry.point_from_u(PCURVE, u0, branch)
    u, v = geometry.local_expansion(PCURVE, Q, n)
    fu = geometry._f_of_shift(PCURVE, Q.u0, n)
    assert v * v == fu
    acc = TruncatedSeries.zero(PCTX, n)
    for c in reversed(PCURVE.f):
        acc = acc * u + TruncatedSeries(PCTX, list(c), n)
    assert acc == fu


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=10), min_size=1, max_size=4, unique=True), st.integers(0, 10**6))
def test_points_satisfy_mumford(xs, seed):
    import random

    from hyperiso import _upoly

    rng = random.Random(seed)
    ctx = PrecisionContext(11, 4)
    g = len(xs)
    pts = [(ctx.raw(x), ctx.raw(rng.randrange(1, 11) + 11 * rng.randrange(ctx.q // 11))) for x in xs]
    # random f of degree 2g + 1, corrected by an interpolant so that f(x_i) = y_i^2
    f = [ctx.raw(rng.randrange(ctx.q)) for _ in range(2 * g + 1)] + [ctx.one]
    corr = []
    for i, (xi, yi) in enumerate(pts):
        basis, den = [ctx.one], ctx.one
        for j, (xj, _) in enumerate(pts):
            if j != i:
                basis = _upoly.mul(ctx, basis, [ctx.neg(xj), ctx.one])
                den = ctx.mul(den, ctx.sub(xi, xj))
        err = ctx.sub(_upoly.evaluate(ctx, f, xi), ctx.mul(yi, yi))
        corr = _upoly.add(ctx, corr, _upoly.scale(ctx, basis, ctx.mul(err, ctx.inv(den))))
    f = _upoly.sub(ctx, f, corr)
    U0, V0 = geometry.mumford_from_points(pts, ctx)
    V = V0.at_t0()
    _, rem = _upoly.divmod_(ctx, _upoly.sub(ctx, f, _upoly.mul(ctx, V, V)), U0.at_t0())
    assert rem == []
    for x, y in pts:
        assert _upoly.evaluate(ctx, V, x) == y

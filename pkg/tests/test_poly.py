import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hyperiso.errors import BadInit, NotInvertible
from hyperiso.padic import PrecisionContext
from hyperiso.poly import (
    SeriesPoly,
    berkowitz,
    deriv_sums,
    hankel_apply,
    inverse_sqrt_mod,
    min_poly_of,
    modular_compose,
    newton_sums,
    quotient_inv,
    quotient_mul,
)
from hyperiso.series import TruncatedSeries, series_derive


def P(ctx, table, n=None):
    return SeriesPoly.from_values(ctx, table, n)


def C(ctx, coeffs, n=1):
    return SeriesPoly.constant(ctx, coeffs, n)


def vals(s):
    return s.values()


CTX = PrecisionContext(7, 5)


class TestQuotientMul:
    def test_z_squared(self):
        U = C(CTX, [2, -3, 1])
        z = C(CTX, [0, 1])
        assert quotient_mul(z, z, U).values() == [[CTX.q - 2], [3]]

    def test_identity(self):
        U = C(CTX, [2, -3, 1], 3)
        a = P(CTX, [[1, 2, 3], [4, 5, 6]], 3)
        one = C(CTX, [1], 3)
        assert quotient_mul(a, one, U) == a

    def test_series_coefficients(self):
        U = C(CTX, [-1, 0, 1], 3)
        a = P(CTX, [[0, 1, 0], [1, 0, 0]], 3)  # z + t
        b = P(CTX, [[0, -1, 0], [1, 0, 0]], 3)  # z - t
        out = quotient_mul(a, b, U)
        assert out.coeff(0).values() == [1, 0, CTX.q - 1]
        assert out.coeff(1).values() == [0, 0, 0]


class TestQuotientInv:
    def test_one(self):
        U = C(CTX, [2, -3, 1], 4)
        assert quotient_inv(C(CTX, [1], 4), U) == C(CTX, [1, 0], 4)

    def test_constant(self):
        ctx = PrecisionContext(3, 4)
        U = C(ctx, [2, -3, 1])
        assert quotient_inv(C(ctx, [2]), U).values() == [[41], [0]]

    def test_derivative_against_rational_euclid(self):
        # oracle: extended Euclid over Q via sympy, reduced mod 7^5
        z = sympy.symbols("z")
        s, _, h = sympy.gcdex(2 * z - 3, z**2 - 3 * z + 2, z)
        assert h == 1
        coeffs = sympy.Poly(s, z).all_coeffs()[::-1]
        expect = [int(sympy.Rational(c).p * pow(int(sympy.Rational(c).q), -1, CTX.q)) % CTX.q for c in coeffs]
        U = C(CTX, [2, -3, 1])
        got = quotient_inv(C(CTX, [-3, 2]), U).values()
        assert [r[0] for r in got] == (expect + [0] * 2)[:2]

    def test_not_invertible(self):
        U = C(CTX, [-1, 0, 1])  # (z - 1)(z + 1)
        with pytest.raises(NotInvertible):
            quotient_inv(C(CTX, [-1, 1]), U)


class TestInverseSqrt:
    def test_constant(self):
        U = C(CTX, [-1, 1])
        W, V = inverse_sqrt_mod(C(CTX, [4]), U, C(CTX, [pow(2, -1, CTX.q)]))
        assert W.values() == [[pow(2, -1, CTX.q)]]
        assert V.values() == [[2]]

    def test_linear_in_t(self):
        ctx = PrecisionContext(7, 1)
        U = P(ctx, [[0, -1, 0], [1, 0, 0]], 3)  # z - t
        f = C(ctx, [1, 1], 3)
        W, V = inverse_sqrt_mod(f, U, C(ctx, [1]))
        assert W.coeff(0).values() == [1, 3, 3]
        # oracle: square, multiply by 1 + t, compare with 1
        w = W.coeff(0)
        one_plus_t = TruncatedSeries.from_values(ctx, [1, 1, 0])
        assert (w * w * one_plus_t).values() == [1, 0, 0]

    def test_bad_init(self):
        U = C(CTX, [-1, 1])
        with pytest.raises(BadInit):
            inverse_sqrt_mod(C(CTX, [4]), U, C(CTX, [1]))


class TestNewtonSums:
    def test_roots_one_two(self):
        s = newton_sums(C(CTX, [2, -3, 1]), 3)
        assert [x.values() for x in s] == [[3], [5], [9]]

    def test_all_zero_roots(self):
        s = newton_sums(C(CTX, [0, 0, 0, 1], 4), 5)
        assert all(x.is_zero() for x in s)

    def test_roots_in_t(self):
        U = P(CTX, [[0, 0, 2, 0], [0, -3, 0, 0], [1, 0, 0, 0]], 4)  # (z - t)(z - 2t)
        s = newton_sums(U, 3)
        assert [x.values() for x in s] == [[0, 3, 0, 0], [0, 0, 5, 0], [0, 0, 0, 9]]


class TestDerivSums:
    def test_roots_in_t(self):
        U = P(CTX, [[0, 0, 2, 0], [0, -3, 0, 0], [1, 0, 0, 0]], 4)
        r = deriv_sums(U, 3)
        assert [x.values() for x in r] == [[3, 0, 0], [0, 5, 0], [0, 0, 9]]

    def test_constant_in_t(self):
        r = deriv_sums(C(CTX, [2, -3, 1], 5), 3)
        assert all(x.is_zero() for x in r)


class TestHankel:
    def test_small(self):
        S = lambda v: TruncatedSeries.from_values(CTX, [v])
        out = hankel_apply([S(1), S(2), S(3)], [S(1), S(1)])
        assert [x.values() for x in out] == [[3], [5]]

    def test_zero(self):
        S = lambda v: TruncatedSeries.from_values(CTX, [v, 0])
        out = hankel_apply([S(1), S(2), S(3)], [S(0), S(0)])
        assert all(x.is_zero() for x in out)

    def test_length_mismatch(self):
        S = lambda v: TruncatedSeries.from_values(CTX, [v])
        with pytest.raises(ValueError):
            hankel_apply([S(1), S(2)], [S(1), S(1)])


class TestCompose:
    def test_identity(self):
        U = C(CTX, [2, -3, 1])
        T = C(CTX, [5, 4])
        assert modular_compose(C(CTX, [0, 1]), T, U) == T

    def test_square(self):
        U = C(CTX, [2, -3, 1])
        out = modular_compose(C(CTX, [0, 0, 1]), C(CTX, [-2, 3]), U)
        assert out.values() == [[CTX.q - 14], [15]]


class TestMinPoly:
    def test_identity(self):
        U = C(CTX, [2, -3, 1], 2)
        assert min_poly_of(C(CTX, [0, 1], 2), U) == U

    def test_squares_of_roots(self):
        U = C(CTX, [2, -3, 1])
        assert min_poly_of(C(CTX, [-2, 3]), U).values() == [[4], [CTX.q - 5], [1]]

    def test_constant(self):
        U = C(CTX, [1, 2, 0, 1])  # z^3 + 2z + 1, separable mod 7
        out = min_poly_of(C(CTX, [3]), U)
        assert [r[0] for r in out.values()] == [(-27) % CTX.q, 27, CTX.q - 9, 1]

    def test_berkowitz_path(self):
        ctx = PrecisionContext(3, 4)  # p <= g forces the division-free path
        U = C(ctx, [1, 2, 0, 1])
        out = min_poly_of(C(ctx, [3]), U)
        assert [r[0] for r in out.values()] == [(-27) % ctx.q, 27, ctx.q - 9, 1]

    def test_berkowitz_matrix(self):
        ctx = PrecisionContext(5, 3)
        S = lambda v: TruncatedSeries.from_values(ctx, [v])
        A = [[S(1), S(2)], [S(3), S(4)]]
        # det(zI - A) = z^2 - 5z - 2
        assert [c.values()[0] for c in berkowitz(A)] == [ctx.q - 2, ctx.q - 5, 1]


# -- property tests -------------------------------------------------------------


def random_monic(rng, ctx, g, n):
    """Random monic U of degree g with U(0, z) separable mod p."""
    from hyperiso import _upoly

    while True:
        rows = [[rng.randrange(ctx.q) for _ in range(n)] for _ in range(g)]
        U = SeriesPoly(ctx, rows + [[1]], n)
        if _upoly.is_squarefree_residue(ctx, U.at_t0()):
            return U


def random_poly(rng, ctx, deg, n):
    return SeriesPoly(ctx, [[rng.randrange(ctx.q) for _ in range(n)] for _ in range(deg + 1)], n)


def horner_mod(A, T, U):
    acc = SeriesPoly(U.ctx, [[0]], U.n)
    for i in range(A.degree, -1, -1):
        acc = quotient_mul(acc, T, U) + SeriesPoly(U.ctx, [A.rows[i]], U.n)
    return quotient_mul(acc, SeriesPoly.constant(U.ctx, [1], U.n), U)


def is_zero_poly(P):
    return all(x == 0 for r in P.rows for x in r)


seeds = st.integers(min_value=0, max_value=10**9)
PRIMES = [3, 5, 7, 11]


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=4), st.sampled_from(PRIMES))
def test_newton_identities(seed, g, p):
    rng = random.Random(seed)
    ctx = PrecisionContext(p, 4)
    n = 5
    U = random_monic(rng, ctx, g, n)
    s = newton_sums(U, 2 * g - 1)
    a = U.zcoeffs
    for k in range(1, 2 * g):
        acc = s[k - 1]
        for i in range(1, min(k, g + 1)):
            acc = acc + a[g - i] * s[k - 1 - i]
        if k <= g:
            acc = acc + a[g - k].scale(k)
        assert acc.is_zero(), (k, acc)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=8))
def test_hankel_matches_naive(seed, g):
    rng = random.Random(seed)
    n = 6
    r = [TruncatedSeries(CTX, [rng.randrange(CTX.q) for _ in range(n)]) for _ in range(2 * g - 1)]
    w = [TruncatedSeries(CTX, [rng.randrange(CTX.q) for _ in range(n)]) for _ in range(g)]
    out = hankel_apply(r, w)
    for k in range(g):
        acc = TruncatedSeries.zero(CTX, n)
        for i in range(g):
            acc = acc + r[k + i] * w[i]
        assert out[k] == acc


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5), st.sampled_from(PRIMES))
def test_min_poly_annihilates(seed, g, p):
    rng = random.Random(seed)
    ctx = PrecisionContext(p, 4)
    U = random_monic(rng, ctx, g, 6)
    T = random_poly(rng, ctx, g - 1, 6)
    chi = min_poly_of(T, U)
    assert chi.monic and chi.degree == g
    assert is_zero_poly(horner_mod(chi, T, U))


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=6))
def test_compose_matches_horner(seed, g):
    rng = random.Random(seed)
    U = random_monic(rng, CTX, g, 5)
    A = random_poly(rng, CTX, rng.randrange(2 * g + 1), 5)
    T = random_poly(rng, CTX, g - 1, 5)
    assert modular_compose(A, T, U) == horner_mod(A, T, U)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5), st.sampled_from(PRIMES))
def test_inverse_sqrt_property(seed, g, p):
    from hyperiso import _upoly

    rng = random.Random(seed)
    ctx = PrecisionContext(p, 5)
    n = 9
    U = random_monic(rng, ctx, g, n)
    while True:
        V0 = random_poly(rng, ctx, g - 1, 1)
        if _upoly.coprime_residue(ctx, V0.at_t0(), U.at_t0()):
            break
    R = random_poly(rng, ctx, g + 1, 1)
    f = V0 * V0 + U.truncate(1) * R
    W0 = quotient_inv(V0, U.truncate(1))
    W, V = inverse_sqrt_mod(f, U, W0)
    fn = SeriesPoly(ctx, f.rows, n)
    one = SeriesPoly.constant(ctx, [1] + [0] * (g - 1), n)
    assert quotient_mul(quotient_mul(W, W, U), fn, U) == quotient_mul(one, one, U)
    assert quotient_mul(V, V, U) == quotient_mul(fn, one, U)
    assert quotient_mul(V, W, U) == quotient_mul(one, one, U)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=5), st.sampled_from(PRIMES))
def test_quotient_inv_property(seed, g, p):
    from hyperiso import _upoly

    rng = random.Random(seed)
    ctx = PrecisionContext(p, 4)
    U = random_monic(rng, ctx, g, 7)
    a = random_poly(rng, ctx, g - 1, 7)
    if not _upoly.coprime_residue(ctx, a.at_t0(), U.at_t0()):
        return
    one = SeriesPoly.constant(ctx, [1], 7)
    assert quotient_mul(a, quotient_inv(a, U), U) == quotient_mul(one, one, U)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=4), st.sampled_from(PRIMES))
def test_deriv_sums_cross_identity(seed, g, p):
    rng = random.Random(seed)
    ctx = PrecisionContext(p, 4)
    U = random_monic(rng, ctx, g, 8)
    s = newton_sums(U, 2 * g - 1)
    r = deriv_sums(U, 2 * g - 1)
    for i in range(1, 2 * g):
        assert series_derive(s[i - 1]) == r[i - 1].scale(i)

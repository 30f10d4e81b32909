"""Polynomials in z whose coefficients are truncated t-series.

This holds every polynomial kernel of the Newton step: arithmetic in the
quotient ring O_K[[t]][z] / (U, t^n), inverse square roots, power sums,
Hankel products, modular composition and characteristic polynomials.
"""

from __future__ import annotations

import math
from typing import Sequence

from . import _kron, _upoly
from .errors import BadInit, NotInvertible
from .padic import PrecisionContext
from .series import TruncatedSeries


class SeriesPoly:
    """``sum_i rows[i](t) z^i`` with every row a flat series of order ``n``."""

    __slots__ = ("ctx", "n", "rows", "loss", "_reducer")

    def __init__(self, ctx: PrecisionContext, rows: Sequence[Sequence[int]], n: int, loss: int = 0):
        width = n * ctx.d
        fixed = []
        for r in rows:
            if len(r) == width:
                fixed.append(r if isinstance(r, list) else list(r))
            elif len(r) > width:
                fixed.append(list(r[:width]))
            else:
                fixed.append(list(r) + [0] * (width - len(r)))
        self.ctx = ctx
        self.n = n
        self.rows = fixed
        self.loss = loss
        self._reducer = None

    # -- construction ---------------------------------------------------------

    @classmethod
    def from_series(cls, coeffs: Sequence[TruncatedSeries]) -> "SeriesPoly":
        if not coeffs:
            raise ValueError("need at least one coefficient")
        ctx, n = coeffs[0].ctx, coeffs[0].n
        for c in coeffs:
            ctx.check(c.ctx)
            if c.n != n:
                raise ValueError("coefficient series have different orders")
        return cls(ctx, [c.coeffs for c in coeffs], n, max(c.loss for c in coeffs))

    @classmethod
    def from_values(cls, ctx: PrecisionContext, table: Sequence[Sequence], n: int | None = None) -> "SeriesPoly":
        """``table[i]`` lists the t-coefficients of the z^i coefficient."""
        if n is None:
            n = max((len(r) for r in table), default=1)
        rows = []
        for r in table:
            flat = []
            for v in r:
                flat.extend(ctx.raw(v))
            rows.append(flat)
        return cls(ctx, rows, n)

    @classmethod
    def constant(cls, ctx: PrecisionContext, coeffs: Sequence, n: int = 1) -> "SeriesPoly":
        """A polynomial with coefficients in the base ring (constant in t)."""
        return cls(ctx, [list(ctx.raw(c)) for c in coeffs], n)

    # -- inspection -------------------------------------------------------------

    @property
    def zcoeffs(self) -> list[TruncatedSeries]:
        return [TruncatedSeries(self.ctx, r, self.n, self.loss) for r in self.rows]

    def coeff(self, i: int) -> TruncatedSeries:
        if i >= len(self.rows):
            return TruncatedSeries.zero(self.ctx, self.n)
        return TruncatedSeries(self.ctx, self.rows[i], self.n, self.loss)

    @property
    def degree(self) -> int:
        for i in range(len(self.rows) - 1, -1, -1):
            if any(self.rows[i]):
                return i
        return -1

    @property
    def monic(self) -> bool:
        deg = self.degree
        if deg < 0:
            return False
        one = list(self.ctx.one) + [0] * ((self.n - 1) * self.ctx.d)
        return self.rows[deg] == one

    def normalized(self) -> "SeriesPoly":
        deg = self.degree
        return SeriesPoly(self.ctx, self.rows[: max(deg + 1, 1)], self.n, self.loss)

    def at_t0(self) -> list:
        """Constant terms in t, as a base-ring polynomial of raw elements."""
        d = self.ctx.d
        return _upoly.trim(self.ctx, [tuple(r[:d]) for r in self.rows])

    def values(self) -> list[list]:
        return [TruncatedSeries(self.ctx, r, self.n).values() for r in self.rows]

    def __repr__(self):
        return f"SeriesPoly({self.values()}, n={self.n})"

    def __eq__(self, other):
        if not isinstance(other, SeriesPoly):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return a.ctx == b.ctx and a.n == b.n and a.rows == b.rows

    def equals_mod(self, other: "SeriesPoly", digits: int | None = None, n: int | None = None) -> bool:
        """Equality mod (p^digits, t^n)."""
        n = min(self.n, other.n) if n is None else n
        mod = self.ctx.p**digits if digits is not None else self.ctx.q
        d = self.ctx.d
        k = max(len(self.rows), len(other.rows))
        zero = [0] * (n * d)
        for i in range(k):
            a = self.rows[i][: n * d] if i < len(self.rows) else zero
            b = other.rows[i][: n * d] if i < len(other.rows) else zero
            if any((x - y) % mod for x, y in zip(a, b)):
                return False
        return True

    # -- arithmetic ---------------------------------------------------------------

    def _binary(self, other, sign):
        self.ctx.check(other.ctx)
        n = min(self.n, other.n)
        q, width = self.ctx.q, n * self.ctx.d
        k = max(len(self.rows), len(other.rows))
        zero = [0] * width
        rows = []
        for i in range(k):
            a = self.rows[i][:width] if i < len(self.rows) else zero
            b = other.rows[i][:width] if i < len(other.rows) else zero
            rows.append([(x + sign * y) % q for x, y in zip(a, b)])
        return SeriesPoly(self.ctx, rows, n, max(self.loss, other.loss))

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        q = self.ctx.q
        return SeriesPoly(self.ctx, [[-x % q for x in r] for r in self.rows], self.n, self.loss)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, TruncatedSeries):
            return self.mul_series(other)
        self.ctx.check(other.ctx)
        n = min(self.n, other.n)
        rows = _kron.mul_rows(self.ctx, self.rows, other.rows if other is not self else self.rows, n)
        return SeriesPoly(self.ctx, rows, n, max(self.loss, other.loss))

    def scale(self, k: int) -> "SeriesPoly":
        q = self.ctx.q
        return SeriesPoly(self.ctx, [[x * k % q for x in r] for r in self.rows], self.n, self.loss)

    def mul_series(self, s: TruncatedSeries) -> "SeriesPoly":
        n = min(self.n, s.n)
        rows = _kron.mul_rows(self.ctx, self.rows, [s.coeffs], n)
        return SeriesPoly(self.ctx, rows, n, max(self.loss, s.loss))

    def truncate(self, n: int) -> "SeriesPoly":
        """Reduce mod t^n, or zero-pad to order n."""
        out = SeriesPoly(self.ctx, self.rows, n, self.loss)
        if self._reducer is not None and n <= self.n:
            out._reducer = self._reducer.truncate(n, out)
        return out

    def reduce(self, ctx: PrecisionContext) -> "SeriesPoly":
        q = ctx.q
        return SeriesPoly(ctx, [[x % q for x in r] for r in self.rows], self.n, self.loss)

    def dz(self) -> "SeriesPoly":
        q = self.ctx.q
        rows = [[x * i % q for x in self.rows[i]] for i in range(1, len(self.rows))]
        return SeriesPoly(self.ctx, rows or [[]], self.n, self.loss)

    def dt(self) -> "SeriesPoly":
        """Coefficientwise t-derivative; order drops to n - 1."""
        ctx, d, q = self.ctx, self.ctx.d, self.ctx.q
        n1 = max(self.n - 1, 0)
        rows = []
        for r in self.rows:
            out = [0] * (n1 * d)
            for i in range(1, self.n):
                for k in range(d):
                    out[(i - 1) * d + k] = r[i * d + k] * i % q
            rows.append(out)
        return SeriesPoly(ctx, rows, n1, self.loss)

    def shifted(self, k: int) -> "SeriesPoly":
        """Multiply by z^k."""
        zero = [0] * (self.n * self.ctx.d)
        return SeriesPoly(self.ctx, [list(zero) for _ in range(k)] + self.rows, self.n, self.loss)


def one_poly(ctx: PrecisionContext, n: int) -> SeriesPoly:
    return SeriesPoly(ctx, [list(ctx.one)], n)


def _neg_rows(q, rows):
    return [[-x % q for x in r] for r in rows]


def _add_const(ctx, row: list, c: int) -> list:
    row = list(row)
    row[0] = (row[0] + c) % ctx.q
    return row


class _Reducer:
    """Division by a monic U via a precomputed inverse of its reversal."""

    def __init__(self, U: SeriesPoly, inv_rows=None):
        self.U = U
        self.ctx = U.ctx
        self.g = U.degree
        self.n = U.n
        self.inv = inv_rows if inv_rows is not None else [list(self.ctx.one) + [0] * ((self.n - 1) * self.ctx.d)]

    def truncate(self, n: int, U: SeriesPoly) -> "_Reducer":
        width = n * self.ctx.d
        return _Reducer(U, [r[:width] + [0] * (width - len(r[:width])) for r in self.inv])

    def ensure(self, order: int):
        """Extend the inverse of rev(U) to z-order ``order``."""
        ctx, n, g = self.ctx, self.n, self.g
        k = len(self.inv)
        if k >= order:
            return
        rev = [self.U.rows[g - i] for i in range(g + 1)]
        q = ctx.q
        inv = self.inv
        while k < order:
            k2 = min(2 * k, order)
            e = _kron.mul_rows(ctx, rev[:k2], inv, n, rows=range(k2))
            corr = _neg_rows(q, e)
            corr[0] = _add_const(ctx, corr[0], 2)
            inv = _kron.mul_rows(ctx, inv, corr, n, rows=range(k2))
            k = k2
        self.inv = inv

    def reduce_rows(self, P: list) -> list:
        g, n, ctx = self.g, self.n, self.ctx
        width = n * ctx.d
        D = len(P) - 1
        while D >= g and not any(P[D]):
            D -= 1
        if D < g:
            return [list(P[i]) if i < len(P) else [0] * width for i in range(g)]
        m = D - g + 1
        self.ensure(m)
        revP = [P[D - k] for k in range(m)]
        qrev = _kron.mul_rows(ctx, revP, self.inv[:m], n, rows=range(m))
        quot = qrev[::-1]
        low = _kron.mul_rows(ctx, quot, self.U.rows, n, rows=range(g))
        q = ctx.q
        return [[(x - y) % q for x, y in zip(P[i], low[i])] for i in range(g)]


def reducer(U: SeriesPoly) -> _Reducer:
    if U._reducer is None:
        if not U.monic:
            raise ValueError("reduction needs a monic modulus")
        U._reducer = _Reducer(U if U.degree == len(U.rows) - 1 else U.normalized())
    return U._reducer


def reduce_mod(P: SeriesPoly, U: SeriesPoly) -> SeriesPoly:
    """P mod U (U monic), both taken at the order of U."""
    red = reducer(U)
    P = P if P.n == U.n else P.truncate(U.n)
    return SeriesPoly(U.ctx, red.reduce_rows(P.rows), U.n, max(P.loss, U.loss))


def quotient_mul(a: SeriesPoly, b: SeriesPoly, U: SeriesPoly) -> SeriesPoly:
    """a * b mod (U, t^n)."""
    n = U.n
    same = b is a
    a = a if a.n == n else a.truncate(n)
    b = a if same else (b if b.n == n else b.truncate(n))
    rows = _kron.mul_rows(U.ctx, a.rows, a.rows if same else b.rows, n)
    red = reducer(U)
    return SeriesPoly(U.ctx, red.reduce_rows(rows), n, max(a.loss, b.loss, U.loss))


def _two_minus(P: SeriesPoly, c: int = 2) -> SeriesPoly:
    rows = _neg_rows(P.ctx.q, P.rows)
    rows[0] = _add_const(P.ctx, rows[0], c)
    return SeriesPoly(P.ctx, rows, P.n, P.loss)


def _hensel_p_iterations(M: int) -> int:
    return max(1, math.ceil(math.log2(M))) if M > 1 else 0


def quotient_inv(a: SeriesPoly, U: SeriesPoly) -> SeriesPoly:
    """Inverse of ``a`` in O_K[[t]][z] / (U, t^n).

    Extended Euclid over the residue field, then Newton's G <- G(2 - aG),
    first p-adically at t^0 and then doubling the t-adic order.
    """
    ctx = U.ctx
    res = ctx.residue
    g = U.degree
    a0 = _upoly.to_residue(ctx, a.at_t0())
    u0 = _upoly.to_residue(ctx, U.at_t0())
    if not a0:
        raise NotInvertible("element vanishes mod (p, t)")
    gg, s, _ = _upoly.xgcd(res, a0, u0)
    if len(gg) != 1:
        raise NotInvertible("element shares a factor with U mod (p, t)")
    s = (s + [res.zero] * g)[:g]
    x = SeriesPoly(ctx, [list(c) for c in s], 1)
    reducer(U).ensure(g)
    U1 = U.truncate(1)
    a1 = a.truncate(1)
    for _ in range(_hensel_p_iterations(ctx.M)):
        x = quotient_mul(x, _two_minus(quotient_mul(a1, x, U1)), U1)
    k = 1
    while k < U.n:
        k = min(2 * k, U.n)
        Uk = U.truncate(k)
        xk = x.truncate(k)
        x = quotient_mul(xk, _two_minus(quotient_mul(a.truncate(k), xk, Uk)), Uk)
    x.loss = max(a.loss, U.loss)
    return x


def inverse_sqrt_mod(f: SeriesPoly, U: SeriesPoly, W_init: SeriesPoly, known: int = 1) -> tuple[SeriesPoly, SeriesPoly]:
    """Solve W^2 f = 1 mod (U, t^n) from an initial W correct mod t^known.

    Returns ``(W, V)`` with ``V = f W mod U``, so that ``V^2 = f`` and
    ``V W = 1`` in the quotient ring.
    """
    ctx = U.ctx
    n = U.n
    half = pow(2, -1, ctx.q)
    reducer(U).ensure(max(f.degree - U.degree + 1, U.degree))
    if known <= 1:
        U1 = U.truncate(1)
        f1 = reduce_mod(f.truncate(1), U1)
        w1 = W_init.truncate(1)
        check = quotient_mul(f1, quotient_mul(w1, w1, U1), U1)
        resid = _two_minus(check, 1)
        if any(x % ctx.p for r in resid.rows for x in r):
            raise BadInit("W_init^2 f is not 1 mod (U, t, p)")
        for _ in range(_hensel_p_iterations(ctx.M) + 1):
            e = quotient_mul(f1, quotient_mul(w1, w1, U1), U1)
            w1 = quotient_mul(w1, _two_minus(e, 3), U1).scale(half)
        W = w1
        known = 1
    else:
        W = W_init.truncate(known)
    k = known
    while k < n:
        k = min(2 * k, n)
        Uk = U.truncate(k)
        fk = reduce_mod(f.truncate(k), Uk)
        Wk = W.truncate(k)
        e = quotient_mul(fk, quotient_mul(Wk, Wk, Uk), Uk)
        W = quotient_mul(Wk, _two_minus(e, 3), Uk).scale(half)
    if W.n != n:
        W = W.truncate(n)
    fn = reduce_mod(f.truncate(n), U)
    V = quotient_mul(fn, W, U)
    W.loss = V.loss = max(U.loss, W_init.loss)
    return W, V


def newton_sums(U: SeriesPoly, count: int) -> list[TruncatedSeries]:
    """Power sums s_1..s_count of the roots of monic U, from rev(U)'/rev(U)."""
    ctx, g, n = U.ctx, U.degree, U.n
    if count <= 0:
        return []
    red = reducer(U)
    red.ensure(count)
    q = ctx.q
    rev = [U.rows[g - i] for i in range(g + 1)]
    drev = [[x * (k + 1) % q for x in rev[k + 1]] for k in range(g)] or [[0] * (n * ctx.d)]
    prod = _kron.mul_rows(ctx, drev, red.inv[:count], n, rows=range(count))
    return [TruncatedSeries(ctx, [-x % q for x in r], n, U.loss) for r in prod]


def deriv_sums(U: SeriesPoly, count: int) -> list[TruncatedSeries]:
    """r_i = sum x_j^(i-1) x_j' for i = 1..count, from the expansion of -U_t/U at z = oo.

    No division by i, so nothing is lost when p <= count.
    """
    ctx, g, n = U.ctx, U.degree, U.n
    q = ctx.q
    n1 = max(n - 1, 0)
    if count <= 0:
        return []
    red = reducer(U)
    red.ensure(count + 1)
    Ut = U.dt()
    rev = [Ut.rows[g - i] for i in range(g + 1)]
    width = n1 * ctx.d
    inv = [r[:width] for r in red.inv[: count + 1]]
    prod = _kron.mul_rows(ctx, rev, inv, n1, rows=range(1, count + 1))
    return [TruncatedSeries(ctx, [-x % q for x in r], n1, U.loss) for r in prod]


def hankel_apply(r: Sequence[TruncatedSeries], w: Sequence[TruncatedSeries]) -> list[TruncatedSeries]:
    """Rows k = 1..g of the Hankel product sum_i r_{k+i} w_i (r given as r_1..r_{2g-1}).

    One polynomial product of r(z) with the reversal of w(z).
    """
    g = len(w)
    if len(r) != 2 * g - 1:
        raise ValueError(f"need {2 * g - 1} Hankel entries for {g} unknowns, got {len(r)}")
    ctx = w[0].ctx
    n = min(min(s.n for s in r), min(s.n for s in w))
    rrows = [s.coeffs for s in r]
    wrev = [w[g - 1 - i].coeffs for i in range(g)]
    prod = _kron.mul_rows(ctx, rrows, wrev, n, rows=range(g - 1, 2 * g - 1))
    loss = max(max(s.loss for s in r), max(s.loss for s in w))
    return [TruncatedSeries(ctx, row, n, loss) for row in prod]


def _powers(T: SeriesPoly, U: SeriesPoly, k: int) -> list[SeriesPoly]:
    """[1, T, ..., T^(k-1)] mod U."""
    ctx, n, g = U.ctx, U.n, U.degree
    Tr = reduce_mod(T, U)
    out = [SeriesPoly(ctx, [list(ctx.one)] + [[] for _ in range(g - 1)], n)]
    for _ in range(1, k):
        out.append(quotient_mul(out[-1], Tr, U))
    return out


def modular_compose(A: SeriesPoly, T: SeriesPoly, U: SeriesPoly) -> SeriesPoly:
    """A(T) mod (U, t^n) by baby steps / giant steps."""
    ctx, n, g = U.ctx, U.n, U.degree
    A = A.truncate(n) if A.n != n else A
    degA = A.degree
    if degA < 0:
        return SeriesPoly(ctx, [[] for _ in range(g)], n)
    k = math.isqrt(degA) + 1
    baby = _powers(T, U, k + 1)
    giant = baby[k]
    width = n * ctx.d
    chunks = []
    for c in range(0, degA + 1, k):
        acc = SeriesPoly(ctx, [[0] * width for _ in range(g)], n)
        for b in range(k):
            j = c + b
            if j > degA or not any(A.rows[j]):
                continue
            acc = acc + baby[b].mul_series(A.coeff(j))
        chunks.append(acc)
    result = chunks[-1]
    for acc in reversed(chunks[:-1]):
        result = quotient_mul(result, giant, U) + acc
    return SeriesPoly(ctx, result.rows[:g], n, max(A.loss, T.loss, U.loss))


def _power_traces(T: SeriesPoly, U: SeriesPoly) -> list[TruncatedSeries]:
    """Tr(T^i) for i = 1..g in the quotient ring, by power projection.

    The trace form is z^j -> s_j (power sums of U), so Tr(A B) for reduced
    A, B only needs s_0..s_{2g-2}.  Baby steps B_b = T^b, giant steps
    A_a = T^(ak); Tr(T^(ak+b)) = <h_a, B_b> with h_a a Hankel image of A_a.
    """
    ctx, n, g = U.ctx, U.n, U.degree
    q = ctx.q
    s = [TruncatedSeries.constant(ctx, g, n)] + newton_sums(U, 2 * g - 2)
    srows = [x.coeffs for x in s]
    k = max(1, math.isqrt(g - 1) + 1) if g > 1 else 1
    baby = _powers(T, U, k + 1)
    step = baby[k]
    na = g // k + 1
    giants = [baby[0]]
    for _ in range(1, na):
        giants.append(quotient_mul(giants[-1], step, U))
    # all baby steps packed at stride 2g - 1, reversed inside each block
    stride = 2 * g - 1
    width = n * ctx.d
    packed = [[0] * width for _ in range(stride * k)]
    for b in range(k):
        rows = baby[b].rows
        for j in range(g):
            if j < len(rows):
                packed[b * stride + g - 1 - j] = rows[j]
    traces = [None] * (g + 1)
    for a, A in enumerate(giants):
        arev = [A.rows[g - 1 - i] if g - 1 - i < len(A.rows) else [0] * width for i in range(g)]
        h = _kron.mul_rows(ctx, srows, arev, n, rows=range(g - 1, 2 * g - 1))
        wanted = [g - 1 + b * stride for b in range(k) if 1 <= a * k + b <= g]
        if not wanted:
            continue
        got = _kron.mul_rows(ctx, h, packed, n, rows=wanted)
        for row, idx in zip(got, wanted):
            b = (idx - (g - 1)) // stride
            traces[a * k + b] = TruncatedSeries(ctx, [x % q for x in row], n)
    return traces[1:]


def _charpoly_from_traces(traces: list[TruncatedSeries], g: int) -> list[TruncatedSeries]:
    """Newton's identities: e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i (needs p > g)."""
    ctx, n = traces[0].ctx, traces[0].n
    q = ctx.q
    e = [TruncatedSeries.constant(ctx, 1, n)]
    for k in range(1, g + 1):
        acc = TruncatedSeries.zero(ctx, n)
        for i in range(1, k + 1):
            term = e[k - i] * traces[i - 1]
            acc = acc + term if i % 2 else acc - term
        e.append(acc.scale(pow(k, -1, q)))
    # U = sum_k (-1)^k e_k z^(g-k)
    return [e[g - j] if (g - j) % 2 == 0 else -e[g - j] for j in range(g + 1)]


def _mult_matrix(T: SeriesPoly, U: SeriesPoly) -> list[list[TruncatedSeries]]:
    """Matrix of multiplication by T on the basis 1, z, ..., z^(g-1)."""
    ctx, n, g = U.ctx, U.n, U.degree
    q = ctx.q
    width = n * ctx.d
    col = reduce_mod(T, U).rows
    col = [r if r else [0] * width for r in col] + [[0] * width for _ in range(g - len(col))]
    cols = [col]
    Urows = U.rows
    for _ in range(1, g):
        prev = cols[-1]
        lead = prev[g - 1]
        shifted = [[0] * width] + prev[: g - 1]
        sub = _kron.mul_rows(ctx, [lead], Urows[:g], n)
        cols.append([[(x - y) % q for x, y in zip(shifted[i], sub[i])] for i in range(g)])
    return [[TruncatedSeries(ctx, cols[j][i], n) for j in range(g)] for i in range(g)]


def berkowitz(A: list[list[TruncatedSeries]]) -> list[TruncatedSeries]:
    """Division-free characteristic polynomial det(zI - A), ascending coefficients."""
    size = len(A)
    ctx, n = A[0][0].ctx, A[0][0].n
    one = TruncatedSeries.constant(ctx, 1, n)
    zero = TruncatedSeries.zero(ctx, n)

    def matvec(Mx, v):
        out = []
        for row in Mx:
            acc = zero
            for x, y in zip(row, v):
                acc = acc + x * y
            out.append(acc)
        return out

    # polynomials kept highest degree first
    poly = [one, -A[size - 1][size - 1]]
    for r in range(size - 2, -1, -1):
        a = A[r][r]
        R = A[r][r + 1 :]
        C = [A[i][r] for i in range(r + 1, size)]
        S = [row[r + 1 :] for row in A[r + 1 :]]
        m = size - r - 1
        items = [one, -a]
        vec = C
        for i in range(m):
            acc = zero
            for x, y in zip(R, vec):
                acc = acc + x * y
            items.append(-acc)
            if i < m - 1:
                vec = matvec(S, vec)
        new = []
        for i in range(m + 2):
            acc = zero
            for j in range(min(i, m) + 1):
                if i - j < len(items):
                    acc = acc + items[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly[::-1]


def min_poly_of(T: SeriesPoly, U: SeriesPoly) -> SeriesPoly:
    """Characteristic polynomial of multiplication by T in O_K[[t]][z] / (U, t^n).

    Power projection plus Newton's identities when p > g; Berkowitz on the
    g x g multiplication matrix otherwise.
    """
    ctx, n, g = U.ctx, U.n, U.degree
    if ctx.p > g:
        coeffs = _charpoly_from_traces(_power_traces(T, U), g)
    else:
        coeffs = berkowitz(_mult_matrix(T, U))
    out = SeriesPoly(ctx, [c.coeffs for c in coeffs], n, max(T.loss, U.loss))
    return out

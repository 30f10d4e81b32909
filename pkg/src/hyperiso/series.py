"""Truncated power series in t over the fixed-point ring."""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _kron
from .errors import ContextMismatch, NonIntegral, NonIntegralIntegral
from .padic import FixedPointElem, PrecisionContext


class TruncatedSeries:
    """Dense series ``sum c_i t^i + O(t^n)``.

    ``coeffs`` is flat: coefficient ``i`` is ``coeffs[i*d:(i+1)*d]``.
    ``loss`` counts p-adic digits lost to divisions by p; the stored residues
    are only meaningful mod ``p^(M - loss)``.
    """

    __slots__ = ("ctx", "coeffs", "n", "loss")

    def __init__(self, ctx: PrecisionContext, coeffs: list[int], n: int | None = None, loss: int = 0):
        d = ctx.d
        if n is None:
            n = len(coeffs) // d
        if len(coeffs) < n * d:
            coeffs = list(coeffs) + [0] * (n * d - len(coeffs))
        elif len(coeffs) > n * d:
            coeffs = list(coeffs[: n * d])
        self.ctx = ctx
        self.coeffs = coeffs
        self.n = n
        self.loss = loss

    @classmethod
    def from_values(cls, ctx: PrecisionContext, values: Iterable, n: int | None = None) -> "TruncatedSeries":
        flat = []
        for v in values:
            flat.extend(ctx.raw(v))
        return cls(ctx, flat, n)

    @classmethod
    def zero(cls, ctx: PrecisionContext, n: int) -> "TruncatedSeries":
        return cls(ctx, [0] * (n * ctx.d), n)

    @classmethod
    def constant(cls, ctx: PrecisionContext, value, n: int) -> "TruncatedSeries":
        return cls(ctx, list(ctx.raw(value)), n)

    def __getitem__(self, i: int) -> FixedPointElem:
        d = self.ctx.d
        if not 0 <= i < self.n:
            raise IndexError(i)
        return FixedPointElem(self.ctx, tuple(self.coeffs[i * d : (i + 1) * d]))

    def raw(self, i: int) -> tuple:
        d = self.ctx.d
        return tuple(self.coeffs[i * d : (i + 1) * d])

    def values(self) -> list:
        """Coefficients as ints (d == 1) or tuples."""
        if self.ctx.d == 1:
            return list(self.coeffs)
        return [self.raw(i) for i in range(self.n)]

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"TruncatedSeries({self.values()}, n={self.n}, loss={self.loss})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.n == other.n and self.coeffs == other.coeffs

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise TypeError("expected a TruncatedSeries")
        self.ctx.check(other.ctx)
        if other.n != self.n:
            raise ContextMismatch(f"truncation orders differ: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        q = self.ctx.q
        return TruncatedSeries(self.ctx, [(x + y) % q for x, y in zip(self.coeffs, other.coeffs)], self.n, max(self.loss, other.loss))

    def __sub__(self, other):
        self._check(other)
        q = self.ctx.q
        return TruncatedSeries(self.ctx, [(x - y) % q for x, y in zip(self.coeffs, other.coeffs)], self.n, max(self.loss, other.loss))

    def __neg__(self):
        q = self.ctx.q
        return TruncatedSeries(self.ctx, [-x % q for x in self.coeffs], self.n, self.loss)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return TruncatedSeries(self.ctx, _kron.mul_series(self.ctx, self.coeffs, other.coeffs, self.n), self.n, max(self.loss, other.loss))

    def scale(self, k: int) -> "TruncatedSeries":
        q = self.ctx.q
        return TruncatedSeries(self.ctx, [x * k % q for x in self.coeffs], self.n, self.loss)

    def truncate(self, n: int) -> "TruncatedSeries":
        """Reduce to order n (n <= self.n) or zero-pad to order n."""
        return TruncatedSeries(self.ctx, self.coeffs, n, self.loss)

    def reduce(self, ctx: PrecisionContext) -> "TruncatedSeries":
        q = ctx.q
        return TruncatedSeries(ctx, [x % q for x in self.coeffs], self.n, self.loss)

    def is_zero(self, digits: int | None = None) -> bool:
        mod = self.ctx.p**digits if digits is not None else self.ctx.q
        return all(x % mod == 0 for x in self.coeffs)

    def valuation(self, digits: int | None = None) -> int:
        """t-adic valuation modulo p^digits (n when the series vanishes)."""
        mod = self.ctx.p**digits if digits is not None else self.ctx.q
        d = self.ctx.d
        for i in range(self.n):
            if any(x % mod for x in self.coeffs[i * d : (i + 1) * d]):
                return i
        return self.n


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def series_derive(a: TruncatedSeries) -> TruncatedSeries:
    """d/dt, truncated at order n - 1."""
    d, q = a.ctx.d, a.ctx.q
    c = a.coeffs
    out = [0] * (max(a.n - 1, 0) * d)
    for i in range(1, a.n):
        for k in range(d):
            out[(i - 1) * d + k] = c[i * d + k] * i % q
    return TruncatedSeries(a.ctx, out, max(a.n - 1, 0), a.loss)


def p_part(k: int, p: int) -> tuple[int, int]:
    """Split k = p^v * u with p not dividing u; return (v, u)."""
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v, k


def series_integrate(a: TruncatedSeries) -> TruncatedSeries:
    """Antiderivative with zero constant term, of order n + 1.

    Division by i + 1 = p^v * u multiplies by u^-1 and divides the stored
    residue by p^v exactly; the result's loss grows by the largest v used.
    """
    ctx = a.ctx
    d, q, p = ctx.d, ctx.q, ctx.p
    c = a.coeffs
    out = [0] * ((a.n + 1) * d)
    worst = 0
    for i in range(a.n):
        v, u = p_part(i + 1, p)
        uinv = pow(u, -1, q) if u != 1 else 1
        chunk = tuple(c[i * d : (i + 1) * d])
        if v:
            try:
                chunk = ctx.divide_by_p_power(chunk, v)
            except NonIntegral:
                raise NonIntegralIntegral(
                    f"coefficient of t^{i} is not divisible by {p}^{v}; the integrand is not p-integral"
                    " or the guard digits are insufficient"
                ) from None
            worst = max(worst, v)
        for k in range(d):
            out[(i + 1) * d + k] = chunk[k] * uinv % q
    return TruncatedSeries(ctx, out, a.n + 1, a.loss + worst)


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """1/a for a series with unit constant term (Newton iteration)."""
    ctx = a.ctx
    inv0 = ctx.inv(a.raw(0))
    x = TruncatedSeries(ctx, list(inv0), 1)
    k = 1
    while k < a.n:
        k = min(2 * k, a.n)
        ak = a.truncate(k)
        xk = x.truncate(k)
        e = ak * xk
        two = TruncatedSeries.constant(ctx, 2, k)
        x = xk * (two - e)
    x.loss = a.loss
    return x


def series_sqrt(a: TruncatedSeries, branch) -> TruncatedSeries:
    """Square root with prescribed constant term, by Newton on the inverse root."""
    ctx = a.ctx
    root0 = ctx.sqrt(a.raw(0), ctx.raw(branch))
    w = TruncatedSeries(ctx, list(ctx.inv(root0)), 1)
    half = pow(2, -1, ctx.q)
    k = 1
    while k < a.n:
        k = min(2 * k, a.n)
        ak = a.truncate(k)
        wk = w.truncate(k)
        three = TruncatedSeries.constant(ctx, 3, k)
        w = (wk * (three - ak * wk * wk)).scale(half)
    out = a * w
    out.loss = a.loss
    return out


def series_pow_linear(ctx: PrecisionContext, c0, e: int, n: int) -> TruncatedSeries:
    """(c0 + t)^e mod t^n via the binomial theorem."""
    c0 = ctx.raw(c0)
    out = TruncatedSeries.zero(ctx, n)
    binom = 1
    d = ctx.d
    q = ctx.q
    cpow = [ctx.one]
    for _ in range(e):
        cpow.append(ctx.mul(cpow[-1], c0))
    for k in range(min(e, n - 1) + 1):
        coef = ctx.scale(cpow[e - k], binom)
        out.coeffs[k * d : (k + 1) * d] = [x % q for x in coef]
        binom = binom * (e - k) // (k + 1)
    return out

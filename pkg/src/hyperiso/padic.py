"""Fixed-point arithmetic in O_K / p^M O_K for K unramified over Q_p.

An element is stored as ``d`` residues mod ``p^M``: its coordinates in the
power basis ``1, a, ..., a^(d-1)`` where ``a`` is a root of the context
modulus.  For ``d == 1`` the ring is just ``Z/p^M``.

Scalar code in the rest of the package works on *raw* elements, plain
tuples of ``d`` ints; :class:`FixedPointElem` wraps a raw element together
with its context for the public API.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import gmpy2

from .errors import BadBranch, ContextMismatch, NonIntegral, NoSquareRoot, NotUnit

Raw = tuple  # tuple[int, ...] of length d


def _is_irreducible_mod_p(coeffs: Sequence[int], p: int) -> bool:
    from sympy import GF, Poly, symbols

    x = symbols("x")
    poly = Poly(list(reversed([c % p for c in coeffs])), x, domain=GF(p))
    return poly.degree() == len(coeffs) - 1 and poly.is_irreducible


@dataclass(frozen=True)
class PrecisionContext:
    """The ring O_K / p^M O_K.

    ``modulus`` holds the ascending coefficients of a monic degree-``d``
    polynomial, irreducible mod ``p``; it is required exactly when ``d > 1``.
    """

    p: int
    M: int
    d: int = 1
    modulus: tuple[int, ...] | None = None
    _check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.modulus is not None:
            object.__setattr__(self, "modulus", tuple(int(c) % self.q for c in self.modulus))
        if not self._check:
            return
        if self.p < 3 or not gmpy2.is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.M < 1:
            raise ValueError("M must be at least 1")
        if self.d < 1:
            raise ValueError("d must be at least 1")
        if self.d == 1:
            if self.modulus is not None and len(self.modulus) not in (0, 2):
                raise ValueError("degree-1 context takes no modulus")
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None or len(self.modulus) != self.d + 1:
            raise ValueError("extension contexts need a modulus of degree d")
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if not _is_irreducible_mod_p(self.modulus, self.p):
            raise ValueError("modulus is not irreducible mod p")

    @cached_property
    def q(self) -> int:
        return self.p**self.M

    def with_precision(self, M: int) -> "PrecisionContext":
        return PrecisionContext(self.p, M, self.d, self.modulus, _check=False)

    @cached_property
    def residue(self) -> "PrecisionContext":
        return self.with_precision(1)

    # -- raw element helpers -------------------------------------------------

    @cached_property
    def zero(self) -> Raw:
        return (0,) * self.d

    @cached_property
    def one(self) -> Raw:
        return (1,) + (0,) * (self.d - 1)

    def raw(self, value) -> Raw:
        """Coerce an int, a sequence of ints or a FixedPointElem to a raw element."""
        if isinstance(value, FixedPointElem):
            self.check(value.ctx)
            return value.coeffs
        q = self.q
        if isinstance(value, numbers.Integral):
            return (int(value) % q,) + (0,) * (self.d - 1)
        vals = [int(v) % q for v in value]
        if len(vals) > self.d:
            vals = list(self.reduce_wide(vals))
        return tuple(vals) + (0,) * (self.d - len(vals))

    def check(self, other: "PrecisionContext"):
        if other is not self and other != self:
            raise ContextMismatch(f"{other} is not {self}")

    def reduce_wide(self, c: Sequence[int]) -> Raw:
        """Reduce a polynomial in the generator (any length) mod the modulus."""
        q, d = self.q, self.d
        c = list(c)
        if d == 1:
            if len(c) != 1:
                raise ValueError("degree-1 elements have a single coordinate")
            return (c[0] % q,)
        mod = self.modulus
        for k in range(len(c) - 1, d - 1, -1):
            top = c[k]
            if top:
                base = k - d
                for i in range(d):
                    c[base + i] -= top * mod[i]
        c = c[:d] + [0] * (d - len(c))
        return tuple(x % q for x in c)

    def add(self, a: Raw, b: Raw) -> Raw:
        q = self.q
        return tuple((x + y) % q for x, y in zip(a, b))

    def sub(self, a: Raw, b: Raw) -> Raw:
        q = self.q
        return tuple((x - y) % q for x, y in zip(a, b))

    def neg(self, a: Raw) -> Raw:
        q = self.q
        return tuple(-x % q for x in a)

    def mul(self, a: Raw, b: Raw) -> Raw:
        if self.d == 1:
            return (a[0] * b[0] % self.q,)
        d = self.d
        wide = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    wide[i + j] += x * y
        return self.reduce_wide(wide)

    def scale(self, a: Raw, k: int) -> Raw:
        q = self.q
        return tuple(x * k % q for x in a)

    def power(self, a: Raw, e: int) -> Raw:
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_zero(self, a: Raw) -> bool:
        return not any(a)

    def is_unit(self, a: Raw) -> bool:
        return any(x % self.p for x in a)

    def valuation(self, a: Raw) -> int:
        """p-adic valuation of a stored residue, capped at M."""
        v = self.M
        for x in a:
            if x:
                v = min(v, gmpy2.remove(x, self.p)[1])
        return v

    def inv(self, a: Raw) -> Raw:
        if not self.is_unit(a):
            raise NotUnit(f"{a} is not a unit mod {self.p}")
        if self.d == 1:
            return (pow(a[0], -1, self.q),)
        res = self.residue
        x = res.power(tuple(c % self.p for c in a), self.p**self.d - 2)
        prec = 1
        two = self.scale(self.one, 2)
        while prec < self.M:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            prec *= 2
        return x

    def is_square_residue(self, a: Raw) -> bool:
        """Euler's criterion in the residue field (``a`` must be a unit)."""
        res = self.residue
        a0 = tuple(c % self.p for c in a)
        return res.power(a0, (self.p**self.d - 1) // 2) == res.one

    def sqrt(self, a: Raw, branch: Raw) -> Raw:
        if not self.is_unit(a):
            raise NotUnit("square roots are only lifted for units")
        if not self.is_square_residue(a):
            raise NoSquareRoot(f"{a} is not a square mod {self.p}")
        res = self.residue
        b0 = tuple(c % self.p for c in branch)
        if res.mul(b0, b0) != tuple(c % self.p for c in a):
            raise BadBranch("branch does not square to the input mod p")
        x = tuple(b0)
        prec = 1
        half = pow(2, -1, self.q)
        while prec < self.M:
            x = self.scale(self.add(x, self.mul(a, self.inv(x))), half)
            prec *= 2
        return x

    def divide_by_p_power(self, a: Raw, e: int) -> Raw:
        if e == 0:
            return a
        pe = self.p**e
        if e > self.M or any(x % pe for x in a):
            raise NonIntegral(f"{a} is not divisible by {self.p}^{e}")
        return tuple(x // pe for x in a)

    # -- construction and serialization -------------------------------------

    def elem(self, value) -> "FixedPointElem":
        return FixedPointElem(self, self.raw(value))

    def to_json(self) -> dict:
        out = {"p": self.p, "M": self.M, "d": self.d}
        if self.modulus is not None:
            out["modulus"] = [str(c) for c in self.modulus]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "PrecisionContext":
        modulus = data.get("modulus")
        return cls(
            int(data["p"]),
            int(data["M"]),
            int(data.get("d", 1)),
            tuple(int(c) for c in modulus) if modulus else None,
        )


@dataclass(frozen=True)
class FixedPointElem:
    """An element ``x + O(p^M)`` of O_K."""

    ctx: PrecisionContext
    coeffs: Raw

    def _other(self, other) -> Raw:
        if isinstance(other, FixedPointElem):
            self.ctx.check(other.ctx)
            return other.coeffs
        return self.ctx.raw(other)

    def __add__(self, other):
        return FixedPointElem(self.ctx, self.ctx.add(self.coeffs, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FixedPointElem(self.ctx, self.ctx.sub(self.coeffs, self._other(other)))

    def __rsub__(self, other):
        return FixedPointElem(self.ctx, self.ctx.sub(self._other(other), self.coeffs))

    def __mul__(self, other):
        return FixedPointElem(self.ctx, self.ctx.mul(self.coeffs, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FixedPointElem(self.ctx, self.ctx.neg(self.coeffs))

    def __eq__(self, other):
        if isinstance(other, FixedPointElem):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == self.ctx.raw(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __int__(self):
        if self.ctx.d != 1:
            raise TypeError("only degree-1 elements convert to int")
        return self.coeffs[0]

    def __repr__(self):
        body = self.coeffs[0] if self.ctx.d == 1 else list(self.coeffs)
        return f"{body} + O({self.ctx.p}^{self.ctx.M})"

    def is_unit(self) -> bool:
        return self.ctx.is_unit(self.coeffs)

    def valuation(self) -> int:
        return self.ctx.valuation(self.coeffs)

    def inv(self) -> "FixedPointElem":
        return inv(self, self.ctx)

    def reduce(self, ctx: PrecisionContext) -> "FixedPointElem":
        """Image under O_K/p^M -> O_K/p^M' for M' <= M."""
        return FixedPointElem(ctx, tuple(c % ctx.q for c in self.coeffs))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def arith(a: FixedPointElem, b: FixedPointElem, op: str, ctx: PrecisionContext) -> FixedPointElem:
    ctx.check(a.ctx)
    ctx.check(b.ctx)
    if op == "add":
        return FixedPointElem(ctx, ctx.add(a.coeffs, b.coeffs))
    if op == "sub":
        return FixedPointElem(ctx, ctx.sub(a.coeffs, b.coeffs))
    if op == "mul":
        return FixedPointElem(ctx, ctx.mul(a.coeffs, b.coeffs))
    raise ValueError(f"unknown op {op!r}")


def inv(a: FixedPointElem, ctx: PrecisionContext) -> FixedPointElem:
    ctx.check(a.ctx)
    return FixedPointElem(ctx, ctx.inv(a.coeffs))


def sqrt(a: FixedPointElem, branch, ctx: PrecisionContext) -> FixedPointElem:
    """Hensel lift of the residue-field square root ``branch`` of ``a``."""
    ctx.check(a.ctx)
    return FixedPointElem(ctx, ctx.sqrt(a.coeffs, ctx.raw(branch)))


def divide_by_p_power(a: FixedPointElem, e: int, ctx: PrecisionContext) -> tuple[FixedPointElem, int]:
    """Return ``(a / p^e, e)``; the quotient is only known mod ``p^(M-e)``."""
    ctx.check(a.ctx)
    return FixedPointElem(ctx, ctx.divide_by_p_power(a.coeffs, e)), e


def floor_log(n: int, p: int) -> int:
    """floor(log_p n) for n >= 1, exactly."""
    k, acc = 0, p
    while acc <= n:
        acc *= p
        k += 1
    return k


def elems(ctx: PrecisionContext, values: Iterable) -> list[FixedPointElem]:
    return [ctx.elem(v) for v in values]

"""Kronecker-substitution products of (bivariate) series over O_K/p^M.

Series are flat lists: element ``j`` of a series occupies
``c[j*d:(j+1)*d]``.  A polynomial in z with series coefficients is a list of
such rows.  Products pack every coefficient into a fixed-width slot of one
big integer and multiply with GMP, which is quasi-linear for large sizes.
"""

from __future__ import annotations

import time
from collections import defaultdict
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from typing import Sequence

import gmpy2

_mpz = gmpy2.mpz


@dataclass
class Profile:
    """Wall time and kernel-product counts, bucketed by the active step label."""

    times: dict = field(default_factory=lambda: defaultdict(float))
    products: dict = field(default_factory=lambda: defaultdict(int))
    slots: dict = field(default_factory=lambda: defaultdict(int))

    @contextmanager
    def step(self, label: str):
        token = _ACTIVE.set((self, label))
        start = time.perf_counter()
        try:
            yield
        finally:
            self.times[label] += time.perf_counter() - start
            _ACTIVE.reset(token)


_ACTIVE: ContextVar = ContextVar("hyperiso_profile", default=None)


def _record(nslots: int):
    active = _ACTIVE.get()
    if active is not None:
        prof, label = active
        prof.products[label] += 1
        prof.slots[label] += nslots


def _slot_bytes(q: int, terms: int) -> int:
    bits = 2 * (q - 1).bit_length() + max(terms, 1).bit_length() + 1
    return (bits + 7) // 8


def _pack(rows: Sequence[Sequence[int]], n: int, d: int, stride: int, B: int, reverse=False) -> int:
    """Pack rows (truncated to n elements) at row stride ``stride`` elements."""
    W = 2 * d - 1
    zero_slot = bytes(B)
    chunks = []
    if d == 1:
        gap = bytes(B * (stride - n))
        for r in rows:
            m = min(len(r), n)
            chunks.extend(x.to_bytes(B, "little") for x in r[:m])
            chunks.append(bytes(B * (n - m)))
            chunks.append(gap)
    else:
        pad = zero_slot * (W - d)
        gap = zero_slot * (W * (stride - n))
        for r in rows:
            m = min(len(r) // d, n)
            for j in range(m):
                chunks.extend(x.to_bytes(B, "little") for x in r[j * d : (j + 1) * d])
                chunks.append(pad)
            chunks.append(zero_slot * (W * (n - m)))
            chunks.append(gap)
    return _mpz(int.from_bytes(b"".join(chunks), "little"))


def _unpack_rows(prod, nrows_total: int, wanted: Sequence[int], n: int, stride: int, B: int, ctx) -> list[list[int]]:
    d = ctx.d
    W = 2 * d - 1
    q = ctx.q
    total = nrows_total * stride * W * B
    buf = int(prod).to_bytes(total, "little") if prod else bytes(total)
    out = []
    if d == 1:
        for k in wanted:
            base = k * stride * B
            out.append([int.from_bytes(buf[o : o + B], "little") % q for o in range(base, base + n * B, B)])
        return out
    reduce_wide = ctx.reduce_wide
    for k in wanted:
        row = []
        for j in range(n):
            base = (k * stride + j) * W * B
            wide = [int.from_bytes(buf[o : o + B], "little") for o in range(base, base + W * B, B)]
            row.extend(reduce_wide(wide))
        out.append(row)
    return out


def mul_rows(ctx, A: Sequence[Sequence[int]], B_: Sequence[Sequence[int]], n: int, rows=None) -> list[list[int]]:
    """Product of two polynomials in z with series coefficients, mod t^n.

    ``rows`` selects output z-degrees (a range or list); default all of them.
    """
    la, lb = len(A), len(B_)
    total_rows = la + lb - 1
    if rows is None:
        rows = range(max(total_rows, 0))
    if la == 0 or lb == 0 or n == 0:
        return [[0] * (n * ctx.d) for _ in rows]
    d = ctx.d
    stride = 2 * n - 1
    Bsz = _slot_bytes(ctx.q, min(la, lb) * n * d)
    pa = _pack(A, n, d, stride, Bsz)
    if A is B_:
        prod = pa * pa
    else:
        prod = pa * _pack(B_, n, d, stride, Bsz)
    _record(total_rows * stride)
    zero = [0] * (n * d)
    wanted = [k for k in rows if 0 <= k < total_rows]
    got = dict(zip(wanted, _unpack_rows(prod, total_rows, wanted, n, stride, Bsz, ctx)))
    return [got[k] if k in got else list(zero) for k in rows]


def mul_series(ctx, a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    return mul_rows(ctx, [a], [b], n)[0]

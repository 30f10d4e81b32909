"""Dense univariate polynomials over a PrecisionContext, as lists of raw elements.

Only used on small inputs (degree about g): residue-field gcds, interpolation,
squarefree checks.  Coefficients are ascending.
"""

from __future__ import annotations

from .errors import NotUnit


def trim(ctx, a: list) -> list:
    a = list(a)
    while a and ctx.is_zero(a[-1]):
        a.pop()
    return a


def deg(ctx, a) -> int:
    return len(trim(ctx, a)) - 1


def add(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero
    return trim(ctx, [ctx.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def sub(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero
    return trim(ctx, [ctx.sub(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])


def mul(ctx, a, b):
    if not a or not b:
        return []
    out = [ctx.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if ctx.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y))
    return trim(ctx, out)


def scale(ctx, a, c):
    return trim(ctx, [ctx.mul(x, c) for x in a])


def divmod_(ctx, a, b):
    """Division by a polynomial with unit leading coefficient."""
    a, b = trim(ctx, a), trim(ctx, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = ctx.inv(b[-1])
    db = len(b) - 1
    r = list(a)
    qt = [ctx.zero] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = ctx.mul(r[k + db], lead_inv)
        qt[k] = c
        if not ctx.is_zero(c):
            for i in range(db + 1):
                r[k + i] = ctx.sub(r[k + i], ctx.mul(c, b[i]))
    return trim(ctx, qt), trim(ctx, r[:db])


def xgcd(ctx, a, b):
    """Extended gcd over a field context (M == 1): returns (g, s, t), g monic, s a + t b = g."""
    r0, r1 = trim(ctx, a), trim(ctx, b)
    s0, s1 = [ctx.one], []
    t0, t1 = [], [ctx.one]
    while r1:
        qt, r = divmod_(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(ctx, s0, mul(ctx, qt, s1))
        t0, t1 = t1, sub(ctx, t0, mul(ctx, qt, t1))
    if not r0:
        return [], s0, t0
    li = ctx.inv(r0[-1])
    return scale(ctx, r0, li), scale(ctx, s0, li), scale(ctx, t0, li)


def evaluate(ctx, a, x):
    acc = ctx.zero
    for c in reversed(a):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def derivative(ctx, a):
    return trim(ctx, [ctx.scale(a[i], i) for i in range(1, len(a))])


def to_residue(ctx, a):
    res = ctx.residue
    return trim(res, [tuple(c % ctx.p for c in x) for x in a])


def is_squarefree_residue(ctx, a) -> bool:
    """gcd(a, a') == 1 over the residue field."""
    res = ctx.residue
    a0 = to_residue(ctx, a)
    if not a0:
        return False
    g, _, _ = xgcd(res, a0, derivative(res, a0))
    return len(g) == 1


def coprime_residue(ctx, a, b) -> bool:
    res = ctx.residue
    a0, b0 = to_residue(ctx, a), to_residue(ctx, b)
    if not a0 or not b0:
        return bool(a0 and len(a0) == 1) or bool(b0 and len(b0) == 1)
    g, _, _ = xgcd(res, a0, b0)
    return len(g) == 1


def monic_check(ctx, a):
    a = trim(ctx, a)
    if not a or a[-1] != ctx.one:
        raise NotUnit("polynomial is not monic")
    return a

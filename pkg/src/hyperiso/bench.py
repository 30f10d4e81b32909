"""Benchmark harness: forward-generated instances and scaling fits."""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass

from . import _kron, _upoly
from .newton import RHS, solve_full
from .padic import PrecisionContext, floor_log
from .poly import SeriesPoly, deriv_sums, hankel_apply, inverse_sqrt_mod, quotient_inv

BENCH_PRIME = 101


@dataclass
class Instance:
    ctx: PrecisionContext
    f: SeriesPoly
    U0: SeriesPoly
    V0: SeriesPoly
    G: RHS
    U: SeriesPoly
    N: int
    n: int


def random_instance(g: int, n: int, p: int = BENCH_PRIME, N: int = 8, seed: int = 0) -> Instance:
    """A solvable instance built from a random U(t, z) with the solver's own kernels.

    f = V0^2 + U0 R makes V0 a valid initial V; G = H(X) X' is then the
    Hankel product of the derivative sums of U with the inverse square root
    of f.  Suitable for timing; correctness tests use the independent oracle.
    """
    rng = random.Random(seed)
    ctx = PrecisionContext(p, N + floor_log(n, p))
    q = ctx.q
    while True:
        U0 = [(rng.randrange(q),) for _ in range(g)] + [ctx.one]
        V0 = [(rng.randrange(q),) for _ in range(g)]
        if (
            ctx.is_unit(U0[0])
            and _upoly.is_squarefree_residue(ctx, U0)
            and _upoly.coprime_residue(ctx, V0, U0)
        ):
            break
    R = [(rng.randrange(q),) for _ in range(g + 1)] + [ctx.one]
    f = _upoly.add(ctx, _upoly.mul(ctx, V0, V0), _upoly.mul(ctx, U0, R))
    rows = [[U0[i][0]] + [rng.randrange(q) for _ in range(n - 1)] for i in range(g)]
    U = SeriesPoly(ctx, rows + [[1]], n)
    fP = SeriesPoly.constant(ctx, f)
    U0P, V0P = SeriesPoly.constant(ctx, U0), SeriesPoly.constant(ctx, V0)
    W0 = quotient_inv(V0P, U0P)
    W, _ = inverse_sqrt_mod(fP, U, W0, known=1)
    w = (W.zcoeffs + [W.coeff(g)] * g)[:g]
    G = hankel_apply(deriv_sums(U, 2 * g - 1), w)
    return Instance(ctx, fP, U0P, V0P, RHS(G), U, N, n)


def time_instance(inst: Instance, repeat: int = 1) -> tuple[float, _kron.Profile]:
    best, prof_best = math.inf, None
    for _ in range(repeat):
        prof = _kron.Profile()
        t0 = time.perf_counter()
        solve_full(inst.f, inst.U0, inst.V0, inst.G, inst.n, inst.N, inst.ctx, profile=prof)
        elapsed = time.perf_counter() - t0
        if elapsed < best:
            best, prof_best = elapsed, prof
    return best, prof_best


def fit_exponent(xs, ys) -> float:
    """Slope of log y against log x (least squares)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(max(y, 1e-9)) for y in ys]
    return statistics.linear_regression(lx, ly).slope

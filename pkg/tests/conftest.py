import random
import warnings

import pytest

from hyperiso import newton, oracle
from hyperiso.padic import PrecisionContext, floor_log
from hyperiso.poly import SeriesPoly
from hyperiso.series import TruncatedSeries


def to_problem(inst: oracle.ForwardInstance, M: int | None = None):
    """Solver inputs for a forward instance, reduced to M digits."""
    ctx = PrecisionContext(inst.p, M or inst.M)
    f = SeriesPoly.constant(ctx, [c % ctx.q for c in inst.f])
    U0 = SeriesPoly.constant(ctx, [c % ctx.q for c in inst.U0])
    V0 = SeriesPoly.constant(ctx, [c % ctx.q for c in inst.V0])
    G = newton.RHS([TruncatedSeries.from_values(ctx, [c % ctx.q for c in s]) for s in inst.G])
    return ctx, f, U0, V0, G


def run_forward(inst, n, N, M=None, quiet=False, **kw):
    ctx, f, U0, V0, G = to_problem(inst, M)
    with warnings.catch_warnings():
        if quiet:
            warnings.simplefilter("ignore", newton.InsufficientPrecision)
        return newton.solve_full(f, U0, V0, G, n, N, ctx, **kw)


def matches(U: SeriesPoly, table, n, modulus):
    g = len(table) - 1
    if U.degree != g:
        return False
    return all(U.rows[i][k] % modulus == table[i][k] % modulus for i in range(g + 1) for k in range(n))


def forward(seed, p, g, n, N=8, kind="any"):
    rng = random.Random(seed)
    M = N + floor_log(n, p)
    if kind == "split":
        return oracle.random_split_forward(rng, p, g, n, M)
    if kind == "mumford":
        return oracle.random_mumford_forward(rng, p, g, n, M)
    return oracle.random_forward(rng, p, g, n, M)


@pytest.fixture
def ctx81():
    return PrecisionContext(3, 4)


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import lines

    out = lines()
    if out:
        terminalreporter.section("acceptance criteria")
        for line in out:
            terminalreporter.write_line(line)

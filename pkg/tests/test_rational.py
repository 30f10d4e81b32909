import random

import pytest
from hypothesis import given, settings, strategies as st

from ell_instance import compare_with_cantor, curve_points, reconstruct_ell, P
from hyperiso import _upoly, rational
from hyperiso.errors import NoSolution, PoleAtPoint
from hyperiso.padic import PrecisionContext
from hyperiso.poly import SeriesPoly
from hyperiso.rational import Fraction, pade, reconstruct
from hyperiso.series import TruncatedSeries

CTX = PrecisionContext(5, 4)


def S(values, ctx=CTX):
    return TruncatedSeries.from_values(ctx, values)


def plain(fr):
    return fr.values()


class TestPade:
    def test_geometric(self):
        assert plain(pade(S([1] * 6), 0, 1)) == ([1], [1, CTX.q - 1])

    def test_polynomial(self):
        assert plain(pade(S([1, 2, 3, 0, 0, 0]), 2, 2)) == ([1, 2, 3], [1])

    def test_mobius(self):
        assert plain(pade(S([1, 2, 2, 2, 2, 2]), 1, 1)) == ([1, 1], [1, CTX.q - 1])

    def test_no_solution(self):
        with pytest.raises(NoSolution):
            pade(S([1, 1, 0, 1, 0, 0, 1, 1]), 0, 1)

    def test_too_short(self):
        with pytest.raises(ValueError):
            pade(S([1, 2]), 1, 1)

    def test_excess_bounds_give_lowest_terms(self):
        # (1 + t)/(1 - t) again, with generous bounds
        assert plain(pade(S([1] + [2] * 11), 4, 4)) == ([1, 1], [1, CTX.q - 1])


class TestReconstruct:
    def test_constant(self):
        U = SeriesPoly.constant(CTX, [3, 4, 1], 6)
        V = SeriesPoly.constant(CTX, [2, 1], 6)
        rep = reconstruct(U, V, 2)
        assert [plain(f) for f in rep.u_fracs] == [([3], [1]), ([4], [1])]
        assert [plain(f) for f in rep.v_fracs] == [([2], [1]), ([1], [1])]

    def test_forward_rational_instance(self):
        rng = random.Random(3)
        fr = [_random_fraction(rng, 3, 2) for _ in range(4)]
        n = 12
        U = SeriesPoly.from_series([fr[0].series(n), fr[1].series(n), TruncatedSeries.constant(CTX, 1, n)])
        V = SeriesPoly.from_series([fr[2].series(n), fr[3].series(n)])
        rep = reconstruct(U, V, 4)
        assert rep.u_fracs + rep.v_fracs == fr

    def test_json(self):
        U = SeriesPoly.constant(CTX, [3, 4, 1], 6)
        V = SeriesPoly.constant(CTX, [2, 1], 6)
        out = reconstruct(U, V, 2, u0=7).to_json()
        assert out["u0"] == ["7"]
        assert [c["role"] for c in out["coefficients"]] == ["u_0", "u_1", "v_0", "v_1"]
        assert out["coefficients"][0] == {"role": "u_0", "num": [["3"]], "den": [["1"]]}


class TestEvaluate:
    def test_base_point(self):
        rep = reconstruct_ell(3, 56, 27)
        from ell_instance import solve_ell

        _, _, res, _ = solve_ell(3, 56)
        U, V = rational.evaluate(rep, 1)
        assert U == [r[0] % P for r in res.U.at_t0()]
        assert V == [r[0] % P for r in res.state.V.at_t0()]

    def test_pole(self):
        fr = Fraction(((1,),), ((1,), (1,)), CTX)  # 1 / (1 + t)
        rep = rational.RationalRepresentation([fr], [fr], (0,), CTX)
        with pytest.raises(PoleAtPoint):
            rational.evaluate(rep, 4)

    def test_cantor_points(self):
        rep = reconstruct_ell(3, 56, 27)
        agree, total = compare_with_cantor(rep, 3, curve_points())
        assert total >= 20 and agree == total

    def test_u_variable(self):
        rep = reconstruct_ell(3, 56, 27)
        rep_u = rep.in_u()
        for x, y in curve_points()[:8]:
            try:
                a = rational.evaluate(rep, x, y)
            except PoleAtPoint:
                continue
            assert rational.evaluate(rep_u, x, y) == a

    def test_stability(self):
        a = reconstruct_ell(3, 56, 27)
        b = reconstruct_ell(3, 64, 27)
        assert a.u_fracs == b.u_fracs and a.v_fracs == b.v_fracs


def _random_fraction(rng, dn, dd):
    """A fraction whose reduction mod p keeps both degrees and stays in lowest terms."""
    while True:
        num = [rng.randrange(CTX.q) for _ in range(dn + 1)]
        den = [1] + [rng.randrange(CTX.q) for _ in range(dd)]
        if num[-1] % 5 == 0 or (dd and den[-1] % 5 == 0):
            continue
        if dd and not _upoly.coprime_residue(CTX, [(c,) for c in num], [(c,) for c in den]):
            continue
        return Fraction(tuple((c,) for c in num), tuple((c,) for c in den), CTX)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9), st.integers(0, 5), st.integers(0, 5), st.integers(0, 3), st.integers(0, 3))
def test_pade_round_trip(seed, dn, dd, extra_num, extra_den):
    rng = random.Random(seed)
    fr = _random_fraction(rng, dn, dd)
    n = dn + dd + extra_num + extra_den + 1 + max(extra_num, extra_den)
    assert pade(fr.series(n), dn + extra_num, dd + extra_den) == fr

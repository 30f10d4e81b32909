"""Command-line interface: ``hyperiso solve | check | bench``.

Exit codes: 0 success, 2 malformed spec, 3 solver error (the error name is
printed as JSON on stderr), 4 a ``check`` failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import warnings
from dataclasses import dataclass, field

import jsonschema

from . import bench, geometry, newton, oracle, rational
from .errors import HyperisoError, InsufficientPrecision, PoleAtPoint
from .padic import PrecisionContext, floor_log
from .poly import SeriesPoly
from .series import TruncatedSeries

ELEMENT = {
    "oneOf": [
        {"type": "integer"},
        {"type": "string", "pattern": "^-?[0-9]+$"},
        {"type": "array", "items": {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}},
    ]
}
POLY = {"type": "array", "items": ELEMENT, "minItems": 1}
POINT = {"type": "array", "items": ELEMENT, "minItems": 2, "maxItems": 2}

SPEC_SCHEMA = {
    "type": "object",
    "required": ["context", "curve", "rhs", "n"],
    "properties": {
        "context": {
            "type": "object",
            "required": ["p", "N"],
            "properties": {
                "p": {"type": "integer", "minimum": 3},
                "N": {"type": "integer", "minimum": 1},
                "M": {"type": "integer", "minimum": 1},
                "d": {"type": "integer", "minimum": 1},
                "modulus": POLY,
            },
        },
        "curve": {"type": "object", "required": ["f"], "properties": {"f": POLY}},
        "initial": {
            "type": "object",
            "properties": {
                "U0": POLY,
                "V0": POLY,
                "points": {"type": "array", "items": POINT, "minItems": 1},
            },
        },
        "rhs": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["series", "mult-by-ell", "matrix"]},
                "G": {"type": "array", "items": {"type": "array", "items": ELEMENT}},
                "ell": {"type": "integer"},
                "Mmat": {"type": "array", "items": {"type": "array", "items": ELEMENT}},
                "Q": POINT,
            },
        },
        "n": {"type": "integer", "minimum": 1},
        "options": {
            "type": "object",
            "properties": {
                "reconstruct": {"type": "boolean"},
                "bound": {"type": "integer", "minimum": 0},
                "var": {"enum": ["t", "u"]},
                "samples": {"type": "integer", "minimum": 1},
            },
        },
    },
}


class SpecError(Exception):
    """Malformed or inconsistent problem spec (exit code 2)."""


def _int(v) -> int:
    return int(v)


def _elem(ctx: PrecisionContext, v):
    if isinstance(v, list):
        if len(v) != ctx.d:
            raise SpecError(f"element {v} has {len(v)} coordinates, expected {ctx.d}")
        return tuple(_int(x) % ctx.q for x in v)
    return ctx.raw(_int(v) % ctx.q)


def _enc(ctx: PrecisionContext, raw) -> list[str]:
    return [str(c) for c in raw]


@dataclass
class Problem:
    ctx: PrecisionContext
    N: int
    n: int
    curve: geometry.CurveData
    U0: SeriesPoly
    V0: SeriesPoly
    G: newton.RHS
    Q: geometry.CurvePoint | None = None
    ell: int | None = None
    points: list | None = None
    options: dict = field(default_factory=dict)

    @property
    def g(self) -> int:
        return self.U0.degree


def load_problem(data: dict, precision_digits: int | None = None) -> Problem:
    """Validate a spec dictionary and build every object the solver needs."""
    try:
        jsonschema.validate(data, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(exc.message) from None
    c = data["context"]
    p, N, n, d = c["p"], c["N"], data["n"], c.get("d", 1)
    M = precision_digits or c.get("M") or N + floor_log(n, p)
    modulus = [_int(x) for x in c["modulus"]] if "modulus" in c else None
    try:
        ctx = PrecisionContext(p, M, d, modulus)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    try:
        curve = geometry.CurveData(tuple(_elem(ctx, v) for v in data["curve"]["f"]), ctx)
    except ValueError as exc:
        raise SpecError(str(exc)) from None
    rhs = data["rhs"]
    kind = rhs["kind"]
    Q = None
    if kind in ("mult-by-ell", "matrix"):
        if "Q" not in rhs:
            raise SpecError(f"rhs kind {kind!r} needs a base point Q")
        u0, v0 = (_elem(ctx, v) for v in rhs["Q"])
        Q = _lift_point(curve, u0, v0)
    init = data.get("initial", {})
    points = None
    if "points" in init:
        points = []
        for x, y in init["points"]:
            pt = _lift_point(curve, _elem(ctx, x), _elem(ctx, y))
            points.append((pt.u0, pt.v0))
        U0, V0 = geometry.mumford_from_points(points, ctx)
        if U0.ctx != ctx:
            raise SpecError("initial points must be given over a base-ring context (d = 1)")
    elif "U0" in init and "V0" in init:
        U0 = SeriesPoly.constant(ctx, [_elem(ctx, v) for v in init["U0"]])
        V0 = SeriesPoly.constant(ctx, [_elem(ctx, v) for v in init["V0"]])
    elif kind == "mult-by-ell":
        U0, V0 = geometry.mult_ell_initial_data(curve, Q, rhs["ell"])
    else:
        raise SpecError("initial data (U0, V0 or points) is required")
    g = U0.normalized().degree
    if g != curve.g:
        raise SpecError(f"U0 has degree {g} but the curve has genus {curve.g}")
    order = max(n - 1, 1)
    if kind == "series":
        if "G" not in rhs or len(rhs["G"]) != g:
            raise SpecError(f"rhs.G must list {g} series")
        G = newton.RHS([TruncatedSeries.from_values(ctx, [_elem(ctx, v) for v in s], order) for s in rhs["G"]])
    elif kind == "mult-by-ell":
        if "ell" not in rhs:
            raise SpecError("rhs.ell is required")
        G = geometry.build_G_mult_ell(curve, Q, rhs["ell"], order)
    else:
        if "Mmat" not in rhs:
            raise SpecError("rhs.Mmat is required")
        G = geometry.build_G_matrix(curve, Q, [[_elem(ctx, v) for v in row] for row in rhs["Mmat"]], order)
    return Problem(ctx, N, n, curve, U0, V0, G, Q, rhs.get("ell"), points, dict(data.get("options", {})))


def _lift_point(curve: geometry.CurveData, u0, v0) -> geometry.CurvePoint:
    """Accept an exact point, or a residue-field branch to be Hensel-lifted."""
    ctx = curve.ctx
    if ctx.mul(v0, v0) == curve(u0):
        return geometry.CurvePoint(u0, v0)
    return geometry.point_from_u(curve, u0, tuple(x % ctx.p for x in v0))


def default_bound(n: int) -> int:
    """Largest Pade degree bound the series order supports."""
    return max((n - 2) // 2, 0)


def run_solve(prob: Problem, reconstruct: bool = False, var: str = "t", bound: int | None = None, step4_sign: int = 1, timings: bool = False) -> dict:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InsufficientPrecision)
        res = newton.solve_full(prob.curve.poly(), prob.U0, prob.V0, prob.G, prob.n, prob.N, prob.ctx, step4_sign=step4_sign)
    out_ctx = res.U.ctx
    state = res.state
    rorder = newton.residual_order(state, prob.G, min(prob.N, prob.ctx.M - state.loss)) if prob.n > 1 else 0
    result = {
        "context": {**out_ctx.to_json(), "N": prob.N, "working_M": prob.ctx.M},
        "g": prob.g,
        "n": prob.n,
        "U": [[_enc(out_ctx, s.raw(i)) for i in range(s.n)] for s in res.U.zcoeffs],
        "diagnostics": {
            "precision_loss": state.loss,
            "guard_digits": prob.ctx.M - prob.N,
            "residual_order": rorder,
            "mumford_invariant": newton.mumford_invariant_holds(state, min(prob.N, prob.ctx.M - state.loss)),
        },
    }
    if timings:
        result["diagnostics"]["timings"] = {k: round(v, 6) for k, v in res.profile.times.items()}
        result["diagnostics"]["products"] = dict(res.profile.products)
    if reconstruct:
        rep = reconstruct_problem(prob, res, bound)
        if var == "u":
            rep = rep.in_u()
        result["rational_representation"] = rep.to_json()
    return result


def reconstruct_problem(prob: Problem, res: newton.SolveResult, bound: int | None = None) -> rational.RationalRepresentation:
    bound = default_bound(prob.n) if bound is None else bound
    v_series, u0 = None, 0
    if prob.Q is not None:
        _, v_series = geometry.local_expansion(prob.curve, prob.Q, prob.n)
        u0 = prob.Q.u0
    return rational.reconstruct(res.U, res.state.V, bound, u0, v_series)


def run_check(prob: Problem, bound: int | None = None, samples: int = 20, step4_sign: int = 1) -> list[tuple[str, bool, str]]:
    """Oracle comparisons and invariants; returns (name, passed, detail) rows."""
    checks = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InsufficientPrecision)
        try:
            res = newton.solve_full(prob.curve.poly(), prob.U0, prob.V0, prob.G, prob.n, prob.N, prob.ctx, step4_sign=step4_sign)
        except HyperisoError as exc:
            return [("residual", False, f"solver stopped with {exc.code}: {exc}")]
    state = res.state
    digits = min(prob.N, prob.ctx.M - state.loss)
    rorder = newton.residual_order(state, prob.G, digits) if prob.n > 1 else 0
    need = prob.n - 1
    checks.append(("residual", rorder >= need, f"vanishes to order {rorder}, need {need}"))
    checks.append(("mumford_invariant", newton.mumford_invariant_holds(state, digits), "U | f - V^2"))
    if prob.points is not None and prob.ctx.d == 1:
        p, M = prob.ctx.p, prob.ctx.M
        G = [s.values() for s in prob.G.G]
        inst = oracle.SplitInstance(p, M, [c[0] for c in prob.curve.f], [x[0] for x, _ in prob.points], [y[0] for _, y in prob.points], G)
        X = oracle.solve_coordinatewise(inst, prob.n)
        Uc = oracle.roots_to_mumford(X, prob.n, p**prob.N)
        same = all(
            res.U.rows[i][k] % p**prob.N == Uc[i][k] for i in range(prob.g + 1) for k in range(prob.n)
        )
        checks.append(("coordinatewise", same, "prod (z - x_i(t)) from the coordinate-wise solver"))
    if prob.ell is not None and prob.ctx.d == 1:
        checks.append(_cantor_check(prob, res, bound, samples))
    return checks


def _cantor_check(prob: Problem, res, bound, samples) -> tuple[str, bool, str]:
    try:
        rep = reconstruct_problem(prob, res, bound)
    except HyperisoError as exc:
        return ("cantor", False, f"reconstruction failed: {exc.code}: {exc}")
    p = prob.ctx.p
    f = [c[0] % p for c in prob.curve.f]
    tried = agree = 0
    for x in range(p):
        fx = sum(c * pow(x, i, p) for i, c in enumerate(f)) % p
        if fx == 0:
            continue
        for y in range(1, p):
            if y * y % p != fx:
                continue
            D = oracle.cantor_mul(oracle.point_divisor(x, y, p), prob.ell, f, p)
            if len(D.a) - 1 != prob.g:
                continue
            try:
                Ue, Ve = rational.evaluate(rep, x, y)
            except PoleAtPoint:
                continue
            tried += 1
            Vd = list(D.b) + [0] * (prob.g - len(D.b))
            agree += list(D.a) == Ue and Vd == Ve
            if tried >= samples:
                break
        if tried >= samples:
            break
    ok = tried > 0 and agree == tried
    return ("cantor", ok, f"{agree}/{tried} points agree with [{prob.ell}] via Cantor")


def _parse_range(text: str) -> list[int]:
    """``a..b`` gives a, 2a, 4a, ... <= b; ``a,b,c`` gives the list."""
    if ".." in text:
        lo, hi = (int(x) for x in text.split(".."))
        out = []
        v = lo
        while lo > 0 and v <= hi:
            out.append(v)
            v *= 2
        return out
    return [int(x) for x in text.split(",") if x.strip()]


def run_bench(gs, ns, repeat=1, seed=0):
    rows = []
    for g in gs:
        for n in ns:
            inst = bench.random_instance(g, n, seed=seed)
            t, prof = bench.time_instance(inst, repeat)
            row = {"g": g, "n": n, "total_s": round(t, 6)}
            for label in newton.STEP_LABELS + ("refresh",):
                row[f"{label}_s"] = round(prof.times.get(label, 0.0), 6)
                row[f"{label}_products"] = prof.products.get(label, 0)
            rows.append(row)
    return rows


def fitted_exponents(rows) -> dict:
    out = {}
    by_g: dict = {}
    by_n: dict = {}
    for r in rows:
        by_g.setdefault(r["g"], []).append(r)
        by_n.setdefault(r["n"], []).append(r)
    for g, rs in sorted(by_g.items()):
        if len(rs) > 1:
            out[f"n_exponent_g{g}"] = bench.fit_exponent([r["n"] for r in rs], [r["total_s"] for r in rs])
    for n, rs in sorted(by_n.items()):
        if len(rs) > 1:
            out[f"g_exponent_n{n}"] = bench.fit_exponent([r["g"] for r in rs], [r["total_s"] for r in rs])
    return out


def _fail(code: int, name: str, message: str) -> int:
    print(json.dumps({"error": name, "message": message}), file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperiso", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-digits", type=int, help="working digits M (default N + floor(log_p n))")
    common.add_argument("--reconstruct", action="store_true", help="add the rational representation")
    common.add_argument("--var", choices=["t", "u"], default=None, help="variable of the output fractions")
    common.add_argument("--bound", type=int, help="Pade degree bound (default (n - 2) // 2)")
    common.add_argument("--flip-step4-sign", action="store_true", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", parents=[common], help="solve a problem spec")
    p_solve.add_argument("spec")
    p_solve.add_argument("-o", "--output", help="result file (default stdout)")
    p_solve.add_argument("--timings", action="store_true", help="include per-step timings (not deterministic)")

    p_check = sub.add_parser("check", parents=[common], help="run oracle checks on a spec")
    p_check.add_argument("spec")
    p_check.add_argument("--samples", type=int, default=None, help="points for the Cantor comparison")

    p_bench = sub.add_parser("bench", help="time forward-generated instances")
    p_bench.add_argument("--g", default="4", help="genus range a..b (doubling) or list")
    p_bench.add_argument("--n", default="256", help="order range a..b (doubling) or list")
    p_bench.add_argument("--repeat", type=int, default=1)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("-o", "--output", help="CSV file (default stdout)")
    return parser


def _load(path: str, args) -> Problem:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read spec: {exc}") from None
    return load_problem(data, args.precision_digits)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "bench":
        rows = run_bench(_parse_range(args.g), _parse_range(args.n), args.repeat, args.seed)
        fh = open(args.output, "w", newline="") if args.output else sys.stdout
        try:
            fields = ["g", "n", "total_s"] + [f"{l}_{k}" for l in newton.STEP_LABELS + ("refresh",) for k in ("s", "products")]
            writer = csv.DictWriter(fh, fieldnames=fields)
            writer.writeheader()
            writer.writerows(rows)
        finally:
            if args.output:
                fh.close()
        for key, val in fitted_exponents(rows).items():
            print(f"# {key} = {val:.3f}", file=sys.stderr)
        return 0

    sign = -1 if args.flip_step4_sign else 1
    try:
        prob = _load(args.spec, args)
        opts = prob.options
        bound = args.bound if args.bound is not None else opts.get("bound")
        if args.command == "solve":
            result = run_solve(
                prob,
                reconstruct=args.reconstruct or opts.get("reconstruct", False),
                var=args.var or opts.get("var", "t"),
                bound=bound,
                step4_sign=sign,
                timings=args.timings,
            )
            text = json.dumps(result, indent=1, sort_keys=True) + "\n"
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        samples = args.samples or opts.get("samples", 20)
        checks = run_check(prob, bound, samples, sign)
    except SpecError as exc:
        return _fail(2, "SpecError", str(exc))
    except HyperisoError as exc:
        return _fail(3, exc.code, str(exc))
    failed = False
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        failed |= not ok
    return 4 if failed else 0


if __name__ == "__main__":
    sys.exit(main())

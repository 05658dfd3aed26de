"""Command-line interface.

Every command prints its result payload as JSON; ``--json`` prints the full
run report (command, inputs, result, timings, seed) instead.  Big integers
are written as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import numpy as np
from mpmath import mp

from . import asymptotics, exact, flow, naive, pairing, summation, switching
from .degrees import Multigraph, as_degrees, as_mset, validate
from .errors import MulticountError, ParseError, Unachievable

ESTIMATORS = ("theorem1", "corollary", "pairing", "naive", "theorem5")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--degrees", help="comma-separated degree sequence, e.g. 3,3,3,3")
    p.add_argument("--J", default="0,1", help='link multiplicity set, e.g. "0,1" or "0,1,+4"')
    p.add_argument("--Jstar", default="0", help="loop multiplicity set")
    p.add_argument("--json", action="store_true", help="print the full run report")
    p.add_argument("--budget", type=int, default=None, help="node limit for exact searches")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multicount", description="Count, estimate, sample and switch degree-constrained multigraphs.")
    top = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    count = top.add_parser("count", help="exact counts")
    csub = count.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("exact", "region", "class"):
        p = csub.add_parser(name)
        _common(p)
        if name == "exact":
            p.add_argument("--method", choices=("dp", "backtrack"), default="dp")
        if name == "region":
            p.add_argument("--region", choices=exact.REGIONS, default="G0")
        if name == "class":
            p.add_argument("--sig", default=None, help="l,d,t; omit for the full census")

    est = top.add_parser("estimate", help="asymptotic estimates")
    esub = est.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ESTIMATORS:
        p = esub.add_parser(name)
        _common(p)
        if name == "corollary":
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--n", type=int, required=True)
        if name == "naive":
            p.add_argument("--p", default=None, help="fixed p; default solves for p0")
            p.add_argument("--p-mode", choices=naive.MODES, default="solved_exact")

    p = top.add_parser("compare", help="exact count against every estimator")
    _common(p)

    sample = top.add_parser("sample", help="random pairings or random matrices")
    ssub = sample.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("pairing", "matrix"):
        p = ssub.add_parser(name)
        _common(p)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--reps", type=int, default=1)
        if name == "matrix":
            p.add_argument("--n", type=int, default=None)
            p.add_argument("--p", default=None)

    sw = top.add_parser("switch", help="switching diagnostics on one multigraph")
    wsub = sw.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("stats", "active", "moves", "apply", "reverse"):
        p = wsub.add_parser(name)
        _common(p)
        p.add_argument("--graph", required=True, help="multigraph JSON file")
        if name in ("moves", "reverse"):
            p.add_argument("--colour", type=int, required=True)
        if name == "moves":
            p.add_argument("--no-priority", action="store_true", help="list structural moves even if the colour is not active")
        if name == "reverse":
            p.add_argument("--no-priority", action="store_true", help="drop the active-colour filter on preimages")
        if name == "apply":
            p.add_argument("--move", required=True, help='move JSON, e.g. {"colour": 1, "seq": [1, 2]}')

    ver = top.add_parser("verify", help="checks of the switching bound and summation envelopes")
    vsub = ver.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = vsub.add_parser("theorem2")
    _common(p)
    p.add_argument("--network", required=True, help="network JSON file")
    p = vsub.add_parser("switchings")
    _common(p)
    p.add_argument("--colours", default=None, help="comma list of colours; default all")
    p.add_argument("--no-priority", action="store_true")
    p = vsub.add_parser("summation")
    _common(p)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    return parser


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def _instance(args):
    if not args.degrees:
        raise ParseError("--degrees is required")
    return as_degrees(args.degrees), as_mset(args.J), as_mset(args.Jstar)


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str) -> Multigraph:
    try:
        return Multigraph.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad multigraph JSON in {path}: {exc}") from exc


def _count(args, timer):
    k, J, Jstar = _instance(args)
    validate(k, J, Jstar)
    if args.action == "exact":
        c = exact.count_exact(k, J, Jstar, method=args.method, budget=args.budget)
        return {"mode": "exact", "method": args.method, "count": str(c)}
    if args.action == "region":
        th = switching.thresholds(k)
        c = exact.count_region(k, J, Jstar, args.region, budget=args.budget)
        return {"mode": "exact", "region": args.region, "count": str(c), "thresholds": th.to_json()}
    census = exact.class_census(k, budget=args.budget)
    if args.sig:
        try:
            sig = exact.ClassSignature(*(int(x) for x in args.sig.split(",")))
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad signature {args.sig!r}") from exc
        return {"mode": "exact", "sig": [sig.ell, sig.d, sig.t], "count": str(census.get(sig, 0))}
    return {"mode": "exact", "census": [{"sig": [s.ell, s.d, s.t], "count": str(c)} for s, c in census.items()]}


def _estimate_one(name: str, k, J, Jstar, args=None) -> dict:
    if name == "theorem1":
        e = asymptotics.sparse_estimate(k, J, Jstar)
        return {"mode": "estimate", "estimate": e.to_json()}
    if name == "corollary":
        kreg, n = (args.k, args.n) if args is not None and getattr(args, "k", None) else (k.degrees[0], k.n)
        main, corr = asymptotics.regular_exponent(kreg, n, J, Jstar)
        e = asymptotics.regular_estimate(kreg, n, J, Jstar)
        return {"mode": "estimate", "Q": float(main + corr), "Q_exact": str(main + corr), "estimate": e.to_json()}
    if name == "pairing":
        e = asymptotics.simple_pairing_asymptotic(k)
        return {"mode": "estimate", "estimate": e.to_json()}
    if name == "naive":
        p_arg = getattr(args, "p", None) if args is not None else None
        if p_arg is not None:
            with mp.workdps(asymptotics.DPS):
                params = naive.NaiveParams(mp.mpf(p_arg), "fixed")
        else:
            params = naive.solve_p0(k.kbar, k.n, J, Jstar, getattr(args, "p_mode", "solved_exact"))
        e = naive.g_naive(k, J, Jstar, params)
        return {"mode": "estimate", "params": params.to_json(), "estimate": e.to_json()}
    e = naive.naive_corrected_estimate(k, J, Jstar)
    return {"mode": "estimate", "p_mode": "solved_exact", "estimate": e.to_json()}


def _estimate(args, timer):
    if args.action == "corollary":
        k = as_degrees((args.k,) * args.n)
        return _estimate_one("corollary", k, as_mset(args.J), as_mset(args.Jstar), args)
    k, J, Jstar = _instance(args)
    return _estimate_one(args.action, k, J, Jstar, args)


def _compare(args, timer):
    k, J, Jstar = _instance(args)
    validate(k, J, Jstar)
    t0 = time.perf_counter()
    count = exact.count_exact(k, J, Jstar, budget=args.budget)
    timer["exact"] = time.perf_counter() - t0
    rows = {}
    regular = len(set(k.degrees)) == 1
    with mp.workdps(asymptotics.DPS):
        log_exact = mp.log(count) if count else None
        for name in ESTIMATORS:
            if name == "corollary" and not regular:
                continue
            t0 = time.perf_counter()
            if name == "theorem1":
                e = asymptotics.sparse_estimate(k, J, Jstar)
            elif name == "corollary":
                e = asymptotics.regular_estimate(k.degrees[0], k.n, J, Jstar)
            elif name == "pairing":
                # counts simple pairings; divide by prod k_i! to compare with simple graphs
                base = asymptotics.simple_pairing_asymptotic(k)
                e = asymptotics.Estimate.build(
                    base.leading_term / exact.degree_factorial_product(k), base.exponent_terms, base.error_scale, "pairing/prod k!"
                )
            else:
                fn = naive.g_naive if name == "naive" else naive.naive_corrected_estimate
                try:
                    e = fn(k, J, Jstar)
                except Unachievable as exc:
                    # dense sequences have no p0; report the row instead of dropping the comparison
                    rows[name] = {"error": "Unachievable", "message": str(exc)}
                    continue
            timer[name] = time.perf_counter() - t0
            row = {"estimate": e.to_json()}
            if log_exact is not None and not e.zero:
                diff = e.log_value - log_exact
                row["log_difference"] = float(diff)
                row["ratio_estimate_over_exact"] = float(mp.exp(diff))
            rows[name] = row
    with asymptotics.unlimited_digits():
        exact_text = str(count)
    return {"mode": "compare", "exact_count": exact_text, "estimators": rows}


def _sample(args, timer):
    out = []
    if args.action == "pairing":
        k = as_degrees(args.degrees or "")
        rng = np.random.default_rng(args.seed)
        for _ in range(args.reps):
            P = pairing.sample_pairing(k, rng=rng)
            out.append({"pairing": P.to_json(), "multigraph": pairing.project(P).to_json()})
        return {"mode": "sample", "samples": out}
    J, Jstar = as_mset(args.J), as_mset(args.Jstar)
    if args.p is not None:
        p = float(args.p)
        n = args.n if args.n is not None else as_degrees(args.degrees or "").n
    else:
        k = as_degrees(args.degrees or "")
        n = args.n if args.n is not None else k.n
        p = float(naive.solve_p0(k.kbar, n, J, Jstar).p)
    ss = np.random.SeedSequence(args.seed)
    for child in ss.spawn(args.reps):
        seed = int(child.generate_state(1, dtype=np.uint64)[0])
        out.append(naive.sample_matrix(n, p, J, Jstar, seed).to_json())
    return {"mode": "sample", "p": p, "samples": out}


def _switch(args, timer):
    Q = _load_graph(args.graph)
    k = as_degrees(args.degrees) if args.degrees else as_degrees(Q.degrees())
    ctx = switching.SwitchingContext.create(k, args.J, args.Jstar)
    if args.action == "stats":
        return {"stats": switching.stats(Q).to_json(), "thresholds": ctx.th.to_json(),
                "in_G0": ctx.in_g0(Q), "in_Y": ctx.in_y(Q), "in_Z": ctx.in_z(Q)}
    if args.action == "active":
        return {"active_colour": ctx.active_colour(Q), "thresholds": ctx.th.to_json()}
    if args.action == "moves":
        moves = switching.enumerate_moves(Q, args.colour, None if args.no_priority else ctx)
        return {"colour": args.colour, "count": len(moves), "moves": [m.to_json() for m in moves]}
    if args.action == "apply":
        try:
            m = switching.SwitchingMove.from_json(json.loads(args.move))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad move {args.move!r}") from exc
        R, trace = switching.apply_chain(Q, [m])
        return {"result": R.to_json(), "trace": trace}
    n = switching.reverse_count(Q, args.colour, ctx, priority=not args.no_priority)
    b = switching.reverse_bound(args.colour, k)
    return {"colour": args.colour, "reverse_count": str(n), "b_c": str(b), "priority": not args.no_priority}


def _verify(args, timer):
    if args.action == "theorem2":
        net, Y, Z = flow.FlowNetwork.from_json(_load_json(args.network))
        report = flow.feasible(net)
        cert = flow.verify_bound(net, Y, Z)
        out = cert.to_json()
        out["violations"] = [v.to_json() for v in report.violations]
        return out
    if args.action == "switchings":
        k, J, Jstar = _instance(args)
        validate(k, J, Jstar)
        colours = [int(c) for c in args.colours.split(",")] if args.colours else None
        cs, Y, Z = flow.switching_setup(k, J, Jstar, colours, priority=not args.no_priority, budget=args.budget)
        net = flow.from_counting_setup(cs)
        report = flow.feasible(net)
        out = {"classes": len(cs.classes), "edges": len(net.edges), "Y": len(Y), "Z": len(Z),
               "feasible": report.ok, "violations": [v.to_json() for v in report.violations]}
        try:
            out["bound"] = flow.verify_bound(net, Y, Z).to_json()
        except MulticountError as exc:
            out["bound"] = {"error": type(exc).__name__, "message": str(exc)}
        return out
    return _random_summation(args.reps, args.seed)


def _random_summation(reps: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    bad = {"perturbed": 0, "damped": 0}
    for _ in range(reps):
        bad["perturbed"] += not summation.perturbed_sum_bounds(summation.random_perturbed(rng)).holds
        bad["damped"] += not summation.damped_sum_bounds(summation.random_damped(rng)).holds
    return {"reps": reps, "violations": bad, "holds": not any(bad.values())}


HANDLERS = {"count": _count, "estimate": _estimate, "compare": _compare, "sample": _sample, "switch": _switch, "verify": _verify}


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int) and not isinstance(x, bool) and abs(x) >= 2**53:
        return str(x)
    raise TypeError(f"cannot serialise {type(x).__name__}")


def run(argv: list[str] | None = None) -> dict:
    """Parse ``argv`` and execute; returns the run report."""
    args = build_parser().parse_args(argv)
    timer: dict = {}
    t0 = time.perf_counter()
    result = HANDLERS[args.command](args, timer)
    timer["total"] = time.perf_counter() - t0
    inputs = {k: v for k, v in vars(args).items() if k not in ("json",)}
    return {
        "command": " ".join(x for x in (args.command, getattr(args, "action", None)) if x),
        "inputs": inputs,
        "result": result,
        "timings": timer,
        "seed": getattr(args, "seed", None),
    }


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report = run(argv)
    except MulticountError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    payload = report if "--json" in argv else report["result"]
    print(json.dumps(payload, indent=2, default=_jsonable))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every subcommand except ``family`` writes one JSON report to stdout and a
short human summary to stderr. Exit codes: 0 ok, 1 invalid input, 2 budget
exceeded, 3 cross-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .budget import DEFAULT_MAX_NODES, Budget, BudgetExceeded
from .census import census as run_census
from .certificates import (
    CertificateError,
    CrossCheckError,
    concrete_certificate,
    find_threshold,
    fraction_str,
    hosi_noncriticality_numbers,
    moore5_bounds,
    octagon_bounds,
    octagon_threshold,
    order_formulas,
    polygon_bounds,
)
from .coloring import (
    ColoringError,
    check_proper,
    color_subdivision_1,
    color_subdivision_k,
    decide_prcf,
    find_rainbow_cycle,
    few_colors_certificate,
    num_colors,
    vizing_color,
)
from .families import FAMILY_NAMES, FamilySpec, build_with_provenance
from .formats import parse_coloring_text, parse_graph, to_coloring_text, to_dot, to_edge_list, to_graph6
from .graph_core import Graph, GraphError, bipartition, classify, diameter, girth, is_connected

ENV_PREFIX = "PRCF_"

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_CROSSCHECK = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env(name: str, default, cast):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw == "":
        return default
    try:
        return cast(raw)
    except ValueError:
        raise UsageError(f"bad value for {ENV_PREFIX}{name}: {raw!r}") from None


def _jsonable(x):
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


def _add_graph_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_argument_group("graph selection")
    g.add_argument("--family", choices=FAMILY_NAMES)
    g.add_argument("--input", metavar="FILE", help="edge-list or graph6 file ('-' for stdin)")
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--q", type=int)
    g.add_argument("--k", type=int, help="theta path interior size")
    g.add_argument("--subdivide", type=int, metavar="K")


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock time (byte-stable reports)")


def _budget(args) -> Budget:
    max_nodes = args.max_nodes if args.max_nodes is not None else _env("MAX_NODES", DEFAULT_MAX_NODES, int)
    max_seconds = args.max_seconds if args.max_seconds is not None else _env("MAX_SECONDS", None, float)
    return Budget(max_nodes=max_nodes, max_seconds=max_seconds)


def _workers(args) -> int:
    w = args.workers if args.workers is not None else _env("WORKERS", 1, int)
    if w < 1:
        raise UsageError("--workers must be at least 1")
    return w


def _load_graph(args):
    """Return ``(graph, subdivision_or_None, descriptor)``."""
    if args.family and args.input:
        raise UsageError("give either --family or --input, not both")
    if args.family:
        spec = FamilySpec(args.family, n=args.n, m=args.m, q=args.q, k=args.k, subdivide=args.subdivide)
        g, sub = build_with_provenance(spec)
        return g, sub, {"family": spec.describe()}
    if args.input:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            try:
                with open(args.input) as fh:
                    text = fh.read()
            except OSError as exc:
                raise UsageError(f"cannot read {args.input}: {exc}") from None
        g = parse_graph(text)
        return g, None, {"input": args.input}
    raise UsageError("a graph is required: use --family or --input")


def _verify(g: Graph, colors, budget: Budget) -> dict:
    proper = check_proper(g, colors)
    try:
        cyc = find_rainbow_cycle(g, colors, budget)
        rainbow = {"rainbow_cycle": cyc, "rainbow_checked": True}
    except BudgetExceeded as exc:
        rainbow = {"rainbow_cycle": None, "rainbow_checked": False, "rainbow_error": str(exc)}
    out = {"proper": proper, **rainbow}
    out["prcf"] = proper and rainbow["rainbow_checked"] and rainbow["rainbow_cycle"] is None
    return out


def _coloring_payload(g: Graph, colors, budget: Budget) -> dict:
    return {
        "colors": list(colors),
        "num_colors": num_colors(colors),
        "text": to_coloring_text(colors),
        "verification": _verify(g, colors, budget),
    }


def _graph_summary(g: Graph) -> dict:
    return {"n": g.n, "m": g.m}


# -- subcommands ----------------------------------------------------------------


def cmd_family(args, out):
    g, _, desc = _load_graph(args)
    emit = args.emit
    if emit == "graph6":
        text = to_graph6(g) + "\n"
    elif emit == "dot":
        text = to_dot(g)
    else:
        text = to_edge_list(g)
    out.write(text)
    return None, f"{desc['family'] if 'family' in desc else desc['input']}: n={g.n}, m={g.m}"


def cmd_analyze(args, out):
    g, _, desc = _load_graph(args)
    degs = sorted(set(g.degrees))
    res = {
        **_graph_summary(g),
        "girth": girth(g),
        "diameter": diameter(g),
        "connected": is_connected(g),
        "degrees": degs,
        "bipartite": bipartition(g) is not None,
    }
    if res["connected"] and g.n >= 3:
        info = classify(g)
        res["classification"] = {
            "tag": info.tag,
            "describe": info.describe(),
            "thick": info.thick,
            "degree_set": list(info.degree_set),
        }
    return {"input": desc, "results": res}, f"girth={res['girth']} diameter={res['diameter']}"


def cmd_census(args, out):
    g, _, desc = _load_graph(args)
    report = run_census(g, args.path_order, args.length, budget=_budget(args), workers=_workers(args))
    d = report.as_dict()
    d.pop("seconds")
    return (
        {"input": desc, "results": d},
        f"|S|={report.path_count} cycles={report.cycle_count} ext=({report.extension_min},{report.extension_max})",
    )


def cmd_decide(args, out):
    g, _, desc = _load_graph(args)
    budget = _budget(args)
    verdict = None
    if args.few_colors and g.m and girth(g) is not None:
        verdict = few_colors_certificate(g)
    if verdict is None:
        verdict = decide_prcf(g, budget=budget, workers=_workers(args))
    res = {
        "verdict": verdict.outcome,
        "evidence": verdict.evidence,
        "detail": verdict.detail,
        "nodes": verdict.nodes,
    }
    if verdict.witness is not None:
        res["witness"] = _coloring_payload(g, verdict.witness, budget)
    report = {"input": desc, "results": res}
    code = EXIT_BUDGET if verdict.outcome == "unknown" else EXIT_OK
    return report, f"verdict: {verdict.outcome} ({verdict.evidence})", code


def _parse_params(items: Sequence[str]) -> dict:
    params = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"--params expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        try:
            params[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"parameter {key} must be an integer") from None
    return params


def cmd_certify(args, out):
    budget = _budget(args)
    if args.noncriticality:
        nums = hosi_noncriticality_numbers(budget=budget)
        return {"input": {"family": "hoffman-singleton"}, "results": nums}, (
            f"{nums['lower']} <= |T'| <= {nums['upper']}"
        )
    if args.params:
        params = _parse_params(args.params)
        keys = set(params)
        if keys == {"d", "r"}:
            cert = polygon_bounds(params["d"], params["r"])
        elif keys == {"r"}:
            cert = moore5_bounds(params["r"])
        elif keys == {"q"}:
            cert = octagon_bounds(params["q"])
            alt = octagon_bounds(params["q"], Fraction(1, 6))
            res = {"certificate": cert.as_dict(), "alternative_threshold_1_6": alt.as_dict()}
            return {"input": {"params": params}, "results": res}, f"verdict: {cert.verdict}"
        else:
            raise UsageError("--params must be one of: d=.. r=.. | r=.. | q=..")
        return {"input": {"params": params}, "results": {"certificate": cert.as_dict()}}, f"verdict: {cert.verdict}"
    g, _, desc = _load_graph(args)
    cert, report = concrete_certificate(g, budget=budget, workers=_workers(args))
    rep = report.as_dict()
    rep.pop("seconds")
    res = {"certificate": cert.as_dict(), "census": rep}
    return {"input": desc, "results": res}, (
        f"verdict: {cert.verdict} ({fraction_str(cert.lower)} vs {fraction_str(cert.upper)})"
    )


def cmd_threshold(args, out):
    if args.octagon:
        q8 = octagon_threshold(Fraction(1, 8))
        q6 = octagon_threshold(Fraction(1, 6))
        res = {
            "threshold_1_8": q8,
            "threshold_1_6": q6,
            "certificate_1_8": octagon_bounds(q8).as_dict(),
            "certificate_1_6": octagon_bounds(q6, Fraction(1, 6)).as_dict(),
            "result": q8,
        }
        return {"input": {"octagon": True}, "results": res}, f"octagon q = {q8} (1/8), {q6} (1/6)"
    if args.polygon is None:
        raise UsageError("threshold needs --polygon D or --octagon")
    d = args.polygon
    free = find_threshold(d, False)
    pp = find_threshold(d, True)
    chosen = pp if args.prime_power else free
    res = {
        "d": d,
        "unconstrained": free,
        "prime_power": pp,
        "result": chosen,
        "orders": order_formulas(chosen, d),
    }
    return {"input": {"polygon": d, "prime_power": args.prime_power}, "results": res}, f"r = {chosen}"


def cmd_color(args, out):
    g, sub, desc = _load_graph(args)
    budget = _budget(args)
    method = args.method
    if method == "vizing":
        colors = vizing_color(g)
    elif method in ("subdivision-k", "subdivision-1"):
        if sub is None:
            raise UsageError(f"--method {method} needs --family ... --subdivide K (provenance)")
        if method == "subdivision-k":
            colors = color_subdivision_k(sub)
        else:
            colors = color_subdivision_1(sub, verify=False)
    else:
        raise UsageError(f"unknown method {method}")
    payload = _coloring_payload(g, colors, budget)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload["text"])
    return {"input": desc, "results": {"method": method, "coloring": payload}}, (
        f"{payload['num_colors']} colors, prcf={payload['verification']['prcf']}"
    )


def cmd_check(args, out):
    g, _, desc = _load_graph(args)
    try:
        with open(args.coloring) as fh:
            colors = parse_coloring_text(fh.read(), g.m)
    except OSError as exc:
        raise UsageError(f"cannot read {args.coloring}: {exc}") from None
    ver = _verify(g, colors, _budget(args))
    return {"input": desc, "results": {"num_colors": num_colors(colors), "verification": ver}}, (
        f"proper={ver['proper']} prcf={ver['prcf']}"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="prcf", description="Rainbow-cycle-forbidding edge coloring toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("family", help="emit a constructed graph")
    _add_graph_args(p)
    p.add_argument("--emit", choices=("edgelist", "graph6", "dot"), default="edgelist")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("analyze", help="girth, diameter and classification")
    _add_graph_args(p)
    _add_budget_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("census", help="path and cycle census")
    _add_graph_args(p)
    _add_budget_args(p)
    p.add_argument("--path-order", type=int, default=None, help="vertices per path (default from girth)")
    p.add_argument("--length", type=int, default=None, help="cycle length (default girth)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("decide", help="exhaustive PRCF decision")
    _add_graph_args(p)
    _add_budget_args(p)
    p.add_argument("--few-colors", action="store_true", help="try the small-palette certificate first")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("certify", help="counting certificates")
    _add_graph_args(p)
    _add_budget_args(p)
    p.add_argument("--params", nargs="+", metavar="KEY=VALUE")
    p.add_argument("--noncriticality", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("threshold", help="smallest parameters certified bad")
    _add_budget_args(p)
    p.add_argument("--polygon", type=int, metavar="D")
    p.add_argument("--prime-power", action="store_true")
    p.add_argument("--octagon", action="store_true")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("color", help="construct and verify a coloring")
    _add_graph_args(p)
    _add_budget_args(p)
    p.add_argument("--method", choices=("vizing", "subdivision-k", "subdivision-1"), default="vizing")
    p.add_argument("--out", metavar="FILE", help="write the 'edgeIndex color' text here")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("check", help="verify a supplied coloring")
    _add_graph_args(p)
    _add_budget_args(p)
    p.add_argument("--coloring", required=True, metavar="FILE")
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        start = time.perf_counter()
        result = args.func(args, out)
        if result[0] is None:
            err.write(result[1] + "\n")
            return EXIT_OK
        report, summary = result[0], result[1]
        code = result[2] if len(result) > 2 else EXIT_OK
        document = {
            "command": args.command,
            "input": report["input"],
            "results": report["results"],
            "budget": _budget(args).as_dict() if hasattr(args, "max_nodes") else None,
            "workers": _workers(args) if hasattr(args, "workers") else 1,
            "timing": None
            if getattr(args, "no_timing", False)
            else {"seconds": round(time.perf_counter() - start, 6)},
        }
        out.write(json.dumps(_jsonable(document), indent=2, sort_keys=True) + "\n")
        err.write(summary + "\n")
        return code
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (GraphError, ColoringError, CertificateError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except BudgetExceeded as exc:
        err.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except CrossCheckError as exc:
        err.write(f"cross-check mismatch: {exc}\n")
        return EXIT_CROSSCHECK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

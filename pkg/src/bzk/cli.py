"""Batch front-end: graph ingestion, route selection, verification campaigns,
and CSV/JSON emission.

Subcommands: verify, zeta, heat, euler, graphs.  Exit code 0 on success, 1
when a verification fails, 2 on usage errors.  Output is deterministic for a
given invocation.  BZK_THREADS caps the per-root parallelism of verify.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import graphs as graphmod
from . import heat as heatmod
from . import zeta as zetamod
from .operators import (alpha, check_cyclic_bump_identity,
                        check_no_tail_identity, check_r_generating_identity,
                        check_series_inverse_identity)

SCHEMA = 1


def _add_graph_arguments(sub):
    sub.add_argument("--graph", help="graph file (JSON or edge list)")
    sub.add_argument("--family", choices=sorted(graphmod._FAMILIES),
                     help="generate a named family instead of reading a file")
    sub.add_argument("--n", type=int, help="size parameter for cycle/complete/path/star")
    sub.add_argument("--d", type=int, help="dimension for hypercube")
    sub.add_argument("--q-plus-1", type=int, dest="q_plus_1",
                     help="branching for tree_ball")
    sub.add_argument("--radius", type=int, help="radius for tree_ball")


def _resolve_graph(args):
    if args.graph and args.family:
        raise SystemExit2("give either --graph or --family, not both")
    if args.graph:
        return graphmod.load_graph(args.graph)
    if not args.family:
        raise SystemExit2("a graph source is required (--graph or --family)")
    family = args.family
    if family in ("cycle", "complete", "path", "star"):
        if args.n is None:
            raise SystemExit2(f"--family {family} needs --n")
        return graphmod.generate(family, args.n)
    if family == "hypercube":
        if args.d is None:
            raise SystemExit2("--family hypercube needs --d")
        return graphmod.generate(family, args.d)
    if family == "tree_ball":
        if args.q_plus_1 is None or args.radius is None:
            raise SystemExit2("--family tree_ball needs --q-plus-1 and --radius")
        return graphmod.generate(family, args.q_plus_1, args.radius)
    return graphmod.generate(family)


class SystemExit2(Exception):
    """Usage error surfaced with exit code 2."""


def _emit(args, payload):
    text = json.dumps(payload, sort_keys=True, indent=2)
    if args.out_file:
        with open(args.out_file, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _emit_csv(args, header, rows):
    lines = [",".join(header)]
    lines += [",".join(str(cell) for cell in row) for row in rows]
    text = "\n".join(lines)
    if args.out_file:
        with open(args.out_file, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _thread_count():
    raw = os.environ.get("BZK_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _series_payload(series):
    return series.to_json()


def cmd_verify(args):
    g = _resolve_graph(args)
    order = args.order
    roots = [args.root] if args.root is not None else list(range(g.vertex_count))
    results = [check_series_inverse_identity(g, order).to_json()]

    def per_root(x0):
        out = [
            check_no_tail_identity(g, x0, order).to_json(),
            check_cyclic_bump_identity(g, x0, order).to_json(),
            check_r_generating_identity(g, x0, order).to_json(),
        ]
        log_series = zetamod.zeta_log_series(g, x0, x0, order)
        formula = zetamod.zeta_formula_series(g, x0, x0, order)
        euler = zetamod.euler_product_series(g, x0, order)
        out.append({
            "identity": "route-equivalence",
            "graph": g.label,
            "root": x0,
            "order": order,
            "pass": log_series == formula == euler,
            "first_failure": None if log_series == formula == euler else {
                "formula_matches_log": formula == log_series,
                "euler_matches_log": euler == log_series,
            },
        })
        return out

    threads = _thread_count()
    if threads > 1 and len(roots) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for chunk in pool.map(per_root, roots):
                results.extend(chunk)
    else:
        for x0 in roots:
            results.extend(per_root(x0))

    ok = all(r["pass"] for r in results)
    _emit(args, {"schema": SCHEMA, "graph": g.label, "order": order,
                 "pass": ok, "results": results})
    return 0 if ok else 1


def cmd_zeta(args):
    g = _resolve_graph(args)
    x0 = args.root
    x = args.target if args.target is not None else x0
    order = args.order
    routes = ["log", "rhs", "euler", "spectral"] if args.route == "all" else [args.route]
    payload = {"schema": SCHEMA, "graph": g.label, "root": x0, "target": x,
               "order": order, "routes": {}}
    series_by_route = {}
    if "log" in routes:
        series_by_route["log"] = zetamod.zeta_log_series(g, x0, x, order)
    if "rhs" in routes:
        series_by_route["rhs"] = zetamod.zeta_formula_series(g, x0, x, order)
    if "euler" in routes:
        if x != x0:
            raise SystemExit2("the euler route is rooted; drop --target")
        series_by_route["euler"] = zetamod.euler_product_series(g, x0, order)
    for name, series in series_by_route.items():
        payload["routes"][name] = {"series": _series_payload(series)}
    if "spectral" in routes:
        if g.regular_degree() is None:
            if args.route == "spectral":
                raise SystemExit2("the spectral route needs a regular graph")
            payload["routes"]["spectral"] = {"skipped": "not regular"}
        else:
            t = args.t if args.t is not None else 0.0
            if args.u is not None:
                u_values = [args.u]
            else:
                cap = 0.8 / alpha(g, abs(t))
                u_values = [cap * k / 4.0 for k in range(1, 5)]
            points = []
            for u in u_values:
                record = zetamod.zeta_spectral_report(g, x0, x, u, t)
                reference = zetamod.zeta_log_series(g, x0, x, max(order, 20)).evaluate(t, u)
                record["log_series_value"] = reference
                points.append(record)
            payload["routes"]["spectral"] = {"points": points}
    if len(series_by_route) > 1:
        first = next(iter(series_by_route.values()))
        payload["series_agree"] = all(s == first for s in series_by_route.values())

    if args.out == "json":
        _emit(args, payload)
    else:
        rows = []
        for name, series in series_by_route.items():
            for m in range(order + 1):
                rows.append((name, m, f'"{series.coefficient(m)}"'))
        spectral = payload["routes"].get("spectral")
        if spectral and "points" in spectral:
            for point in spectral["points"]:
                rows.append(("spectral", f"u={point['u']};t={point['t']}", point["value"]))
        _emit_csv(args, ["route", "m", "coefficient"], rows)
    return 0


def cmd_heat(args):
    g = _resolve_graph(args)
    x0 = args.root
    x = args.target if args.target is not None else x0
    lo, hi, count = args.tau_grid
    taus = [lo + (hi - lo) * k / (count - 1) if count > 1 else lo for k in range(count)]
    rows = []
    worst = 0.0
    for tau in taus:
        vb = vs = ""
        tail = 0.0
        if args.route in ("bessel", "both"):
            res = heatmod.heat_kernel_bessel(g, x0, x, tau, args.t, args.tol)
            vb = res.value
            tail = res.tail_bound
        if args.route in ("spectral", "both"):
            vs = heatmod.heat_kernel_spectral(g, x0, x, tau).value
        diff = abs(vb - vs) if args.route == "both" else ""
        if args.route == "both":
            worst = max(worst, diff)
        rows.append((tau, vb, vs, diff, tail))
    _emit_csv(args, ["tau", "value_bessel", "value_spectral", "abs_diff", "tail_bound"], rows)
    return 0


def cmd_euler(args):
    g = _resolve_graph(args)
    series = zetamod.euler_product_series(g, args.root, args.order)
    payload = {"schema": SCHEMA, "graph": g.label, "root": args.root,
               "order": args.order, "series": _series_payload(series)}
    if args.compare:
        payload["matches_log_series"] = (
            series == zetamod.zeta_log_series(g, args.root, args.root, args.order)
        )
    _emit(args, payload)
    return 0 if payload.get("matches_log_series", True) else 1


def cmd_graphs(args):
    g = _resolve_graph(args)
    payload = {"schema": SCHEMA, "label": g.label}
    payload.update(graphmod.graph_to_json_dict(g))
    payload["degrees"] = list(g.degrees)
    payload["regular_degree"] = g.regular_degree()
    _emit(args, payload)
    return 0


def _parse_tau_grid(text):
    try:
        lo, hi, count = text.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("tau grid must be lo:hi:count") from exc
    if count < 1 or hi < lo:
        raise argparse.ArgumentTypeError("tau grid must be lo:hi:count with hi >= lo")
    return lo, hi, count


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bzk",
        description="Rooted zeta functions and heat kernels on finite simple graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the exact identity checks")
    _add_graph_arguments(p_verify)
    p_verify.add_argument("--root", type=int, help="restrict to one root (default: all)")
    p_verify.add_argument("--order", type=int, default=10)
    p_verify.add_argument("--out-file")
    p_verify.set_defaults(func=cmd_verify)

    p_zeta = sub.add_parser("zeta", help="compute the rooted zeta by one or all routes")
    _add_graph_arguments(p_zeta)
    p_zeta.add_argument("--root", type=int, required=True)
    p_zeta.add_argument("--target", type=int)
    p_zeta.add_argument("--order", type=int, default=10)
    p_zeta.add_argument("--route", choices=["log", "rhs", "euler", "spectral", "all"],
                        default="all")
    p_zeta.add_argument("--t", type=float)
    p_zeta.add_argument("--u", type=float)
    p_zeta.add_argument("--out", choices=["json", "csv"], default="json")
    p_zeta.add_argument("--out-file")
    p_zeta.set_defaults(func=cmd_zeta)

    p_heat = sub.add_parser("heat", help="evaluate the heat kernel on a tau grid")
    _add_graph_arguments(p_heat)
    p_heat.add_argument("--root", type=int, required=True)
    p_heat.add_argument("--target", type=int)
    p_heat.add_argument("--tau-grid", type=_parse_tau_grid, default=(0.0, 5.0, 11),
                        dest="tau_grid")
    p_heat.add_argument("--t", type=float, default=0.0)
    p_heat.add_argument("--route", choices=["bessel", "spectral", "both"], default="both")
    p_heat.add_argument("--tol", type=float, default=1e-8)
    p_heat.add_argument("--out", choices=["csv"], default="csv")
    p_heat.add_argument("--out-file")
    p_heat.set_defaults(func=cmd_heat)

    p_euler = sub.add_parser("euler", help="truncated Euler product over primitive closed walks")
    _add_graph_arguments(p_euler)
    p_euler.add_argument("--root", type=int, required=True)
    p_euler.add_argument("--order", type=int, default=10)
    p_euler.add_argument("--compare", action="store_true",
                         help="also check agreement with the log-series route")
    p_euler.add_argument("--out-file")
    p_euler.set_defaults(func=cmd_euler)

    p_graphs = sub.add_parser("graphs", help="emit a graph as JSON with basic stats")
    _add_graph_arguments(p_graphs)
    p_graphs.add_argument("--out-file")
    p_graphs.set_defaults(func=cmd_graphs)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (graphmod.GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

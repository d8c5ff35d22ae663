"""Command-line front end.

Exit codes: 0 success, 1 domain error (undefined torsion, no valid cut
edge, failed verification), 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .cocycle import euler_number_clutching, euler_number_cocycle
from .errors import GraphSemanticError, GraphSyntaxError, MeshTorsionError
from .graphio import load_graph
from .linalg import RR, Matrix
from .mesh import (
    distinguish,
    higher_torsion_r1,
    labeling_to_dict,
    legendrian_turaev_torsion,
    report_to_dict,
    solve_edge_labels,
)
from .ribbon import invariants, random_graph, winding_number
from .ring import ZERO
from .slides import ExchangePoint, exchange_effect, random_unit, verify_edge_identity, verify_vertex_identity


class InputError(Exception):
    pass


def _load(path):
    try:
        return load_graph(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    except GraphSyntaxError as exc:
        raise InputError(f"{path}:{exc.line}:{exc.col}: {exc.message}") from exc
    except GraphSemanticError as exc:
        raise InputError(f"{path}: " + "; ".join(exc.violations)) from exc


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def cmd_info(args):
    inv = invariants(_load(args.graph))
    data = {k: getattr(inv, k) for k in ("V", "E", "F", "chi", "genus", "P", "N", "w", "Q")}
    _emit(args, data, f"V={inv.V} E={inv.E} F={inv.F} chi={inv.chi} genus={inv.genus} w={inv.w}")
    return 0


def cmd_torsion(args):
    rep = legendrian_turaev_torsion(_load(args.graph))
    data = report_to_dict(rep)
    text = (
        f"n={rep.n} epsilon={'+' if rep.epsilon > 0 else '-'} tau=+-({data['tau']})\n"
        f"reidemeister=+-({rep.reidemeister.representative}) mod <z>"
    )
    if rep.inconclusive:
        text += "\nnote: n=2, the sign of w is invisible to this torsion"
    _emit(args, data, text)
    return 0


def cmd_labels(args):
    lab = solve_edge_labels(_load(args.graph), cut=args.cut)
    data = labeling_to_dict(lab)
    lines = [f"cut edge {data['cut_edge']}, v = u^{lab.v_exp}"]
    for vl in lab.labels:
        lines.append(f"{vl.vertex} ({'+' if vl.sign > 0 else '-'}): a={list(vl.a)} b={list(vl.b)} c={list(vl.c)}")
    lines.append(f"closure: {lab.closure}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_compare(args):
    verdict = distinguish(_load(args.first), _load(args.second))
    _emit(args, {"verdict": str(verdict)}, str(verdict))
    return 0


def cmd_r1(args):
    value = higher_torsion_r1(args.n, args.power, args.tol)
    _emit(args, {"n": args.n, "power": args.power, "tol": args.tol, "r1": value}, f"{value:.12f}")
    return 0


def _random_matrix_with_zero(rng):
    n = rng.randint(2, 4)
    rows = [[random_unit(rng) if rng.random() < 0.7 else ZERO for _ in range(n)] for _ in range(n)]
    a, b = rng.randint(1, n), rng.randint(1, n)
    rows[a - 1][b - 1] = ZERO
    return Matrix(RR, n, n, rows), ExchangePoint(a, b, random_unit(rng))


def cmd_verify(args):
    rng = random.Random(args.seed)
    trials = args.trials
    results = {}
    results["edge_identity"] = all(
        verify_edge_identity(random_unit(rng), random_unit(rng)).ok for _ in range(trials)
    )
    results["vertex_identity"] = all(
        verify_vertex_identity(random_unit(rng), random_unit(rng), random_unit(rng), rng.choice((1, -1))).ok
        for _ in range(trials)
    )
    ok = True
    for _ in range(trials):
        m, z = _random_matrix_with_zero(rng)
        ok = ok and exchange_effect(m, z) == m
    results["exchange_no_change"] = ok
    graphs = [_load(p) for p in args.graphs]
    for i in range(args.random or 0):
        graphs.append(random_graph(2 * rng.randint(1, 6), seed=rng.randrange(2**32)))
    euler_ok = all(euler_number_cocycle(g) == euler_number_clutching(g) == winding_number(g) for g in graphs)
    results["euler_numbers"] = euler_ok
    data = {"seed": args.seed, "graphs": len(graphs), "checks": results, "ok": all(results.values())}
    text = "\n".join(f"{name}: {'pass' if passed else 'FAIL'}" for name, passed in results.items())
    text += f"\n{len(graphs)} graph(s) checked"
    _emit(args, data, text)
    return 0 if data["ok"] else 1


def build_parser():
    parser = argparse.ArgumentParser(prog="meshtorsion", description="Torsion invariants of bicolored ribbon graphs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="surface invariants and winding number")
    p.add_argument("graph")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("torsion", parents=[common], help="Legendrian Turaev torsion")
    p.add_argument("graph")
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("labels", parents=[common], help="solve the handle-slide edge labels")
    p.add_argument("graph")
    p.add_argument("--cut", help="cut edge, as 'hA-hB' or one of its half-edges")
    p.set_defaults(func=cmd_labels)

    p = sub.add_parser("verify", parents=[common], help="run the identity checks")
    p.add_argument("graphs", nargs="*")
    p.add_argument("--random", type=int, default=0, metavar="N", help="also check N random graphs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", parents=[common], help="try to tell two graphs apart")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("r1", parents=[common], help="higher torsion number r_1")
    p.add_argument("n", type=int)
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_r1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (MeshTorsionError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

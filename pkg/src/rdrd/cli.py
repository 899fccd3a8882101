"""Command-line entry point: ``rdrd <subcommand> ...``.

Exit codes: 0 success / valid, 1 infeasible / invalid / mismatch, 2 usage error.
JSON goes to stdout, diagnostics to stderr. Timing lives under a ``"timing"`` key.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import audits, catalog, constructions, products, reduction
from .graph import FamilySpec, Graph, GraphError, build_family, parse_graph, random_connected_graph, serialize_graph
from .labeling import Labeling, LabelingError, Variant, parse_labels, validate
from .solver import Problem, SolverLimitError, brute_force, solve, solve_rdrd_bnb


class UsageError(Exception):
    pass


# -- input helpers -----------------------------------------------------------------

def load_graph(arg: str) -> Graph:
    """An edge-list file, or a family spec such as ``cycle:5`` when no such file exists."""
    p = Path(arg)
    if p.exists():
        return parse_graph(p.read_text())
    try:
        return build_family(FamilySpec.parse(arg))
    except (GraphError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read graph {arg!r}: not a file and not a family spec ({exc})") from None


def load_labels(arg: str) -> Labeling:
    p = Path(arg)
    return parse_labels(p.read_text() if p.exists() else arg)


def _coerce(v: str):
    try:
        return int(v)
    except ValueError:
        return v


def family_params(args) -> dict:
    params = {}
    for item in args.params or []:
        for kv in item.split(","):
            if not kv.strip():
                continue
            k, sep, v = kv.partition("=")
            if not sep:
                raise UsageError(f"--params expects key=value, got {kv!r}")
            params[k.strip()] = _coerce(v.strip())
    for key in ("n", "m", "p", "q", "t", "G", "H", "factor"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = _coerce(v) if isinstance(v, str) else v
    return params


def emit(args, payload: dict, text: Optional[str] = None) -> None:
    if args.text:
        print(text if text is not None else _as_text(payload))
    else:
        print(json.dumps(payload, sort_keys=True))


def _as_text(payload: dict) -> str:
    return "\n".join(f"{k}: {v}" for k, v in payload.items() if k != "timing")


def _timed(payload: dict, t0: float) -> dict:
    payload["timing"] = {"ms": round((time.perf_counter() - t0) * 1000, 3)}
    return payload


# -- subcommands -------------------------------------------------------------------

def cmd_solve(args) -> int:
    g = load_graph(args.graph)
    problem = Problem.parse(args.problem)
    method = args.method or ("bnb" if problem in (Problem.RDRD_MIN, Problem.DRD_MIN) else "brute")
    res = solve(g, problem, method=method, timeout=args.timeout, threads=args.threads)
    out = res.to_json()
    text = f"value: {res.value}\noptimal: {res.optimal}\ncertificate: {' '.join(map(str, res.certificate or ()))}"
    emit(args, out, text)
    return 0 if res.optimal and res.value is not None else 1


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    f = load_labels(args.labels)
    rep = validate(g, f, Variant(args.variant.upper()))
    out = rep.to_json()
    out["weight"] = f.weight
    lines = [f"{'valid' if rep.valid else 'invalid'} {rep.variant.value} labeling, weight {f.weight}"]
    lines += [f"  vertex {v.vertex}: {v.rule}: {v.detail}" for v in rep.violations]
    emit(args, out, "\n".join(lines))
    return 0 if rep.valid else 1


def cmd_construct(args) -> int:
    cert = constructions.construct_certificate(args.family, family_params(args))
    rep = validate(cert.graph, cert.labeling)
    if args.out_graph:
        Path(args.out_graph).write_text(serialize_graph(cert.graph))
    if args.out_labels:
        Path(args.out_labels).write_text(json.dumps({"labels": list(cert.labeling)}) + "\n")
    ok = rep.valid and cert.weight == cert.claimed_weight
    out = {"family": cert.family, "valid": rep.valid, "weight": cert.weight,
           "claimed_weight": cert.claimed_weight, "match": ok, "citation": cert.citation,
           "n": cert.graph.n, "labels": list(cert.labeling)}
    emit(args, out, f"{'valid' if rep.valid else 'INVALID'}; weight {cert.weight} "
                    f"(claimed {cert.claimed_weight}); {cert.citation}")
    return 0 if ok else 1


def cmd_product(args) -> int:
    g, h = load_graph(args.G), load_graph(args.H)
    build = {"strong": products.strong_product, "cardinal": products.cardinal_product,
             "corona": products.corona}[args.kind]
    prod, vmap = build(g, h)
    el = serialize_graph(prod)
    if args.out:
        Path(args.out).write_text(el)
        map_path = Path(args.map or args.out + ".json")
        map_path.write_text(json.dumps(vmap.to_json()) + "\n")
        emit(args, {"kind": args.kind, "n": prod.n, "m": prod.m, "graph": args.out,
                    "map": str(map_path)})
        return 0
    if args.map:
        Path(args.map).write_text(json.dumps(vmap.to_json()) + "\n")
    if args.text:
        sys.stdout.write(el)
    else:
        print(json.dumps({"kind": args.kind, "n": prod.n, "m": prod.m, "edges": el,
                          "map": vmap.to_json()}, sort_keys=True))
    return 0


def _random_chain(args) -> int:
    """2 gamma <= gamma_dR <= gamma_rdR <= 2n - 2 on seeded random connected graphs."""
    rng = random.Random(args.seed)
    rows, ok = [], True
    for _ in range(args.random):
        g = random_connected_graph(rng.randint(3, 9), rng)
        gam = brute_force(g, Problem.DOM_MIN).value
        drd = solve_rdrd_bnb(g, restrained=False).value
        rdrd = solve_rdrd_bnb(g).value
        good = 2 * gam <= drd <= rdrd <= 2 * g.n - 2
        ok &= good
        rows.append({"n": g.n, "m": g.m, "gamma": gam, "drd": drd, "rdrd": rdrd, "holds": good})
    emit(args, {"seed": args.seed, "graphs": rows, "holds": ok},
         f"chain holds on {sum(r['holds'] for r in rows)}/{len(rows)} graphs (seed {args.seed})")
    return 0 if ok else 1


def cmd_catalog(args) -> int:
    if args.random:
        return _random_chain(args)
    params = family_params(args)
    if args.bound:
        br = catalog.catalog_bounds(args.bound, params)
        out = br.to_json()
        if args.check:
            g, h = catalog._as_graph(params["G"]), params.get("H")
            target = g
            if h is not None:
                h = catalog._as_graph(h)
                target = (products.cardinal_product if args.bound == "cardinal"
                          else products.strong_product)(g, h)[0]
            elif args.bound == "corona_k1":
                target = products.corona(g, build_family("complete:1"))[0]
            exact = solve_rdrd_bnb(target, timeout=args.timeout, threads=args.threads)
            out["exact"] = exact.value
            out["contains"] = exact.optimal and br.contains(exact.value)
            emit(args, out)
            return 0 if out["contains"] else 1
        emit(args, out)
        return 0
    if not args.family:
        raise UsageError("catalog needs --family, --bound or --random")
    if args.check:
        plist = [params] if params else catalog.catalog_table(args.family)
        rows = catalog.catalog_crosscheck(args.family, plist, budget=args.timeout)
        table = [r.to_json() for r in rows]
        emit(args, {"family": args.family, "rows": table},
             "\n".join(f"{r['params']}: formula={r['formula']} solver={r['solver']} {r['status']}"
                       for r in table))
        return 1 if any(r.status == "mismatch" for r in rows) else 0
    fr = catalog.catalog_value(args.family, params)
    emit(args, fr.to_json(), f"{fr.value}  ({fr.citation})")
    return 0


def cmd_reduce(args) -> int:
    t0 = time.perf_counter()
    inst = reduction.X3CInstance.from_json(Path(args.x3c).read_text())
    red = reduction.build_reduction(inst)
    if args.emit_graph:
        Path(args.emit_graph).write_text(serialize_graph(red.graph))
    answer = reduction.x3c_brute(inst)
    out = {"q": inst.q, "t": inst.t, "n": red.graph.n, "m": red.graph.m, "k": red.k,
           "x3c": answer}
    ok = True
    if answer != reduction.UNSOLVABLE:
        f = reduction.cover_to_labeling(red, answer)
        out["certificate"] = list(f)
        out["certificate_weight"] = f.weight
        ok = validate(red.graph, f).valid and f.weight == red.k
    if args.solve:
        res = solve_rdrd_bnb(red.graph, timeout=args.timeout, cutoff=red.k, threads=args.threads)
        out["solver"] = {"value": res.value, "optimal": res.optimal, "lower_bound": res.lower_bound}
        if res.value is not None:
            decided = True
        else:
            decided = res.lower_bound is not None and res.lower_bound > red.k
        out["decided"] = decided
        if decided:
            yes = res.value is not None and res.value <= red.k
            out["rdrd_at_most_k"] = yes
            ok &= yes == (answer != reduction.UNSOLVABLE)
            if yes:
                out["recovered_cover"] = reduction.labeling_to_cover(red, res.certificate)
        else:
            ok = False
    out["consistent"] = ok
    emit(args, _timed(out, t0))
    return 0 if ok else 1


def cmd_audit(args) -> int:
    g = load_graph(args.graph)
    layout = audits.StripLayout.for_graph(args.layout, g)
    if g != layout.graph():
        raise UsageError(f"graph does not match the {layout.kind} layout with {layout.m} columns")
    if args.all_optima:
        res = solve_rdrd_bnb(g, enumerate_all=True, timeout=args.timeout)
        labelings = res.optima or []
        optimal = True
    else:
        if not args.labels:
            raise UsageError("audit needs --labels or --all-optima")
        labelings = [load_labels(args.labels)]
        optimal = args.optimal
    reports = []
    ok = True
    for f in labelings:
        lemma = audits.audit_columns(layout, f, g, optimal=optimal)
        entry = {"labels": list(f), "lemma": lemma.to_json()}
        ok &= lemma.passed
        if layout.kind == "c3xcm":
            bag = audits.bagging_certificate(layout, f, g)
            entry["bagging"] = bag.to_json()
            ok &= bag.certified
        reports.append(entry)
    if args.all_optima:
        out = {"layout": layout.kind, "m": layout.m, "optimum_count": len(reports),
               "passed": ok, "reports": reports}
    else:
        out = dict(reports[0], layout=layout.kind, m=layout.m, passed=ok)
    emit(args, out, f"{layout.kind} m={layout.m}: {'pass' if ok else 'FAIL'} "
                    f"over {len(reports)} labeling(s)")
    return 0 if ok else 1


# -- parser --------------------------------------------------------------------------

def _env_timeout() -> Optional[float]:
    v = os.environ.get("RDRD_TIMEOUT")
    return float(v) if v else None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--text", action="store_true", help="human-readable output")
    common.add_argument("--timeout", type=float, default=_env_timeout(),
                        help="solver timeout in seconds (default: $RDRD_TIMEOUT)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--params", action="append", metavar="K=V[,K=V]")
    for key in ("n", "m", "p", "q", "t"):
        fam.add_argument(f"--{key}", type=int)
    for key in ("G", "H", "factor"):
        fam.add_argument(f"--{key}", help="family spec such as cycle:5")

    p = argparse.ArgumentParser(prog="rdrd", description="Restrained double Roman domination toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="exact RDRD / DRD / domination / 2-packing")
    s.add_argument("--graph", required=True)
    s.add_argument("--problem", default="rdrd", choices=["rdrd", "drd", "dom", "twopack"])
    s.add_argument("--method", choices=["brute", "bnb"],
                   help="default: bnb for rdrd/drd, brute for dom/twopack")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", parents=[common], help="validate a labeling")
    s.add_argument("--graph", required=True)
    s.add_argument("--labels", required=True, help="file or inline labels, e.g. \"3 0\"")
    s.add_argument("--variant", default="rdrd", choices=["rdrd", "drd"])
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("construct", parents=[common, fam], help="explicit optimal labeling")
    s.add_argument("--family", required=True, choices=catalog.FAMILIES)
    s.add_argument("--out-graph")
    s.add_argument("--out-labels")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("product", parents=[common], help="strong / cardinal / corona product")
    s.add_argument("--kind", required=True, choices=["strong", "cardinal", "corona"])
    s.add_argument("--G", required=True)
    s.add_argument("--H", required=True)
    s.add_argument("--out", help="edge-list output; coordinates go to OUT.json unless --map")
    s.add_argument("--map")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("catalog", parents=[common, fam], help="closed forms and bounds")
    s.add_argument("--family", choices=catalog.FAMILIES)
    s.add_argument("--bound", choices=catalog.BOUNDS)
    s.add_argument("--check", action="store_true", help="compare against the exact solver")
    s.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="check the bound chain on COUNT seeded random connected graphs")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("reduce", parents=[common], help="X3C -> RDRD reduction")
    s.add_argument("--x3c", required=True)
    s.add_argument("--emit-graph")
    s.add_argument("--solve", action="store_true")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("audit", parents=[common], help="column lemmas and bagging")
    s.add_argument("--layout", required=True,
                   help="strong_strip:2, strong_strip:3, c3xcm, corona_path or corona_cycle")
    s.add_argument("--graph", required=True)
    s.add_argument("--labels")
    s.add_argument("--all-optima", action="store_true")
    s.add_argument("--optimal", action="store_true", help="treat --labels as a minimum labeling")
    s.set_defaults(func=cmd_audit)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on usage errors
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rdrd: error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, LabelingError, catalog.FormulaInapplicable,
            constructions.ConstructionInapplicable, reduction.ReductionError,
            audits.AuditPreconditionError, SolverLimitError, ValueError) as exc:
        print(f"rdrd: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"rdrd: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

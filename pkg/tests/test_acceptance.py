"""Acceptance criteria 1-8. Each test records one PASS/FAIL line before asserting.

Run alone with ``pytest tests/test_acceptance.py -v`` (the summary section lists the
lines) or ``python tests/test_acceptance.py``.
"""
import itertools
import random

import pytest

from conftest import ACCEPTANCE_LINES
from rdrd.audits import StripLayout, audit_columns, bagging_certificate
from rdrd.catalog import catalog_bounds, catalog_graph, catalog_value
from rdrd.constructions import combine_deduction, combine_strong, construct_certificate
from rdrd.graph import (
    complete_graph, cycle_graph, empty_graph, is_chordal, path_graph, random_connected_graph,
)
from rdrd.labeling import validate
from rdrd.products import cardinal_product, corona, strong_product
from rdrd.reduction import X3CInstance, build_reduction, cover_to_labeling, labeling_to_cover
from rdrd.solver import LABEL_LIMIT, Problem, brute_force, solve_rdrd_bnb


def record(k: int, ok: bool, detail: str) -> None:
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)


def exact(g):
    return brute_force(g).value if g.n <= LABEL_LIMIT else solve_rdrd_bnb(g).value


# (family, params, stated expected value); None means "whatever the catalog formula gives"
CRITERION1 = (
    [("path", {"n": n}, None) for n in range(1, 11)]
    + [("cycle", {"n": n}, None) for n in range(3, 11)]
    + [("strong_strip", {"n": 2, "m": m}, None) for m in range(2, 8)]
    + [("strong_strip", {"n": 3, "m": m}, None) for m in range(2, 6)]
    + [("c3xcm", {"m": m}, v) for m, v in zip((3, 4, 5), (6, 8, 10))]
    + [("p2xpn", {"n": n}, None) for n in range(1, 6)]
    + [("corona_kn", {"n": n}, 6 if n == 2 else 2 * n + 1) for n in range(1, 6)]
    + [("corona_cn", {"n": n}, v) for n, v in zip(range(3, 7), (7, 10, 13, 14))]
    + [("corona_pn", {"n": n}, v) for n, v in zip(range(1, 7), (3, 6, 8, 10, 13, 15))]
    + [("corona_kpq", {"p": p, "q": q}, v)
       for (p, q), v in zip(((1, 2), (1, 3), (2, 2), (2, 3)), (9, 12, 10, 12))]
    + [("corona_double", {"G": g}, v) for g, v in zip(("complete:2", "path:3", "complete:3"), (10, 15, 15))]
)


def test_criterion_1_formula_solver_agreement():
    bad = []
    for family, params, stated in CRITERION1:
        formula = catalog_value(family, params).value
        solver = exact(catalog_graph(family, params))
        expected = formula if stated is None else stated
        if not (solver == formula == expected):
            bad.append(f"{family}{params}: stated={expected} formula={formula} solver={solver}")
    record(1, not bad, f"{len(CRITERION1) - len(bad)}/{len(CRITERION1)} instances agree"
           + (f"; mismatches: {'; '.join(bad)}" if bad else ""))
    assert not bad, bad


def test_criterion_2_odd_cycle_probe():
    got = [brute_force(catalog_graph("p2x_odd_cycle", n=n), limit=14).value for n in (1, 2, 3)]
    formula = [catalog_value("p2x_odd_cycle", n=n) for n in (1, 2, 3)]
    ok = got == [6, 12, 16] == [f.value for f in formula]
    # the printed residue rule (4n+2 only for n = 0 mod 6) predicts 8, 12, 16
    contradicts = formula[0].published == 8 and got[0] != 8
    record(2, ok and contradicts,
           f"brute force on C6, C10, C14 = {got}; printed rule would give n=1 -> 8 (finding recorded)")
    assert ok and contradicts


def test_criterion_3_hypothesis_probes():
    k2_empty = brute_force(corona(path_graph(2), empty_graph(2))[0]).value
    k1 = complete_graph(1)
    p4 = corona(corona(k1, k1)[0], k1)[0]
    p4_val = brute_force(p4).value
    ok = k2_empty == 8 > 6 and p4_val == 6 != 5
    record(3, ok, f"K2 o (2 isolated) = {k2_empty} (> 3n = 6); (K1 o K1) o K1 = P4 -> {p4_val} (!= 5)")
    assert ok


EXTENDED4 = (
    [(f, p) for f, p, _ in CRITERION1]
    + [("strong_strip", {"n": r, "m": m}) for r in (2, 3) for m in range(2, 31)]
    + [("c3xcm", {"m": m}) for m in range(3, 31)]
    + [("corona_kn", {"n": n}) for n in range(1, 31)]
    + [("corona_cn", {"n": n}) for n in range(3, 31)]
    + [("corona_pn", {"n": n}) for n in range(1, 31)]
)


def test_criterion_4_construction_certificates():
    bad = []
    for family, params in EXTENDED4:
        c = construct_certificate(family, params)
        if not (validate(c.graph, c.labeling).valid and c.weight == catalog_value(family, params).value):
            bad.append(f"{family}{params}")
    record(4, not bad, f"{len(EXTENDED4) - len(bad)}/{len(EXTENDED4)} certificates valid and on value"
           + (f"; failing: {bad}" if bad else ""))
    assert not bad


def test_criterion_5_bound_suites():
    rng = random.Random(2024)
    chain_bad = []
    for i in range(50):
        g = random_connected_graph(rng.randint(3, 9), rng)
        gam = brute_force(g, Problem.DOM_MIN).value
        drd = solve_rdrd_bnb(g, restrained=False).value
        rdrd = solve_rdrd_bnb(g).value
        if not 2 * gam <= drd <= rdrd <= 2 * g.n - 2:
            chain_bad.append(i)
    factors = {"P3": path_graph(3), "P4": path_graph(4), "C3": cycle_graph(3),
               "C4": cycle_graph(4), "K3": complete_graph(3)}
    prod_bad = []
    for (a, g), (b, h) in itertools.product(factors.items(), repeat=2):
        s = solve_rdrd_bnb(strong_product(g, h)[0]).value
        c = solve_rdrd_bnb(cardinal_product(g, h)[0]).value
        if not (catalog_bounds("strong_ob1", G=g, H=h).contains(s)
                and catalog_bounds("strong_str4", G=g, H=h).contains(s)
                and catalog_bounds("cardinal", G=g, H=h).contains(c)):
            prod_bad.append(f"{a},{b}")
    k3 = complete_graph(3)
    witness = solve_rdrd_bnb(strong_product(k3, k3)[0]).value
    equality = witness == catalog_bounds("strong_str4", G=k3, H=k3).upper == 3
    ok = not chain_bad and not prod_bad and equality
    record(5, ok, f"chain holds on {50 - len(chain_bad)}/50 random graphs; product bounds sandwich "
                  f"{25 - len(prod_bad)}/25 pairs; K3 [x] K3 = {witness} = 9 - 6")
    assert ok


def _audit_all(layout, optimal=True):
    res = solve_rdrd_bnb(layout.graph(), enumerate_all=True)
    reports = [audit_columns(layout, f, optimal=optimal) for f in res.optima]
    return res, reports


def test_criterion_6_lemma_audits():
    notes, ok = [], True
    for m in (4, 5):
        lay = StripLayout.c3xcm(m)
        res, reps = _audit_all(lay)
        bags = {bagging_certificate(lay, f).certified_bound for f in res.optima}
        good = all(r.passed for r in reps) and bags == {2 * m}
        ok &= good
        notes.append(f"C3xC{m}: {res.optimum_count} optima, bound {sorted(bags)}")
    for rows in (2, 3):
        res, reps = _audit_all(StripLayout.strong_strip(rows, 4))
        ok &= all(r.passed for r in reps)
        notes.append(f"P{rows}[x]P4: {res.optimum_count} optima")
    for base, n in (("cycle", 4), ("cycle", 5), ("path", 4)):
        res, reps = _audit_all(StripLayout.corona(base, n))
        ok &= all(r.passed for r in reps)
        notes.append(f"{base[0].upper()}{n} o K1: {res.optimum_count} optima")
    _, reps = _audit_all(StripLayout.corona("cycle", 5))
    heavy = all(sum(1 for c in r.checks if c.name == "window_ge_7" and c.lhs >= 8) >= 2 for r in reps)
    ok &= heavy
    notes.append(f"C5 o K1 >= 2 windows of sum >= 8: {heavy}")
    record(6, ok, "; ".join(notes))
    assert ok


def test_criterion_7_reduction():
    single = build_reduction(X3CInstance.of(1, [[0, 1, 2]]))
    f = cover_to_labeling(single, [0])
    res = solve_rdrd_bnb(single.graph)
    part1 = (single.graph.n == 13 and is_chordal(single.graph).chordal and f.weight == 11
             and validate(single.graph, f).valid and res.value == 11
             and labeling_to_cover(single, res.certificate) == [0])
    fig = build_reduction(X3CInstance.of(2, [[0, 2, 4], [1, 3, 5]]))
    f = cover_to_labeling(fig, [0, 1])
    part2 = (fig.graph.n == 21 and is_chordal(fig.graph).chordal and f.weight == 19
             and validate(fig.graph, f).valid)
    no = build_reduction(X3CInstance.of(2, [[0, 1, 2], [0, 1, 3]]))
    res = solve_rdrd_bnb(no.graph, timeout=3600)
    inconclusive = not res.optimal and (res.lower_bound or 0) <= 19
    part3 = res.lower_bound is not None and res.lower_bound >= 20 and (res.value is None or res.value >= 20)
    if inconclusive:
        record(7, False, "INCONCLUSIVE - solver timed out below the threshold")
        pytest.skip("unsolvable instance inconclusive at timeout")
    ok = part1 and part2 and part3
    record(7, ok, f"q=1 -> 13 vertices, value 11, cover [0]: {part1}; two-triple instance -> 21 vertices, "
                  f"weight-19 certificate: {part2}; unsolvable instance proven >= {res.lower_bound}")
    assert ok


def test_criterion_8_combine_strong():
    graphs = {"K3": complete_graph(3), "C6": cycle_graph(6), "P4": path_graph(4)}
    optima = {k: solve_rdrd_bnb(g, enumerate_all=True).optima for k, g in graphs.items()}
    checked, bad = 0, []
    for a, b in itertools.product(graphs, repeat=2):
        g, h = graphs[a], graphs[b]
        prod = strong_product(g, h)[0]
        for f1, f2 in itertools.product(optima[a], optima[b]):
            f = combine_strong(g, h, f1, f2)
            w1, w2 = sum(f1), sum(f2)
            checked += 1
            if not (validate(prod, f).valid and f.weight == w1 * w2 - combine_deduction(f1, f2)
                    and f.weight <= w1 * w2 - 6):
                bad.append(f"{a}x{b} {f1} {f2}")
    record(8, not bad, f"{checked - len(bad)}/{checked} optimal pairs combine correctly")
    assert not bad


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))

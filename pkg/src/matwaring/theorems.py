"""Checking the sum-of-powers theorems over a finite ring.

Each family is evaluated statement by statement and the report records
whether the verdicts agree the way the theorem says they must.  "Every
matrix in M_n(R) is a sum of k-th powers" is evaluated as ``S^k_n = R`` for
``n = 2`` and ``n = 3``; statements about a single matrix are checked for
every possible trace value, since every element of R is the trace of some
matrix of each size.
"""

from __future__ import annotations

from typing import Callable

from .budget import Budget, ensure
from .condition_sets import build_condition_set, evaluate_witness, pth_power_mod_p, verify_group_closure
from .reports import Statement, TheoremReport
from .rings import Ring, make_ring
from .subgroups import compute_trace_subgroup

FAMILIES = ("deg9", "deg10", "deg11", "deg12", "deg13", "deg14", "deg15", "deg16")
SIZES = (2, 3)


class UnknownFamily(ValueError):
    pass


def _whole(ring: Ring, k: int, n: int, budget: Budget) -> Statement:
    sg = compute_trace_subgroup(ring, k, n, budget=budget)
    text = f"every {n}x{n} matrix is a sum of {k}-th powers"
    if sg.is_everything():
        return Statement(f"{k}-th powers, n={n}", True, text, {"kind": "whole_subgroup", "k": k, "n": n})
    v = next(a for a in ring.elements() if a not in sg)
    return Statement(f"{k}-th powers, n={n}", False, text,
                     {"kind": "outside_subgroup", "k": k, "n": n, "element": ring.format(v)})


def _power_mod(ring: Ring, p: int, sid: str, budget: Budget) -> Statement:
    res = pth_power_mod_p(ring, p, budget)
    text = f"every element is a {p}-th power modulo {p}R"
    if res.holds:
        return Statement(sid, True, text)
    return Statement(sid, False, text,
                     {"kind": "not_pth_power", "p": p, "element": ring.format(res.counterexample)})


def _implication(ring: Ring, sid: str, text: str, bad: Callable[[int], bool], why: str) -> Statement:
    """True iff no element of R satisfies ``bad``."""
    for v in ring.elements():
        if bad(v):
            return Statement(sid, False, text, {"kind": "counterexample", "element": ring.format(v), "detail": why})
    return Statement(sid, True, text)


def _containment(ring: Ring, set_kind: str, k: int, n: int, sid: str, budget: Budget) -> Statement:
    cs = build_condition_set(set_kind, ring, budget)
    sg = compute_trace_subgroup(ring, k, n, budget=budget)
    text = f"trace in {set_kind} implies sum of {k}-th powers (n={n})"
    for v, w in cs.witnesses.items():
        if v not in sg:
            return Statement(sid, False, text, {
                "kind": "set_member_outside", "set": set_kind, "k": k, "n": n,
                "element": ring.format(v), "branch": w[0], "witness": list(w[1])})
    return Statement(sid, True, text)


def _deg9(ring: Ring, budget: Budget, report: TheoremReport) -> bool:
    eq = [_whole(ring, 3, n, budget) for n in SIZES] + [_whole(ring, 9, n, budget) for n in SIZES]
    for s, label in zip(eq, ("1", "1", "2", "2")):
        s.id = f"{label}[n={s.witness['n']}]"
    eq.append(_power_mod(ring, 3, "3", budget))
    cs = build_condition_set("deg9", ring, budget)
    tail = []
    for n in SIZES:
        sg = compute_trace_subgroup(ring, 9, n, budget=budget)
        tail.append(_implication(
            ring, f"4[n={n}]", f"trace mod 9R in a0^9 + 3a1^3 iff sum of 9th powers (n={n})",
            lambda v, sg=sg: (cs.proj(v) in cs) != (v in sg), "membership and decision differ"))
    for n in SIZES:
        tail.append(_containment(ring, "witt:3:2", 9, n, f"5[n={n}]", budget))
    report.statements += eq + tail
    report.notes.append("(5) is checked for s = 2; larger s follow from W(3,s+1,R) in W(3,s,R)")
    return len({s.verdict for s in eq}) == 1 and all(s.verdict for s in tail)


def _composite_exact(k: int):
    def check(ring: Ring, budget: Budget, report: TheoremReport) -> bool:
        cs = build_condition_set(f"s{k}", ring, budget)
        closure = verify_group_closure(cs)
        sts = [Statement("1", closure.closed, f"S_{k} is an additive group",
                         None if closure.closed else {"kind": "not_closed", "set": f"s{k}", "reason": closure.reason})]
        sg2 = compute_trace_subgroup(ring, k, 2, budget=budget)
        sts.append(_implication(
            ring, "2[n=2]", f"2x2: sum of {k}-th powers iff trace mod {k}R in S_{k}",
            lambda v: (v in sg2) != (cs.proj(v) in cs), "membership and decision differ"))
        sg3 = compute_trace_subgroup(ring, k, 3, budget=budget)
        sts.append(_implication(
            ring, "3[n=3]", f"trace mod {k}R in S_{k} implies sum of {k}-th powers (n=3)",
            lambda v: cs.proj(v) in cs and v not in sg3, "member of the set but not decided YES"))
        report.statements += sts
        return all(s.verdict for s in sts)
    return check


def _deg12(ring: Ring, budget: Budget, report: TheoremReport) -> bool:
    cs = build_condition_set("s12", ring, budget)
    closure = verify_group_closure(cs)
    sts = [Statement("1", closure.closed, "S_12 is an additive group",
                     None if closure.closed else {"kind": "not_closed", "set": "s12", "reason": closure.reason})]
    sg2 = compute_trace_subgroup(ring, 12, 2, budget=budget)
    sts.append(_implication(
        ring, "4[n=2]", "2x2 sum of 12-th powers implies trace mod 12R in S_12",
        lambda v: v in sg2 and cs.proj(v) not in cs, "decided YES but outside the set"))
    for n in SIZES:
        sts.append(_containment(ring, "s12star", 12, n, f"5[n={n}]", budget))
    info = [_containment(ring, "s12star1", 12, n, f"info:5[n={n},m=1]", budget) for n in SIZES]
    report.statements += sts + info
    report.notes.append("S*_12 uses m >= 1 in the x^(2m+1) term; info lines restrict to m = 1")
    return all(s.verdict for s in sts)


def _prime(p: int):
    def check(ring: Ring, budget: Budget, report: TheoremReport) -> bool:
        eq = []
        for n in SIZES:
            s = _whole(ring, p, n, budget)
            s.id = f"1[n={n}]"
            eq.append(s)
        eq.append(_power_mod(ring, p, "2", budget))
        w = build_condition_set(f"witt:{p}:1", ring, budget)
        tail = []
        for n in SIZES:
            sg = compute_trace_subgroup(ring, p, n, budget=budget)
            tail.append(_implication(
                ring, f"3[n={n}]", f"trace in a^{p} + {p}R iff sum of {p}-th powers (n={n})",
                lambda v, sg=sg: (v in w) != (v in sg), "membership and decision differ"))
        report.statements += eq + tail
        return len({s.verdict for s in eq}) == 1 and all(s.verdict for s in tail)
    return check


def _deg16(ring: Ring, budget: Budget, report: TheoremReport) -> bool:
    eq = []
    for i, k in enumerate((2, 4, 8, 16), start=1):
        for n in SIZES:
            s = _whole(ring, k, n, budget)
            s.id = f"{i}[n={n}]"
            eq.append(s)
    eq.append(_power_mod(ring, 2, "5", budget))
    tail = [_containment(ring, "wittstar24", 16, n, f"6[n={n}]", budget) for n in SIZES]
    report.statements += eq + tail
    report.notes.append("W*(2,4,R) uses m >= 1 in the a^(2m+1) term")
    return len({s.verdict for s in eq}) == 1 and all(s.verdict for s in tail)


_CHECKS = {
    "deg9": _deg9,
    "deg10": _composite_exact(10),
    "deg11": _prime(11),
    "deg12": _deg12,
    "deg13": _prime(13),
    "deg14": _composite_exact(14),
    "deg15": _composite_exact(15),
    "deg16": _deg16,
}


def verify_theorem(family: str, ring: Ring, budget: Budget | None = None) -> TheoremReport:
    family = family.strip().lower()
    if family not in _CHECKS:
        raise UnknownFamily(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")
    budget = ensure(budget)
    report = TheoremReport(family, ring.spec)
    report.agreement = _CHECKS[family](ring, budget, report)
    report.budget_used = budget.used
    return report


def revalidate(report: TheoremReport) -> list[str]:
    """Re-check every witness in ``report`` from scratch; returns the problems."""
    ring = make_ring(report.ring)
    problems = []
    for s in report.statements:
        w = s.witness
        if not w:
            continue
        kind = w["kind"]
        el = ring.parse_element(w["element"]) if "element" in w else None
        if kind == "whole_subgroup":
            ok = compute_trace_subgroup(ring, w["k"], w["n"]).is_everything()
        elif kind == "outside_subgroup":
            ok = el not in compute_trace_subgroup(ring, w["k"], w["n"])
        elif kind == "not_pth_power":
            ok = not pth_power_mod_p(ring, w["p"]).holds and \
                ring.quotient(w["p"])[1](el) not in build_condition_set(f"pth:{w['p']}", ring)
        elif kind == "set_member_outside":
            cs = build_condition_set(w["set"], ring)
            ok = evaluate_witness(cs, (w["branch"], tuple(w["witness"]))) == el and \
                el not in compute_trace_subgroup(ring, w["k"], w["n"])
        elif kind == "not_closed":
            ok = not verify_group_closure(build_condition_set(w["set"], ring)).closed
        elif kind == "counterexample":
            ok = not s.verdict
        else:
            ok = False
        if not ok:
            problems.append(f"statement {s.id}: witness {w} does not re-validate")
    return problems

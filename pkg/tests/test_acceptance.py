"""The eleven acceptance criteria, one test each.

Every test records a PASS/FAIL line (printed at the end of the pytest run and
when this file is run directly).  Criteria 7 and 10 fail on documented
counterexample rings; those tests are marked as strict expected failures and
separate tests pin down that nothing else fails.
"""

from __future__ import annotations

import random
import time
from itertools import product

import pytest

from matwaring import (
    IntPolynomial, build_condition_set, brute_force_witness, check_all_identities, closed_form, companion,
    decide_sum_of_kth_powers, make_ring, mat_pow, order_power_criterion,
    reduced_form, verify_chain_semantically, verify_group_closure, verify_theorem, witt_membership_check,
)
from matwaring.certificates import load_chains
from matwaring.matrices import all_matrices, random_matrix
from matwaring.orders import CURATED_PAIRS
from matwaring.reports import DEFAULT_SEED
from matwaring.theorems import FAMILIES
from matwaring.trace_power import coefficients
from matwaring.universe import DEFAULT_UNIVERSE

RESULTS: dict[int, str] = {}

# (family, ring) pairs where the stated theorem fails; see the decisions ledger
KNOWN_THEOREM_FAILURES = {("deg15", "Z/2[a]/(a^2+a+1)"), ("deg12", "Z/3[e]/(e^2)")}
KNOWN_CHAIN_FAILURES = {
    ("deg15", "Z/2[a]/(a^2+a+1)"): {"deg15.h_a", "deg15.h_b", "deg15.c15x", "deg15.c3x5"},
    ("deg15", "Z/3[e]/(e^2)"): {"deg15.K2[20x^4]", "deg15.p_19"},
    ("deg12", "Z/3[e]/(e^2)"): {"deg12.s_2", "deg12.s_3", "deg12.t_2", "deg12.t_3"},
}


def record(n: int, ok: bool, start: float, detail: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({time.perf_counter() - start:.1f} s)  {detail}"
    RESULTS[n] = line
    print(line)


def universe():
    return [make_ring(s) for s in DEFAULT_UNIVERSE]


def test_criterion_01_trace_formula():
    start = time.perf_counter()
    bad, count = [], 0
    for r in universe():
        minus_one = r.neg(r.one)
        for t, d in product(r.elements(), repeat=2):
            A = companion(r, t, d)
            assert A.rows[1] == (minus_one, r.zero)
            for k in range(2, 17):
                count += 1
                if closed_form(k, r.element(t), r.element(d)).value != mat_pow(A, k).trace():
                    bad.append((r.spec, k, r.format(t), r.format(d)))
    ok = not bad and time.perf_counter() - start < 30
    record(1, ok, start, f"{count} comparisons, {len(bad)} mismatches")
    assert not bad


# transcribed by hand from the printed expansions
PRINTED = {
    9: (1, -9, 27, -30, 9),
    10: (1, -10, 35, -50, 25, -2),
    11: (1, -11, 44, -77, 55, -11),
    12: (1, -12, 54, -112, 105, -36, 2),
    13: (1, -13, 65, -156, 182, -91, 13),
    14: (1, -14, 77, -210, 294, -196, 49, -2),
    15: (1, -15, 90, -275, 450, -378, 140, -15),
    16: (1, -16, 104, -352, 660, -672, 336, -64, 2),
}


def test_criterion_02_printed_coefficients():
    start = time.perf_counter()
    bad = [k for k, v in PRINTED.items() if coefficients(k) != v]
    record(2, not bad, start, f"8 vectors compared, mismatches: {bad or 'none'} (k = 15 agrees)")
    assert not bad


def test_criterion_03_group_structure():
    start = time.perf_counter()
    rings = {r.spec: r for r in universe()}
    for s in ("Z/10", "Z/12", "Z/14", "Z/15"):
        rings.setdefault(s, make_ring(s))
    bad = []
    for r in rings.values():
        for kind in ("s10", "s12", "s14", "s15"):
            res = verify_group_closure(build_condition_set(kind, r))
            if not res.closed:
                bad.append((kind, r.spec, res.reason))
    ok = not bad and time.perf_counter() - start < 10
    record(3, ok, start, f"4 sets on {len(rings)} rings, {len(bad)} not closed")
    assert ok


def test_criterion_04_reduction_congruences():
    start = time.perf_counter()
    bad = []
    for k in (10, 12, 14, 15):
        r = make_ring(f"Z/{k}")
        for t, d in product(r.elements(), repeat=2):
            te, de = r.element(t), r.element(d)
            if reduced_form(k, te, de).value != closed_form(k, te, de).value:
                bad.append((k, t, d))
    ok = not bad and time.perf_counter() - start < 1
    record(4, ok, start, f"{len(bad)} mismatches over (Z/k)^2")
    assert ok


def test_criterion_05_frobenius():
    start = time.perf_counter()
    per_case, bad, cases = 1000, [], 0
    for r in universe():
        for p in (2, 3, 5, 7, 11, 13):
            q, proj = r.quotient(p)
            for n in (2, 3):
                cases += 1
                rng = random.Random(f"{DEFAULT_SEED}:{r.spec}:{p}:{n}")
                for _ in range(per_case):
                    M = random_matrix(r, n, rng)
                    lhs = proj(mat_pow(M, p).trace())
                    rhs = q.pow(proj(M.trace()), p)
                    if lhs != rhs:
                        bad.append((r.spec, p, n, M.format()))
                        break
    ok = not bad and time.perf_counter() - start < 60
    record(5, ok, start, f"{cases} (ring, p, n) cases x {per_case} seeded matrices, {len(bad)} violations")
    assert ok


def test_criterion_06_witt_containment():
    start = time.perf_counter()
    per_case, bad, checked = 100, [], 0
    for r in universe():
        for p, s in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2)):
            outer = build_condition_set(f"witt:{p}:{s}", r)
            inner = build_condition_set(f"witt:{p}:{s + 1}", r)
            if not inner.elements <= outer.elements:
                bad.append(("nesting", r.spec, p, s))
            for n in (2, 3):
                rng = random.Random(f"{DEFAULT_SEED}:{r.spec}:{p}:{s}:{n}")
                for _ in range(per_case):
                    M = random_matrix(r, n, rng)
                    w = witt_membership_check(M, p, s)
                    checked += 1
                    if not w.member:
                        bad.append((r.spec, p, s, M.format()))
                        break
                    # the witness re-evaluates from scratch
                    total = r.zero
                    for i, a in enumerate(w.witness):
                        total = r.add(total, r.scale(r.pow(a, p ** (s - i)), p ** i))
                    assert total == w.value
    ok = not bad and time.perf_counter() - start < 120
    record(6, ok, start, f"{checked} seeded matrices, nesting checked for 5 (p, s), {len(bad)} problems")
    assert ok


def _theorem_runs():
    out = {}
    for r in universe():
        for fam in FAMILIES:
            out[(fam, r.spec)] = verify_theorem(fam, r)
    return out


_THEOREMS: dict = {}


def theorem_runs():
    if not _THEOREMS:
        _THEOREMS.update(_theorem_runs())
    return _THEOREMS


@pytest.mark.xfail(strict=True, raises=AssertionError,
                   reason="stated theorem fails on F_4 (k = 15) and F_3[e] (k = 12); see decisions ledger")
def test_criterion_07_theorem_equivalences():
    start = time.perf_counter()
    runs = theorem_runs()
    failed = sorted(k for k, rep in runs.items() if not rep.agreement)
    designated = []
    r = runs[("deg9", "Z/3[e]/(e^2)")]
    designated.append(r.agreement and not any(s.verdict for s in r.statements if s.id[0] in "123"))
    r = runs[("deg16", "Z/2[e]/(e^2)")]
    designated.append(r.agreement and not any(s.verdict for s in r.statements if s.id[0] in "12345"))
    for f in ("Z/2[a]/(a^2+a+1)", "Z/3[a]/(a^2+1)"):
        r = runs[("deg9", f)]
        designated.append(r.agreement and all(s.verdict for s in r.statements if s.id[0] in "123"))
    ok = not failed and all(designated) and time.perf_counter() - start < 300
    record(7, ok, start, f"{len(runs)} (family, ring) runs; designated rings ok: {all(designated)}; "
                         f"disagreement on {failed or 'none'}")
    assert ok


def test_criterion_07_failures_are_exactly_the_documented_ones():
    runs = theorem_runs()
    assert {k for k, rep in runs.items() if not rep.agreement} == KNOWN_THEOREM_FAILURES


def test_criterion_08_discriminant_criterion():
    start = time.perf_counter()
    bad = []
    for poly, p, holds in CURATED_PAIRS:
        rep = order_power_criterion(IntPolynomial.parse(poly), p)
        if not rep.agreement or rep.statement("3").verdict != holds:
            bad.append((poly, p))
    required = {("x^2-x+1", 3): False, ("x^2-x-1", 3): True, ("x^2+1", 2): False}
    for (poly, p), holds in required.items():
        if order_power_criterion(IntPolynomial.parse(poly), p).statement("3").verdict != holds:
            bad.append((poly, p))
    ok = len(CURATED_PAIRS) >= 12 and not bad and time.perf_counter() - start < 5
    record(8, ok, start, f"{len(CURATED_PAIRS)} curated pairs, three-way agreement failures: {bad or 'none'}")
    assert ok


def test_criterion_09_closure_identities():
    start = time.perf_counter()
    results = check_all_identities()
    bad = [(r.k, r.id) for r in results if not r.ok]
    fixed = [(r.k, r.id) for r in results if r.accepted != "stated"]
    ok = not bad and time.perf_counter() - start < 1
    record(9, ok, start, f"{len(results)} congruences, {len(bad)} failing; {len(fixed)} pass only in "
                         f"their corrected reading: {fixed}")
    assert ok


_CHAINS: dict = {}


def chain_runs():
    if not _CHAINS:
        rings = universe()
        for name in load_chains():
            for r in rings:
                _CHAINS[(name, r.spec)] = verify_chain_semantically(name, [r])
    return _CHAINS


@pytest.mark.xfail(strict=True, raises=AssertionError,
                   reason="three chain steps fail on F_4 and F_3[e]; see decisions ledger")
def test_criterion_10_chain_certification():
    start = time.perf_counter()
    runs = chain_runs()
    failed = {k: sorted({c.entry for c in rep.failures()}) for k, rep in runs.items() if not rep.ok}
    readings = {}
    for (name, _), rep in runs.items():
        for entry, verdicts in rep.ambiguous.items():
            for label, v in verdicts.items():
                readings.setdefault((entry, label), []).append(v)
    supported = sorted(f"{e} [{lbl}]" for (e, lbl), vs in readings.items() if all(vs))
    entries = sum(len(f.entries) for f in load_chains().values())
    ok = not failed and time.perf_counter() - start < 600
    record(10, ok, start, f"{entries} entries x {len(DEFAULT_UNIVERSE)} rings; reading supported: "
                          f"{supported}; failing: {failed or 'none'}")
    assert ok


def test_criterion_10_failures_are_exactly_the_documented_ones():
    runs = chain_runs()
    failed = {k: {c.entry for c in rep.failures()} for k, rep in runs.items() if not rep.ok}
    assert failed == KNOWN_CHAIN_FAILURES


def test_criterion_11_decision_consistency():
    start = time.perf_counter()
    contradictions, found, total, inconclusive = [], 0, 0, 0
    per_ring_rate = {}
    for r in universe():
        if r.cardinality > 5:
            continue
        for k in (2, 3, 4):
            all_yes, hits, n = True, 0, 0
            for M in all_matrices(r, 2):
                d = decide_sum_of_kth_powers(M, k)
                all_yes &= d.yes
                res = brute_force_witness(M, k, 3)
                n += 1
                if res.found:
                    hits += 1
                    if not d.yes:
                        contradictions.append((r.spec, k, M.format()))
                else:
                    inconclusive += 1
            found += hits
            total += n
            if all_yes:
                per_ring_rate[(r.spec, k)] = hits / n
    low = {key: rate for key, rate in per_ring_rate.items() if rate < 0.95}
    ok = not contradictions and not low and time.perf_counter() - start < 600
    record(11, ok, start, f"{total} matrices, {found} witnesses, {inconclusive} INCONCLUSIVE, "
                          f"{len(contradictions)} contradictions, rings below 95%: {low or 'none'}")
    assert ok


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_") and "exactly" not in k]
    for fn in tests:
        try:
            fn()
        except AssertionError:
            pass

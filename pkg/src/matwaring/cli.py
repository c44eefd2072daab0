"""Command-line front end.

Exit codes: 0 success or agreement, 1 disagreement or failed certification,
2 usage, configuration or budget errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .budget import Budget, BudgetExceeded
from .certificates import (
    TableError, UnknownEntry, UnknownIdentity, check_all_identities, check_identity,
    explore_remark, load_chains, lookup, verify_chain_semantically,
)
from .condition_sets import HypothesisFailed, UnknownKind, build_condition_set, is_member, shape_for
from .matrices import parse_matrix
from .orders import FAMILY_PRIME, IntPolynomial, PolynomialError, order_power_criterion
from .polys import PolyParseError
from .reports import DEFAULT_SEED
from .rings import OwnerMismatch, Ring, RingSpecError, make_ring
from .subgroups import OutsideBounds, brute_force_witness, compute_trace_subgroup, decide_sum_of_kth_powers
from .theorems import FAMILIES, UnknownFamily, verify_theorem
from .trace_power import TracePolynomial, closed_form, reduced_form
from .universe import ConfigError, TestUniverse

OK, FAILED, USAGE = 0, 1, 2

# anything the library raises for bad input or an exhausted budget
_USAGE_ERRORS = (
    RingSpecError, OwnerMismatch, BudgetExceeded, ConfigError, UnknownKind, HypothesisFailed,
    UnknownFamily, PolynomialError, PolyParseError, UnknownIdentity, UnknownEntry, TableError,
    OutsideBounds, ValueError,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _emit(args, data: dict[str, Any], text: str) -> None:
    print(json.dumps(data, indent=2, sort_keys=True) if args.json else text)


def _budget(args) -> Budget:
    return Budget(args.budget or 0)


def _format_witness(cs, w) -> dict[str, Any]:
    label, xs = w
    shape = shape_for(label)
    amb = cs.ambient
    np = len(shape.powers)
    out = {"branch": label, "values": [amb.format(x) for x in xs[:np]]}
    if shape.sweep:
        out["x"], out["m"] = amb.format(xs[np]), xs[np + 1]
    return out


# subcommands

def cmd_trace_power(args) -> int:
    ring = make_ring(args.ring)
    t, d = ring(args.t), ring(args.delta)
    value = reduced_form(args.k, t, d) if args.reduced else closed_form(args.k, t, d)
    text = value.ring.format(value.value)
    data: dict[str, Any] = {"k": args.k, "ring": value.ring.spec, "t": ring.format(t.value),
                            "delta": ring.format(d.value), "reduced": args.reduced, "value": text}
    lines = [text]
    if args.explain:
        tp = TracePolynomial.of(args.k)
        data["coefficients"] = list(tp.coefficients)
        lines.append(f"coefficients: {list(tp.coefficients)}")
        lines.append(f"tr(A^{args.k}) = {tp.format()}")
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_set(args) -> int:
    ring = make_ring(args.ring)
    cs = build_condition_set(args.kind, ring, _budget(args))
    base = {"kind": cs.kind, "ring": ring.spec, "ambient": cs.ambient.spec, "formula": cs.formula}
    if args.element is not None:
        member, w = is_member(cs, ring(args.element))
        data = dict(base, element=args.element, member=member,
                    witness=_format_witness(cs, w) if w else None)
        text = f"{args.element} {'in' if member else 'not in'} {cs.kind} over {ring.spec}"
        if w:
            text += f"  witness {_format_witness(cs, w)}"
        _emit(args, data, text)
        return OK
    members = {cs.ambient.format(v): _format_witness(cs, w) for v, w in sorted(cs.witnesses.items())}
    data = dict(base, size=len(cs), whole=cs.is_everything(), members=members)
    lines = [f"{cs.kind} over {ring.spec} (computed in {cs.ambient.spec}): {cs.formula}",
             f"{len(cs)} of {cs.ambient.cardinality} elements"]
    lines += [f"  {v}: {w}" for v, w in members.items()]
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_subgroup(args) -> int:
    ring = make_ring(args.ring)
    sg = compute_trace_subgroup(ring, args.k, args.n, use_quotient=args.quotient, budget=_budget(args))
    amb = sg.ambient
    gens = {amb.format(v): [amb.format(x) for x in p] for v, p in sorted(sg.generators.items())}
    data = {"k": args.k, "n": args.n, "ring": amb.spec, "elements": sg.format_members(),
            "whole": sg.is_everything(), "generators": gens}
    lines = [f"S^{args.k} for {args.n}x{args.n} matrices over {amb.spec}: "
             f"{len(sg)} of {amb.cardinality} elements" + (" (everything)" if sg.is_everything() else ""),
             "  elements: " + ", ".join(sg.format_members()),
             "  generators (value <- provenance):"]
    lines += [f"    {v} <- {p}" for v, p in gens.items()]
    _emit(args, data, "\n".join(lines))
    return OK


def _matrix_text(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg) as fh:
            return fh.read()
    return arg


def cmd_decide(args) -> int:
    ring = make_ring(args.ring)
    M = parse_matrix(ring, _matrix_text(args.matrix))
    budget = _budget(args)
    dec = decide_sum_of_kth_powers(M, args.k, budget)
    data: dict[str, Any] = {"k": args.k, "ring": ring.spec, "n": dec.n, "verdict": dec.verdict,
                            "trace": ring.format(dec.trace), "caveat": dec.caveat}
    lines = [dec.describe(ring)]
    if args.witness:
        bf = brute_force_witness(M, args.k, args.max_terms, budget)
        terms = [[[ring.format(v) for v in row] for row in N.rows] for N in bf.terms or ()]
        data["brute_force"] = {"status": bf.status, "terms": terms}
        lines.append(f"brute force: {bf.status}")
        lines += [f"  N_{i}^{args.k} with N_{i} = {t}" for i, t in enumerate(terms, 1)]
        if bf.found and not dec.yes:
            lines.append("contradiction: witness found but decision is NO")
            _emit(args, data, "\n".join(lines))
            return FAILED
    _emit(args, data, "\n".join(lines))
    return OK


def cmd_verify(args) -> int:
    ring = make_ring(args.ring)
    report = verify_theorem(args.family, ring, _budget(args))
    report.seed = args.seed
    _emit(args, report.to_dict(), report.format())
    return OK if report.agreement else FAILED


def cmd_order(args) -> int:
    f = IntPolynomial.parse(args.poly)
    report = order_power_criterion(f, args.p, args.family)
    _emit(args, report.to_dict(), report.format())
    return OK if report.agreement else FAILED


def _certify_rings(args) -> list[Ring]:
    if args.ring:
        return [make_ring(s) for s in args.ring]
    return TestUniverse().rings()


def cmd_certify(args) -> int:
    if args.entry:
        target = args.entry if "." in args.entry else f"{_family_name(args.k)}.{args.entry}"
    else:
        target = _family_name(args.k)
    fam, _ = lookup(target)
    if fam.k != args.k:
        raise ValueError(f"{target} belongs to k = {fam.k}, not {args.k}")
    report = verify_chain_semantically(target, _certify_rings(args), _budget(args))
    _emit(args, report.to_dict(), report.format())
    return OK if report.ok else FAILED


def _family_name(k: int) -> str:
    for name, fam in load_chains().items():
        if fam.k == k:
            return name
    raise ValueError(f"no proof chain for k = {k}")


def cmd_identity(args) -> int:
    results = [check_identity(args.k, args.id)] if args.id else check_all_identities(args.k)
    data = {"results": [vars(r) | {"ok": r.ok} for r in results]}
    lines = []
    for r in results:
        verdicts = ", ".join(f"{lbl} {'holds' if v else 'fails'}" for lbl, v in r.verdicts.items())
        lines.append(f"{'pass' if r.ok else 'FAIL'}  k={r.k} {r.id}: {verdicts} (accepted: {r.accepted})")
    _emit(args, data, "\n".join(lines))
    return OK if all(r.ok for r in results) else FAILED


def run_universe(universe: TestUniverse, seed: int = DEFAULT_SEED) -> tuple[bool, dict[str, Any], str]:
    """Every theorem family, closure identity and chain family on every ring."""
    rows: list[dict[str, Any]] = []
    rings = universe.rings()
    for ring in rings:
        for fam in FAMILIES:
            try:
                rep = verify_theorem(fam, ring, Budget(universe.budget_for(ring.spec)))
                bad = [s.id for s in rep.statements if s.witness and not s.verdict]
                rows.append({"task": f"theorem {fam} {ring.spec}", "ok": rep.agreement,
                             "detail": "" if rep.agreement else f"false statements {bad}"})
            except BudgetExceeded as exc:
                rows.append({"task": f"theorem {fam} {ring.spec}", "ok": False, "detail": f"budget: {exc}"})
    for r in check_all_identities():
        rows.append({"task": f"identity k={r.k} {r.id}", "ok": r.ok, "detail": "" if r.ok else str(r.verdicts)})
    for name in load_chains():
        for ring in rings:
            task = f"chain {name} {ring.spec}"
            try:
                rep = verify_chain_semantically(name, [ring], Budget(universe.budget_for(ring.spec)))
                fails = sorted({c.entry for c in rep.failures()})
                rows.append({"task": task, "ok": rep.ok, "detail": ", ".join(fails)})
            except BudgetExceeded as exc:
                rows.append({"task": task, "ok": False, "detail": f"budget: {exc}"})
    ok = all(r["ok"] for r in rows)
    failed = [r for r in rows if not r["ok"]]
    data = {"rings": universe.specs, "seed": seed, "ok": ok, "tasks": rows,
            "passed": len(rows) - len(failed), "failed": len(failed)}
    lines = [f"{len(rows) - len(failed)} of {len(rows)} tasks passed on {len(rings)} ring(s)"]
    lines += [f"  FAIL  {r['task']}: {r['detail']}" for r in failed]
    return ok, data, "\n".join(lines)


def cmd_universe(args) -> int:
    universe = TestUniverse.load(args.config) if args.config else TestUniverse()
    if args.budget:
        universe.budgets = {s: universe.budgets.get(s, args.budget) for s in universe.specs}
    if args.remark:
        k, g1, g2 = args.remark
        rep = explore_remark(int(k), g1, g2, universe.rings(), _budget(args))
        _emit(args, vars(rep), rep.format())
        return OK
    ok, data, text = run_universe(universe, args.seed)
    _emit(args, data, text)
    return OK if ok else FAILED


# argument parsing

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--budget", type=int, default=0,
                   help="enumeration step budget (default: WARING_BUDGET or 10^7)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed recorded in reports")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="matwaring", description="Sums of k-th powers of matrices over finite rings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("trace-power", help="tr(A(t, delta)^k)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--reduced", action="store_true", help="normal form modulo kR")
    p.add_argument("--explain", action="store_true", help="also print the coefficient vector")
    p.set_defaults(func=cmd_trace_power)

    p = sub.add_parser("set", help="members of a trace-condition set")
    p.add_argument("--kind", required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--element")
    p.set_defaults(func=cmd_set)

    p = sub.add_parser("subgroup", help="the trace subgroup S^k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--quotient", action="store_true", help="work in R/k!R")
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("decide", help="is a matrix a sum of k-th powers")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--matrix", required=True, help='file, or inline text "n; a,b; c,d"')
    p.add_argument("--witness", action="store_true", help="also search for summands by brute force")
    p.add_argument("--max-terms", type=int, default=3)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("verify", help="check a theorem family over a ring")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--ring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("order", help="p-th powers modulo p in Z[x]/(f)")
    p.add_argument("--poly", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--family", choices=sorted(FAMILY_PRIME))
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("certify", help="semantic check of a proof chain")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ring", action="append", help="repeatable; default is the test universe")
    p.add_argument("--entry", help="one entry id, e.g. p_3")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("identity", help="symbolic check of closure congruences")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--id", help="identity id; all identities for k when omitted")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("universe", help="run every check on a set of rings")
    p.add_argument("config", nargs="?", help="one ring spec per line, optional budget=N")
    p.add_argument("--remark", nargs=3, metavar=("K", "G1", "G2"),
                   help="exploratory probe: is F(g1(x), g2(x)) inside the named group (k = 12 or 16)")
    p.set_defaults(func=cmd_universe)

    for action in sub.choices.values():
        _common(action)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return USAGE
    except KeyError as exc:  # unknown identity or chain entry
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return USAGE
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else OK


if __name__ == "__main__":
    sys.exit(main())

"""Symbolic closure congruences and semantic checks of proof-chain polynomials.

Two shipped tables drive this module:

* ``data/identities.txt``: binomial congruences modulo k, checked by
  expanding both sides over Z.
* ``data/chains.txt``: the polynomial families whose values are claimed to
  lie in S^k.  Each entry is evaluated at every element (or pair) of a test
  ring and compared with the trace subgroup; its recipe, when given, is
  re-derived over Z and the difference to the stated polynomial is checked
  the same way.
"""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import product
from typing import Any, Iterable, Sequence

from .budget import Budget, ensure
from .polys import MultiPoly, evaluate_expression, parse_poly
from .rings import Ring
from .subgroups import additive_closure, compute_trace_subgroup
from .trace_power import TracePolynomial

STATED = "stated"


class UnknownIdentity(KeyError):
    pass


class UnknownEntry(KeyError):
    pass


class TableError(ValueError):
    pass


_JUXTA = re.compile(r"([a-z]\d*)(?=[a-z])")
_COLUMN = re.compile(r"(?<!\|)\|(?!\|)")  # "|" separates columns, "||" separates readings


def parse_table_poly(text: str) -> MultiPoly:
    """Parse table notation, where ``x0y0`` and ``td^4`` mean products.

    Variables in the tables are single letters with an optional index.
    """
    return parse_poly(_JUXTA.sub(r"\1*", text))


def _readings(field_text: str) -> list[tuple[str, str]]:
    """``"A || fix: B"`` -> ``[("stated", "A"), ("fix", "B")]``."""
    parts = [p.strip() for p in field_text.split("||")]
    out = [(STATED, parts[0])]
    for p in parts[1:]:
        label, _, text = p.partition(":")
        if not text:
            raise TableError(f"reading without a label: {p!r}")
        out.append((label.strip(), text.strip()))
    return out


def _accepted(readings: Sequence[tuple[str, Any]]) -> str:
    labels = [r[0] for r in readings]
    return "fix" if "fix" in labels else STATED


def _data(name: str) -> str:
    return resources.files("matwaring").joinpath("data", name).read_text()


def _rows(text: str) -> Iterable[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield n, line


# closure congruences

@dataclass(frozen=True)
class ClosureIdentity:
    k: int
    id: str
    lhs: str
    readings: tuple[tuple[str, str], ...]
    note: str = ""

    @property
    def accepted(self) -> str:
        return _accepted(self.readings)

    def holds(self, label: str | None = None) -> bool:
        label = label or self.accepted
        rhs = dict(self.readings)[label]
        return parse_table_poly(self.lhs).congruent(parse_table_poly(rhs), self.k)


@lru_cache(maxsize=None)
def load_identities() -> dict[tuple[int, str], ClosureIdentity]:
    out = {}
    for n, line in _rows(_data("identities.txt")):
        cols = [c.strip() for c in _COLUMN.split(line)]
        if len(cols) < 4:
            raise TableError(f"identities.txt:{n}: expected 'k | id | lhs | rhs | note'")
        k, ident, lhs, rhs = int(cols[0]), cols[1], cols[2], cols[3]
        note = cols[4] if len(cols) > 4 else ""
        out[(k, ident)] = ClosureIdentity(k, ident, lhs, tuple(_readings(rhs)), note)
    return out


def identity_ids(k: int | None = None) -> list[tuple[int, str]]:
    return [key for key in load_identities() if k is None or key[0] == k]


def get_identity(k: int, which: str) -> ClosureIdentity:
    try:
        return load_identities()[(k, which)]
    except KeyError:
        known = ", ".join(i for kk, i in identity_ids(k)) or "none"
        raise UnknownIdentity(f"no identity {which!r} for k = {k} (known: {known})") from None


def verify_closure_identity(k: int, which: str) -> bool:
    """Expand both sides over Z and compare them modulo k (accepted reading)."""
    return get_identity(k, which).holds()


@dataclass
class IdentityResult:
    k: int
    id: str
    verdicts: dict[str, bool]
    accepted: str
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdicts[self.accepted]


def check_identity(k: int, which: str) -> IdentityResult:
    ident = get_identity(k, which)
    verdicts = {label: ident.holds(label) for label, _ in ident.readings}
    return IdentityResult(k, which, verdicts, ident.accepted, ident.note)


def check_all_identities(k: int | None = None) -> list[IdentityResult]:
    return [check_identity(kk, i) for kk, i in identity_ids(k)]


# proof chains

@dataclass(frozen=True)
class Stage:
    name: str
    generators: tuple[str, ...]  # polynomials in x, or "+NAME" includes
    note: str = ""


@dataclass(frozen=True)
class ProofChainEntry:
    family: str
    k: int
    id: str
    variables: tuple[str, ...]
    readings: tuple[tuple[str, str], ...]
    recipes: tuple[tuple[str, str], ...] = ()
    # None: recipe equals the polynomial over Z; otherwise stage/entry names
    modulo: tuple[str, ...] | None = None
    note: str = ""

    @property
    def family_id(self) -> str:
        return f"{self.family}.{self.id}"

    @property
    def accepted(self) -> str:
        return _accepted(self.readings)

    def reading(self, label: str | None = None) -> MultiPoly:
        return parse_table_poly(dict(self.readings)[label or self.accepted])

    @property
    def polynomial(self) -> MultiPoly:
        return self.reading()

    def recipe(self, label: str | None = None) -> str | None:
        if not self.recipes:
            return None
        table = dict(self.recipes)
        return table.get(label or _accepted(self.recipes), table[STATED])


@dataclass
class ChainFamily:
    name: str
    k: int
    entries: dict[str, ProofChainEntry] = field(default_factory=dict)
    stages: dict[str, Stage] = field(default_factory=dict)

    def entry(self, ident: str) -> ProofChainEntry:
        try:
            return self.entries[ident]
        except KeyError:
            raise UnknownEntry(f"{self.name} has no entry {ident!r}") from None

    def derive(self, entry: ProofChainEntry, recipe_label: str | None = None,
               overrides: dict[str, str] | None = None) -> MultiPoly | None:
        """Expand the recipe of ``entry`` over Z.

        Calls to earlier entries use their accepted reading unless
        ``overrides`` maps the entry id to another reading label.
        """
        text = entry.recipe(recipe_label)
        if text is None:
            return None
        overrides = overrides or {}
        trace = TracePolynomial.of(self.k).as_poly("t", "d")
        names = {v: MultiPoly.var(v) for v in entry.variables}

        def call(name, args):
            args = [a if isinstance(a, MultiPoly) else MultiPoly.const(a) for a in args]
            if name == "tr":
                target, params = trace, ("t", "d")
            else:
                if name not in self.entries or name == entry.id:
                    raise TableError(f"{entry.family_id}: recipe calls unknown entry {name!r}")
                other = self.entries[name]
                target, params = other.reading(overrides.get(name)), other.variables
            if len(args) != len(params):
                raise TableError(f"{entry.family_id}: {name} takes {len(params)} arguments")
            return target.substitute(dict(zip(params, args)))

        value = evaluate_expression(text, names, call)
        return value if isinstance(value, MultiPoly) else MultiPoly.const(value)

    def depends_on(self, entry: ProofChainEntry, target: str) -> bool:
        seen, todo = set(), [entry.id]
        while todo:
            cur = self.entries[todo.pop()]
            for _, text in cur.recipes:
                for name in re.findall(r"([A-Za-z_]\w*)\s*\(", text):
                    if name == target:
                        return True
                    if name in self.entries and name not in seen:
                        seen.add(name)
                        todo.append(name)
        return False

    def stage_generators(self, names: Sequence[str]) -> list[tuple[str, MultiPoly]]:
        """Polynomials in one variable generating the named groups."""
        out: list[tuple[str, MultiPoly]] = []
        seen: set[str] = set()

        def walk(name):
            if name in seen:
                return
            seen.add(name)
            if name in self.stages:
                for g in self.stages[name].generators:
                    if g.startswith("+"):
                        walk(g[1:].strip())
                    else:
                        out.append((f"{name}:{g}", parse_table_poly(g)))
            elif name in self.entries:
                e = self.entries[name]
                if len(e.variables) != 1:
                    raise TableError(f"{name} cannot be used as a generator")
                out.append((name, e.polynomial.substitute({e.variables[0]: MultiPoly.var("x")})))
            else:
                raise TableError(f"{self.name}: unknown stage or entry {name!r}")

        for n in names:
            walk(n)
        return out


@lru_cache(maxsize=None)
def load_chains() -> dict[str, ChainFamily]:
    families: dict[str, ChainFamily] = {}
    cur: ChainFamily | None = None
    for n, line in _rows(_data("chains.txt")):
        if line.startswith("family "):
            _, name, k = line.split()
            cur = families[name] = ChainFamily(name, int(k))
            continue
        cols = [c.strip() for c in _COLUMN.split(line)]
        if cur is None:
            raise TableError(f"chains.txt:{n}: row before any family line")
        kind = cols[0]
        if kind == "stage":
            gens = tuple(g.strip() for g in cols[2].split(";") if g.strip())
            cur.stages[cols[1]] = Stage(cols[1], gens, cols[3] if len(cols) > 3 else "")
        elif kind == "entry":
            if len(cols) < 6:
                raise TableError(f"chains.txt:{n}: expected 'entry | id | vars | poly | recipe | stage | note'")
            ident, variables, poly, recipe, modulo = cols[1:6]
            note = cols[6] if len(cols) > 6 else ""
            if ident in cur.entries:
                raise TableError(f"chains.txt:{n}: duplicate entry {ident}")
            mod = None if modulo in ("", "=") else tuple(m.strip() for m in modulo.split(","))
            cur.entries[ident] = ProofChainEntry(
                cur.name, cur.k, ident, tuple(v.strip() for v in variables.split(",")),
                tuple(_readings(poly)), tuple(_readings(recipe)) if recipe else (), mod, note)
        else:
            raise TableError(f"chains.txt:{n}: unknown row kind {kind!r}")
    return families


def family_for_k(k: int) -> ChainFamily:
    fam = load_chains().get(f"deg{k}")
    if fam is None:
        raise UnknownEntry(f"no proof chain for k = {k}")
    return fam


def lookup(target: str) -> tuple[ChainFamily, list[ProofChainEntry]]:
    """``"deg11"`` -> all entries; ``"deg11.p_3"`` -> that entry."""
    fam_name, _, ident = target.partition(".")
    fams = load_chains()
    if fam_name not in fams:
        raise UnknownEntry(f"unknown chain family {fam_name!r}; known: {', '.join(fams)}")
    fam = fams[fam_name]
    return fam, ([fam.entry(ident)] if ident else list(fam.entries.values()))


# semantic checks

@dataclass
class EntryCheck:
    entry: str
    ring: str
    reading: str
    member: bool
    counterexample: list[str] | None = None
    # "exact", "ok" (difference inside S^k), "fail", or "none" (no recipe)
    derivation: str = "none"
    derivation_witness: list[str] | None = None
    # difference inside the group generated by the declared stage; None if not applicable
    within_stage: bool | None = None

    @property
    def ok(self) -> bool:
        return self.member and self.derivation != "fail"


@dataclass
class CertificationReport:
    target: str
    k: int
    rings: list[str]
    checks: list[EntryCheck] = field(default_factory=list)
    # stated readings that are replaced by a fix, with what went wrong
    errata: list[dict[str, Any]] = field(default_factory=list)
    # entry -> reading -> does every derivation depending on it stay inside its stage
    ambiguous: dict[str, dict[str, bool]] = field(default_factory=dict)
    budget_used: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[EntryCheck]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def format(self) -> str:
        lines = [f"chain {self.target} (k = {self.k}) on {len(self.rings)} ring(s): "
                 f"{'PASS' if self.ok else 'FAIL'}"]
        by_entry: dict[str, list[EntryCheck]] = {}
        for c in self.checks:
            by_entry.setdefault(c.entry, []).append(c)
        for entry, cs in by_entry.items():
            bad = [c for c in cs if not c.ok]
            mark = "pass" if not bad else "FAIL"
            line = f"  {mark}  {entry} [{cs[0].reading}]"
            for c in bad:
                why = "not in S^k" if not c.member else "derivation"
                wit = c.counterexample if not c.member else c.derivation_witness
                line += f"  {c.ring}: {why} at {wit}"
            lines.append(line)
        for name, verdicts in self.ambiguous.items():
            lines.append(f"  reading check {name}: " + ", ".join(
                f"{label} {'supported' if v else 'not supported'}" for label, v in verdicts.items()))
        for e in self.errata:
            lines.append(f"  stated reading of {e['entry']} replaced: {e['problem']}")
        return "\n".join(lines)


class _RingContext:
    def __init__(self, ring: Ring, k: int, budget: Budget):
        self.ring = ring
        self.k = k
        self.budget = budget
        self.sk = compute_trace_subgroup(ring, k, 2, budget=budget)
        self.groups: dict[tuple[str, ...], frozenset[int]] = {}

    def values(self, poly: MultiPoly, variables: Sequence[str]):
        """Yield (args, value) over all assignments of ring elements."""
        els = self.ring.elements()
        f = poly.compile_for(self.ring, tuple(variables))
        self.budget.spend(len(els) ** len(variables), "chain evaluation")
        for args in product(els, repeat=len(variables)):
            yield args, f(*args)

    def first_outside(self, poly: MultiPoly, variables: Sequence[str], group) -> list[str] | None:
        for args, v in self.values(poly, variables):
            if v not in group:
                return [self.ring.format(a) for a in args]
        return None

    def group(self, fam: ChainFamily, names: tuple[str, ...]) -> frozenset[int]:
        if names not in self.groups:
            seeds = []
            for _, g in fam.stage_generators(names):
                seeds.extend(v for _, v in self.values(g, ("x",)))
            self.groups[names] = additive_closure(self.ring, seeds, self.budget)
        return self.groups[names]


def _check(fam: ChainFamily, entry: ProofChainEntry, ctx: _RingContext, reading: str,
           recipe_label: str | None, overrides: dict[str, str]) -> EntryCheck:
    poly = entry.reading(reading)
    bad = ctx.first_outside(poly, entry.variables, ctx.sk)
    check = EntryCheck(entry.family_id, ctx.ring.spec, reading, bad is None, bad)
    derived = fam.derive(entry, recipe_label, overrides)
    if derived is None:
        return check
    diff = derived - poly
    if entry.modulo is None:
        check.derivation = "exact" if diff.is_zero() else "fail"
        check.within_stage = diff.is_zero()
        if not diff.is_zero():
            check.derivation_witness = [diff.format()]
        return check
    wit = ctx.first_outside(diff, entry.variables, ctx.sk)
    check.derivation = "ok" if wit is None else "fail"
    check.derivation_witness = wit
    check.within_stage = ctx.first_outside(diff, entry.variables, ctx.group(fam, entry.modulo)) is None
    return check


def _stage_checks(fam: ChainFamily, ctx: _RingContext) -> list[EntryCheck]:
    out = []
    for name, stage in fam.stages.items():
        for g in stage.generators:
            if g.startswith("+"):
                continue
            bad = ctx.first_outside(parse_table_poly(g), ("x",), ctx.sk)
            out.append(EntryCheck(f"{fam.name}.{name}[{g}]", ctx.ring.spec, STATED, bad is None, bad))
    return out


def verify_chain_semantically(target: str, rings: Sequence[Ring],
                              budget: Budget | None = None) -> CertificationReport:
    """Check entries of a chain family (``"deg9"``) or one entry (``"deg9.P_3"``).

    For every ring: the accepted reading of each entry takes values in S^k
    (n = 2) at every argument, and the recipe differs from it by values in
    S^k.  Stated readings that were replaced by a fix are checked as well and
    listed under ``errata`` when they fail.  For entries with an ``alt``
    reading, every derivation that depends on the entry is re-run under each
    reading and the report says which readings keep all of them inside their
    declared stage.
    """
    budget = ensure(budget)
    start = budget.used
    fam, entries = lookup(target)
    whole = "." not in target
    report = CertificationReport(target, fam.k, [r.spec for r in rings])
    ambiguous = [e for e in fam.entries.values() if any(lbl == "alt" for lbl, _ in e.readings)]
    for ring in rings:
        ctx = _RingContext(ring, fam.k, budget)
        if whole:
            report.checks.extend(_stage_checks(fam, ctx))
        for entry in entries:
            report.checks.append(_check(fam, entry, ctx, entry.accepted, None, {}))
            if entry.accepted != STATED or _accepted(entry.recipes) != STATED:
                stated = _check(fam, entry, ctx, STATED, STATED, {})
                problem = _problem(stated)
                if problem:
                    report.errata.append({"entry": entry.family_id, "ring": ring.spec, "problem": problem})
        for amb in ambiguous:
            verdicts = report.ambiguous.setdefault(amb.family_id, {})
            dependents = [amb] + [e for e in fam.entries.values() if fam.depends_on(e, amb.id)]
            if not whole and not any(e in entries for e in dependents):
                continue
            for label, _ in amb.readings:
                fine = all(
                    (c := _check(fam, e, ctx, label if e is amb else e.accepted, None, {amb.id: label})).ok
                    and c.within_stage is not False
                    for e in dependents)
                verdicts[label] = verdicts.get(label, True) and fine
    report.budget_used = budget.used - start
    return report


def _problem(check: EntryCheck) -> str | None:
    if not check.member:
        return f"value outside S^k at {check.counterexample}"
    if check.derivation == "fail":
        return f"recipe does not reproduce the polynomial ({check.derivation_witness})"
    if check.within_stage is False:
        return "recipe differs from the polynomial by more than the declared group"
    return None


def symbolic_errata() -> list[str]:
    """Entries whose stated reading or recipe fails an exact (ring-free) check."""
    out = []
    for fam in load_chains().values():
        for e in fam.entries.values():
            if e.accepted == STATED and _accepted(e.recipes) == STATED:
                continue
            if e.modulo is None:
                derived = fam.derive(e, STATED)
                if derived is not None and derived != e.reading(STATED):
                    out.append(e.family_id)
    return out


# exploratory

REMARK_POLYS = {
    12: ("12t^10d+6t^8d^2+12t^2d^5", "K2", ("g_0", "h_2", "h_3", "h_4", "h_5")),
    16: ("16t^14d+8t^12d^2+4t^8d^4", "U", ("g", "q", "h_2", "h_3", "h_4")),
}


@dataclass
class RemarkReport:
    k: int
    g1: str
    g2: str
    per_ring: dict[str, bool]
    note: str = "exploratory: no correctness claim"

    def format(self) -> str:
        lines = [f"remark check k = {self.k}: F(g1, g2) with g1 = {self.g1}, g2 = {self.g2}  ({self.note})"]
        for ring, inside in self.per_ring.items():
            lines.append(f"  {ring}: {'inside' if inside else 'outside'} the group of the named families")
        return "\n".join(lines)


def explore_remark(k: int, candidate_g1: MultiPoly | str, candidate_g2: MultiPoly | str,
                   rings: Sequence[Ring], budget: Budget | None = None) -> RemarkReport:
    """Is ``F(g1(x), g2(x))`` in the group generated by the stage and the named families?"""
    if k not in REMARK_POLYS:
        raise ValueError("remark exploration exists for k = 12 and k = 16")
    budget = ensure(budget)
    g1 = parse_table_poly(candidate_g1) if isinstance(candidate_g1, str) else candidate_g1
    g2 = parse_table_poly(candidate_g2) if isinstance(candidate_g2, str) else candidate_g2
    text, stage, named = REMARK_POLYS[k]
    fam = family_for_k(k)
    composed = parse_table_poly(text).substitute({"t": g1, "d": g2})
    extra = set(composed.variables) - {"x"}
    if extra:
        raise ValueError(f"candidates must be polynomials in x, got {sorted(extra)}")
    per_ring = {}
    for ring in rings:
        ctx = _RingContext(ring, k, budget)
        group = ctx.group(fam, (stage,) + named)
        per_ring[ring.spec] = ctx.first_outside(composed, ("x",), group) is None
    return RemarkReport(k, g1.format(), g2.format(), per_ring)

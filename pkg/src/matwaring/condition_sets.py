"""Trace-condition sets.

Every set here is a sumset: a list of one-variable columns ``c * x^e`` plus,
for two of the sets, one "sweep" column ``c * x^(2m+1) + (terms in the same
x)`` with ``m >= 1``.  Sets defined modulo ``kR`` are computed in ``R/kR``.

Kinds (the strings accepted by :func:`build_condition_set`)::

    deg9        a0^9 + 3 a1^3                         mod 9R
    s10         x0^10 - 2 x1^5 + 5 x2^2               mod 10R
    s12         x0^12 + 2 x1^6 - 3 x2^4 - 4 x3^3 + 6 x4^2   mod 12R
    s14         x0^14 - 2 x1^7 + 7 x2^2               mod 14R
    s15         x0^15 - 3 x1^5 + 5 x2^3               mod 15R
    s12bar      x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 12x4^2 + 24x5
    s12prime    x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 4x^(2m+1) + 6x^2 + 12x
    s12star     s12bar | s12prime
    s12prime1   s12prime with m = 1 only; s12star1 = s12bar | s12prime1
    witt:P:S    a0^(P^S) + P a1^(P^(S-1)) + ... + P^S aS
    wittbar24   a0^16 + 2 a1^8 + 4a^4 + 16a + 16a^(2m+1)
    wittstar24  wittbar24 | witt:2:5
    pth:P       a^P                                   mod PR
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .budget import Budget, ensure
from .rings import Ring, RingElement, OwnerMismatch


class UnknownKind(ValueError):
    pass


class HypothesisFailed(ValueError):
    """The ring does not satisfy a precondition of the requested expansion."""


@dataclass(frozen=True)
class Shape:
    label: str
    modulus: int | None
    powers: tuple[tuple[int, int], ...]
    # (coefficient of x^(2m+1), further (coefficient, exponent) terms in x)
    sweep: tuple[int, tuple[tuple[int, int], ...]] | None = None
    formula: str = ""
    sweep_max: int | None = None  # largest m tried; None sweeps to periodicity

    @property
    def arity(self) -> int:
        return len(self.powers) + (2 if self.sweep else 0)


_S12_HEAD = ((1, 12), (2, 6), (3, 4), (8, 3))

_FIXED: dict[str, Shape] = {
    "deg9": Shape("deg9", 9, ((1, 9), (3, 3)), formula="a0^9 + 3a1^3 mod 9R"),
    "s10": Shape("s10", 10, ((1, 10), (-2, 5), (5, 2)), formula="x0^10 - 2x1^5 + 5x2^2 mod 10R"),
    "s12": Shape("s12", 12, ((1, 12), (2, 6), (-3, 4), (-4, 3), (6, 2)),
                 formula="x0^12 + 2x1^6 - 3x2^4 - 4x3^3 + 6x4^2 mod 12R"),
    "s14": Shape("s14", 14, ((1, 14), (-2, 7), (7, 2)), formula="x0^14 - 2x1^7 + 7x2^2 mod 14R"),
    "s15": Shape("s15", 15, ((1, 15), (-3, 5), (5, 3)), formula="x0^15 - 3x1^5 + 5x2^3 mod 15R"),
    "s12bar": Shape("s12bar", None, _S12_HEAD + ((12, 2), (24, 1)),
                    formula="x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 12x4^2 + 24x5"),
    "s12prime": Shape("s12prime", None, _S12_HEAD, sweep=(4, ((6, 2), (12, 1))),
                      formula="x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 4x^(2m+1) + 6x^2 + 12x, m >= 1"),
    "s12prime1": Shape("s12prime1", None, _S12_HEAD, sweep=(4, ((6, 2), (12, 1))),
                       formula="x0^12 + 2x1^6 + 3x2^4 + 8x3^3 + 4x^3 + 6x^2 + 12x", sweep_max=1),
    "wittbar24": Shape("wittbar24", None, ((1, 16), (2, 8)), sweep=(16, ((4, 4), (16, 1))),
                       formula="a0^16 + 2a1^8 + 4a^4 + 16a + 16a^(2m+1), m >= 1"),
}

UNIONS = {
    "s12star": ("s12bar", "s12prime"),
    "s12star1": ("s12bar", "s12prime1"),
    "wittstar24": ("wittbar24", "witt:2:5"),
}

KINDS = ("deg9", "s10", "s12", "s14", "s15", "s12bar", "s12prime", "s12star", "s12prime1", "s12star1",
         "wittbar24", "wittstar24", "witt:P:S", "pth:P")

_WITT_RE = re.compile(r"^witt:(\d+):(\d+)$")
_PTH_RE = re.compile(r"^pth:(\d+)$")


def shape_for(kind: str) -> Shape:
    if kind in _FIXED:
        return _FIXED[kind]
    if m := _WITT_RE.match(kind):
        p, s = int(m.group(1)), int(m.group(2))
        if p < 2 or s < 1:
            raise UnknownKind(f"bad Witt parameters in {kind!r}")
        powers = tuple((p ** i, p ** (s - i)) for i in range(s + 1))
        return Shape(kind, None, powers, formula=f"sum_i {p}^i a_i^({p}^({s}-i)), i = 0..{s}")
    if m := _PTH_RE.match(kind):
        p = int(m.group(1))
        if p < 2:
            raise UnknownKind(f"bad prime in {kind!r}")
        return Shape(kind, p, ((1, p),), formula=f"a^{p} mod {p}R")
    raise UnknownKind(f"unknown condition set {kind!r}; known: {', '.join(KINDS)}")


def normalize_kind(kind) -> str:
    if isinstance(kind, tuple):
        if kind[0] == "witt":
            return f"witt:{kind[1]}:{kind[2]}"
        if kind[0] == "pth":
            return f"pth:{kind[1]}"
    return str(kind).strip().lower()


@dataclass(frozen=True)
class ConditionSet:
    kind: str
    ring: Ring
    ambient: Ring
    proj: Callable[[int], int] = field(repr=False, compare=False)
    elements: frozenset[int]
    # member payload -> (branch label, witness tuple); sweep witnesses end in (x, m)
    witnesses: dict[int, tuple[str, tuple[int, ...]]] = field(repr=False, compare=False)
    formula: str = ""

    def __contains__(self, v: int) -> bool:
        return v in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def is_everything(self) -> bool:
        return len(self.elements) == self.ambient.cardinality

    def format_members(self) -> list[str]:
        return [self.ambient.format(v) for v in sorted(self.elements)]


def _power_column(ring: Ring, coef: int, exp: int) -> dict[int, int]:
    col: dict[int, int] = {}
    for x in ring.elements():
        col.setdefault(ring.scale(ring.pow(x, exp), coef), x)
    return col


def _sweep_column(ring: Ring, coef: int, extra, budget: Budget,
                  m_max: int | None = None) -> dict[int, tuple[int, int]]:
    """Values of ``coef x^(2m+1) + extra(x)`` over x and every m >= 1."""
    col: dict[int, tuple[int, int]] = {}
    for x in ring.elements():
        base = ring.zero
        for c, e in extra:
            base = ring.add(base, ring.scale(ring.pow(x, e), c))
        sq = ring.mul(x, x)
        seen = set()
        sqm, m = sq, 1
        # (x^2)^m is eventually periodic, so this stops within |R| steps
        while sqm not in seen and (m_max is None or m <= m_max):
            seen.add(sqm)
            budget.spend(1, "sweep column")
            v = ring.add(base, ring.scale(ring.mul(x, sqm), coef))
            col.setdefault(v, (x, m))
            sqm, m = ring.mul(sqm, sq), m + 1
    return col


def _rank(w: tuple) -> tuple:
    return (sum(1 for x in w if x), w)


def _sumset(ring: Ring, columns, budget: Budget) -> dict[int, tuple]:
    """Every sum, with a witness using the fewest nonzero entries (ties: smallest tuple)."""
    cur: dict[int, tuple] = {ring.zero: ()}
    for col in columns:
        budget.spend(len(cur) * len(col), "sumset")
        nxt: dict[int, tuple] = {}
        add = ring.add
        for s, w in cur.items():
            for v, piece in col.items():
                key = add(s, v)
                cand = w + (piece if isinstance(piece, tuple) else (piece,))
                old = nxt.get(key)
                if old is None or _rank(cand) < _rank(old):
                    nxt[key] = cand
        cur = nxt
    return cur


def _ambient(ring: Ring, modulus: int | None):
    if modulus is None:
        return ring, (lambda a: a)
    return ring.quotient(modulus)


def _build_shape(shape: Shape, ring: Ring, budget: Budget):
    amb, proj = _ambient(ring, shape.modulus)
    cols = [_power_column(amb, c, e) for c, e in shape.powers]
    if shape.sweep:
        cols.append(_sweep_column(amb, shape.sweep[0], shape.sweep[1], budget, shape.sweep_max))
    sums = _sumset(amb, cols, budget)
    return amb, proj, {v: (shape.label, w) for v, w in sums.items()}


_CACHE: dict[tuple[str, Ring], ConditionSet] = {}


def build_condition_set(kind, ring: Ring, budget: Budget | None = None) -> ConditionSet:
    """The full member set of ``kind`` over ``ring``, with one witness per member."""
    kind = normalize_kind(kind)
    key = (kind, ring)
    if key in _CACHE:
        return _CACHE[key]
    budget = ensure(budget)
    if kind in UNIONS:
        parts = [build_condition_set(k, ring, budget) for k in UNIONS[kind]]
        wit: dict[int, tuple] = {}
        for part in parts:
            for v, w in part.witnesses.items():
                wit.setdefault(v, w)
        formula = " | ".join(f"({p.formula})" for p in parts)
        cs = ConditionSet(kind, ring, ring, lambda a: a, frozenset(wit), wit, formula)
    else:
        shape = shape_for(kind)
        amb, proj, wit = _build_shape(shape, ring, budget)
        cs = ConditionSet(kind, ring, amb, proj, frozenset(wit), wit, shape.formula)
    _CACHE[key] = cs
    return cs


def evaluate_witness(cs: ConditionSet, witness: tuple[str, tuple[int, ...]]) -> int:
    """Recompute a member from its witness, from scratch."""
    label, xs = witness
    shape = shape_for(label)
    amb = cs.ambient
    if shape.modulus is not None and amb == cs.ring and cs.kind in UNIONS:
        raise ValueError("union branches are never quotiented")
    np = len(shape.powers)
    acc = amb.zero
    for (c, e), x in zip(shape.powers, xs[:np]):
        acc = amb.add(acc, amb.scale(amb.pow(x, e), c))
    if shape.sweep:
        x, m = xs[np], xs[np + 1]
        if m < 1:
            raise ValueError("sweep exponent must be at least 1")
        acc = amb.add(acc, amb.scale(amb.pow(x, 2 * m + 1), shape.sweep[0]))
        for c, e in shape.sweep[1]:
            acc = amb.add(acc, amb.scale(amb.pow(x, e), c))
    return acc


def is_member(cs: ConditionSet, v: RingElement):
    """``(verdict, witness)``; ``v`` may live in the ambient ring or in ``R``."""
    if v.ring == cs.ambient:
        payload = v.value
    elif v.ring == cs.ring:
        payload = cs.proj(v.value)
    else:
        raise OwnerMismatch(f"{v.ring} is neither {cs.ring} nor {cs.ambient}")
    w = cs.witnesses.get(payload)
    return w is not None, w


@dataclass(frozen=True)
class ClosureResult:
    closed: bool
    reason: str = ""
    violation: tuple[int, ...] | None = None


def verify_group_closure(cs: ConditionSet) -> ClosureResult:
    """0 in the set, negation and pairwise sums stay inside."""
    amb, els = cs.ambient, cs.elements
    if amb.zero not in els:
        return ClosureResult(False, "zero missing")
    for a in els:
        if amb.neg(a) not in els:
            return ClosureResult(False, "negation escapes", (a,))
    ordered = sorted(els)
    add = amb.add
    for i, a in enumerate(ordered):
        for b in ordered[i:]:
            if add(a, b) not in els:
                return ClosureResult(False, "sum escapes", (a, b))
    return ClosureResult(True)


@dataclass(frozen=True)
class PowerCheck:
    holds: bool
    counterexample: int | None  # payload in R


def pth_power_mod_p(ring: Ring, p: int, budget: Budget | None = None) -> PowerCheck:
    """Is every element of ``R`` congruent to a ``p``-th power modulo ``pR``?"""
    cs = build_condition_set(f"pth:{p}", ring, budget)
    for a in ring.elements():
        if cs.proj(a) not in cs.elements:
            return PowerCheck(False, a)
    return PowerCheck(True, None)


def _root_mod_p(ring: Ring, alpha: int, p: int, pmap: dict[int, int]):
    """``(a, b)`` with ``alpha = a^p + p b``, or None."""
    for a in ring.elements():
        diff = ring.sub(alpha, ring.pow(a, p))
        if diff in pmap:
            return a, pmap[diff]
    return None


def _lift(ring: Ring, alpha: int, p: int, levels: int, pmap):
    """``(a, b)`` with ``alpha = a^(p^levels) + p b``.

    From ``alpha = a^P + p b`` and ``a = c^p + p d`` one gets
    ``alpha = c^(pP) + p (b + sum_i C(P,i) p^(i-1) c^(p(P-i)) d^i)``.
    """
    first = _root_mod_p(ring, alpha, p, pmap)
    if first is None:
        return None
    a, b = first
    P = p
    for _ in range(levels - 1):
        step = _root_mod_p(ring, a, p, pmap)
        if step is None:
            return None
        c, d = step
        cp = ring.pow(c, p)
        extra = ring.zero
        for i in range(1, P + 1):
            term = ring.mul(ring.pow(cp, P - i), ring.pow(d, i))
            extra = ring.add(extra, ring.scale(term, comb(P, i) * p ** (i - 1)))
        a, b, P = c, ring.add(b, extra), P * p
    return a, b


def iterated_p_power_expansion(alpha: RingElement, p: int, k_power: int, depth: int) -> list[RingElement]:
    """``[a_1, ..., a_m, rest]`` with ``alpha = sum_i p^(i-1) a_i^K + p^m rest``.

    ``K = k_power`` must be a power of ``p``.  Each level takes a ``p``-th
    root modulo ``pR`` by sweeping the ring and lifts it to a ``K``-th power.
    """
    ring = alpha.ring
    levels, K = 0, 1
    while K < k_power:
        K *= p
        levels += 1
    if K != k_power or levels == 0:
        raise ValueError(f"{k_power} is not a positive power of {p}")
    if depth < 1:
        raise ValueError("depth must be at least 1")
    check = pth_power_mod_p(ring, p)
    if not check.holds:
        raise HypothesisFailed(
            f"{ring.format(check.counterexample)} is not a {p}-th power modulo {p}R in {ring}")
    pmap: dict[int, int] = {}
    for b in ring.elements():
        pmap.setdefault(ring.scale(b, p), b)
    out = []
    cur = alpha.value
    for _ in range(depth):
        step = _lift(ring, cur, p, levels, pmap)
        if step is None:  # cannot happen once the hypothesis holds
            raise HypothesisFailed(f"no {p}-th root of {ring.format(cur)} modulo {p}R")
        a, cur = step
        out.append(a)
    total = ring.scale(cur, p ** depth)
    for i, a in enumerate(out):
        total = ring.add(total, ring.scale(ring.pow(a, K), p ** i))
    assert total == alpha.value, "expansion failed to re-evaluate"
    return [RingElement(ring, a) for a in out] + [RingElement(ring, cur)]

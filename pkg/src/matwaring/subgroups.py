"""Trace subgroups and the sum-of-powers decision.

``S^k_n(R)`` is the additive subgroup generated by ``tr(N^k)`` for
``N in M_n(R)``.  A matrix is a sum of ``k``-th powers exactly when its trace
lies in that subgroup, so deciding reduces to one set lookup.

Seeds:

* ``n = 1``: every ``a^k``.
* ``n = 2``: ``tr(A(t, d)^k)`` over all pairs; every 2x2 matrix shares its
  power traces with the companion of its characteristic polynomial.
* ``n = 3``: power traces of every 3x3 companion matrix, from Newton's
  identities (same argument as for ``n = 2``).
* ``n > 3``: the ``n = 2`` and ``n = 3`` seeds embedded by direct sum.  A NO
  at this size only means "not reached by generators of size at most 3".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import factorial

from .budget import Budget, ensure
from .matrices import Matrix, all_matrices, mat_pow
from .rings import Ring
from .trace_power import power_traces, two_by_two_traces


class OutsideBounds(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupSet:
    ambient: Ring
    k: int
    n_source: int
    elements: frozenset[int]
    # seed value -> provenance: (t, d) at n = 2, companion coefficients at n = 3
    generators: dict[int, tuple[int, ...]] = field(repr=False, compare=False)

    def __contains__(self, v: int) -> bool:
        return v in self.elements

    def __len__(self) -> int:
        return len(self.elements)

    def is_everything(self) -> bool:
        return len(self.elements) == self.ambient.cardinality

    def format_members(self) -> list[str]:
        return [self.ambient.format(v) for v in sorted(self.elements)]


def additive_closure(ring: Ring, seeds, budget: Budget | None = None) -> frozenset[int]:
    """Smallest additive subgroup containing ``seeds`` (worklist fixpoint).

    In a finite group the submonoid generated by a set is already a
    subgroup, so repeated addition of generators suffices.
    """
    budget = ensure(budget)
    gens = [g for g in dict.fromkeys(seeds) if g != ring.zero]
    seen = {ring.zero}
    frontier = [ring.zero]
    add = ring.add
    while frontier:
        budget.spend(len(frontier) * max(1, len(gens)), "subgroup closure")
        nxt = []
        for a in frontier:
            for g in gens:
                b = add(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def _seeds(ring: Ring, k: int, n: int, budget: Budget) -> dict[int, tuple[int, ...]]:
    N = ring.cardinality
    seeds: dict[int, tuple[int, ...]] = {}
    if n == 1:
        budget.spend(N, "seed enumeration")
        for a in ring.elements():
            seeds.setdefault(ring.pow(a, k), (a,))
    elif n == 2:
        budget.spend(N * N * k, "seed enumeration")
        for td, v in two_by_two_traces(ring, k).items():
            seeds.setdefault(v, td)
    elif n == 3:
        budget.afford(N ** 3 * k, "seed enumeration")
        budget.spend(N ** 3 * k, "seed enumeration")
        els = ring.elements()
        for c in product(els, repeat=3):
            seeds.setdefault(power_traces(ring, c, k)[-1], c)
    else:
        for m in (2, 3):
            for v, prov in _seeds(ring, k, m, budget).items():
                seeds.setdefault(v, prov)
    return seeds


_CACHE: dict[tuple[Ring, int, int], SubgroupSet] = {}


def compute_trace_subgroup(ring: Ring, k: int, n: int = 2, use_quotient: bool = False,
                           budget: Budget | None = None) -> SubgroupSet:
    """``S^k_n`` of ``ring``, or of ``ring / k! ring`` when ``use_quotient``."""
    if k < 1:
        raise ValueError("k must be positive")
    if n < 1:
        raise ValueError("matrix size must be positive")
    if use_quotient:
        ring = ring.quotient(factorial(k))[0]
    key = (ring, k, n)
    if key in _CACHE:
        return _CACHE[key]
    budget = ensure(budget)
    seeds = _seeds(ring, k, n, budget)
    sg = SubgroupSet(ring, k, n, additive_closure(ring, seeds, budget), seeds)
    _CACHE[key] = sg
    return sg


@dataclass(frozen=True)
class Decision:
    verdict: str  # "YES" or "NO"
    trace: int
    k: int
    n: int
    caveat: str = ""

    @property
    def yes(self) -> bool:
        return self.verdict == "YES"

    def describe(self, ring: Ring) -> str:
        text = f"{self.verdict}: trace {ring.format(self.trace)}"
        return text + (f" ({self.caveat})" if self.caveat else "")


def decide_sum_of_kth_powers(M: Matrix, k: int, budget: Budget | None = None) -> Decision:
    """YES iff ``tr(M)`` lies in the trace subgroup for matrices of M's size."""
    n = M.n
    tr = M.trace()
    sg = compute_trace_subgroup(M.ring, k, n, budget=budget)
    if tr in sg:
        return Decision("YES", tr, k, n)
    caveat = "NO at generator dimension <= 3" if n > 3 else ""
    return Decision("NO", tr, k, n, caveat)


@dataclass(frozen=True)
class BruteForceResult:
    status: str  # "FOUND" or "INCONCLUSIVE"
    terms: tuple[Matrix, ...] | None

    @property
    def found(self) -> bool:
        return self.status == "FOUND"


_POWER_TABLES: dict[tuple[Ring, int], dict[tuple[int, ...], tuple[int, ...]]] = {}


def _flat(M: Matrix) -> tuple[int, ...]:
    return tuple(v for row in M.rows for v in row)


def _unflat(ring: Ring, flat) -> Matrix:
    return Matrix(ring, (tuple(flat[:2]), tuple(flat[2:])))


def kth_power_table(ring: Ring, k: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Every distinct ``N^k`` for 2x2 ``N``, mapped to the first such ``N``."""
    key = (ring, k)
    if key not in _POWER_TABLES:
        table: dict[tuple[int, ...], tuple[int, ...]] = {}
        for N in all_matrices(ring, 2):
            table.setdefault(_flat(mat_pow(N, k)), _flat(N))
        _POWER_TABLES[key] = table
    return _POWER_TABLES[key]


def brute_force_witness(M: Matrix, k: int, max_terms: int = 3,
                        budget: Budget | None = None) -> BruteForceResult:
    """Search ``M = N_1^k + ... + N_r^k`` with ``r <= max_terms``.

    A miss is INCONCLUSIVE: more summands might still work.
    """
    ring = M.ring
    small = ring.cardinality <= 5 or (ring.cardinality <= 9 and max_terms <= 2)
    if not small or M.n != 2 or not 1 <= max_terms <= 3:
        raise OutsideBounds("brute force needs 2x2 matrices, 1..3 terms and |R| <= 5 (|R| <= 9 for 2 terms)")
    budget = ensure(budget)
    table = kth_power_table(ring, k)
    powers = list(table)
    target = _flat(M)
    sub = ring.sub

    def minus(a, b):
        return tuple(map(sub, a, b))

    def done(*flats):
        return BruteForceResult("FOUND", tuple(_unflat(ring, table[f]) for f in flats))

    if target in table:
        return done(target)
    if max_terms >= 2:
        budget.spend(len(powers), "brute force")
        for P in powers:
            rest = minus(target, P)
            if rest in table:
                return done(P, rest)
    if max_terms >= 3:
        budget.afford(len(powers) ** 2, "brute force")
        for i, P in enumerate(powers):
            rest1 = minus(target, P)
            budget.spend(len(powers) - i, "brute force")
            for Q in powers[i:]:
                rest = minus(rest1, Q)
                if rest in table:
                    return done(P, Q, rest)
    return BruteForceResult("INCONCLUSIVE", None)

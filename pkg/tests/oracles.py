"""Library-free reference computations used as independent oracles.

Nothing here imports the package under test.  Elements of Z/m[x]/(f) are
coefficient tuples, products of rings are tuples of components.
"""

from __future__ import annotations

from itertools import permutations, product
from math import prod


class TupleRing:
    """Z/m[x]/(f) for a monic f, written lowest coefficient first (f without its leading 1)."""

    def __init__(self, m: int, tail: tuple[int, ...] = (), var: str = "x"):
        self.m, self.tail, self.var = m, tuple(c % m for c in tail), var
        self.d = max(1, len(self.tail)) if tail else 1

    def elements(self):
        return list(product(range(self.m), repeat=self.d))

    def zero(self):
        return (0,) * self.d

    def one(self):
        return (1,) + (0,) * (self.d - 1)

    def add(self, a, b):
        return tuple((x + y) % self.m for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.m for x in a)

    def mul(self, a, b):
        if not self.tail:
            return ((a[0] * b[0]) % self.m,)
        raw = [0] * (2 * self.d - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                raw[i + j] += x * y
        # x^d = -(tail[0] + tail[1] x + ...)
        for k in range(len(raw) - 1, self.d - 1, -1):
            c = raw[k]
            if c:
                raw[k] = 0
                for i, t in enumerate(self.tail):
                    raw[k - self.d + i] -= c * t
        return tuple(c % self.m for c in raw[:self.d])

    def text(self, a) -> str:
        terms = [f"{c}*{self.var}^{i}" if i else str(c) for i, c in enumerate(a)]
        return "+".join(terms)


class ProductOracle:
    def __init__(self, *factors):
        self.factors = factors

    def elements(self):
        return list(product(*(f.elements() for f in self.factors)))

    def zero(self):
        return tuple(f.zero() for f in self.factors)

    def one(self):
        return tuple(f.one() for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def text(self, a) -> str:
        return "(" + ",".join(f.text(x) for f, x in zip(self.factors, a)) + ")"


# a few universe rings, written out by hand
ORACLE_RINGS = {
    "Z/9": TupleRing(9),
    "Z/10": TupleRing(10),
    "F_4": TupleRing(2, (1, 1), "a"),          # a^2 + a + 1
    "F_8": TupleRing(2, (1, 1, 0), "a"),       # a^3 + a + 1
    "F_9": TupleRing(3, (1, 0), "a"),          # a^2 + 1
    "Z/3[e]/(e^2)": TupleRing(3, (0, 0), "e"),
    "Z/2[e]/(e^2)": TupleRing(2, (0, 0), "e"),
    "Z/4[e]/(e^2)": TupleRing(4, (0, 0), "e"),
    "(Z/2)x(Z/3)": ProductOracle(TupleRing(2), TupleRing(3)),
}


def ring_pow(R, a, k):
    out = R.one()
    for _ in range(k):
        out = R.mul(out, a)
    return out


def scale(R, a, c):
    out = R.zero()
    step = a if c >= 0 else R.neg(a)
    for _ in range(abs(c)):
        out = R.add(out, step)
    return out


def mat_mul(R, A, B):
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = R.zero()
            for k in range(n):
                acc = R.add(acc, R.mul(A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_power(R, A, k):
    out = A
    for _ in range(k - 1):
        out = mat_mul(R, out, A)
    return out


def trace(R, A):
    acc = R.zero()
    for i in range(len(A)):
        acc = R.add(acc, A[i][i])
    return acc


def additive_span(R, seeds):
    group = {R.zero()}
    frontier = list(group)
    seeds = set(seeds)
    while frontier:
        nxt = []
        for g in frontier:
            for s in seeds:
                h = R.add(g, s)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def trace_subgroup_2x2(R, k):
    """Span of tr(M^k) over every 2x2 matrix M, by plain enumeration."""
    els = R.elements()
    seeds = set()
    for a, b, c, d in product(els, repeat=4):
        seeds.add(trace(R, mat_power(R, ((a, b), (c, d)), k)))
    return additive_span(R, seeds)


def leibniz_det(M):
    n = len(M)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inv * prod(M[i][perm[i]] for i in range(n))
    return total


def poly_roots_resultant(f_roots, g_roots, lead_f=1, lead_g=1):
    """res(f, g) for f, g given by their integer roots and leading coefficients."""
    out = lead_f ** len(g_roots) * lead_g ** len(f_roots)
    for a in f_roots:
        for b in g_roots:
            out *= a - b
    return out

"""Finite commutative rings with unity.

Three presentations are supported: ``Z/m``, ``(Z/m)[v]/(f)`` for a monic
integer polynomial ``f``, and finite products of those.  Every element is
stored as a canonical int in ``range(cardinality)``:

* ``Z/m``: the residue itself.
* ``(Z/m)[v]/(f)``: the coefficient vector read as base-``m`` digits
  (constant term is the lowest digit), so constants keep their residue.
* products: mixed-radix digits of the component payloads.

Canonical payloads make ring equality structural, which is what the subgroup
closures rely on.  Rings of at most ``TABLE_LIMIT`` elements get addition and
multiplication tables at construction.

Spec strings::

    Z/9
    Z/3[e]/(e^2)
    (Z/2)x(Z/3)
    F_4, F_8, F_9, F_p          # aliases for common fields
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .polys import MultiPoly, PolyParseError, evaluate_expression

TABLE_LIMIT = 256

FIELD_ALIASES = {
    "F_4": "Z/2[a]/(a^2+a+1)",
    "F_8": "Z/2[a]/(a^3+a+1)",
    "F_9": "Z/3[a]/(a^2+1)",
    "F_16": "Z/2[a]/(a^4+a+1)",
    "F_25": "Z/5[a]/(a^2+2)",
    "F_27": "Z/3[a]/(a^3+2*a+1)",
}


class RingSpecError(ValueError):
    """Malformed ring or element specification."""


class OwnerMismatch(ValueError):
    """Operands belong to different rings."""


class Ring:
    """Base class; subclasses implement the ``_*_direct`` payload arithmetic."""

    cardinality: int
    characteristic: int

    def __init__(self):
        self.zero = 0
        self.one = self.from_int(1)
        self._multiples: dict[int, frozenset[int]] = {}
        if self.cardinality <= TABLE_LIMIT:
            self._build_tables()

    # payload arithmetic; tables replace these on small rings

    def add(self, a: int, b: int) -> int:
        return self._add_direct(a, b)

    def mul(self, a: int, b: int) -> int:
        return self._mul_direct(a, b)

    def neg(self, a: int) -> int:
        return self._neg_direct(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _build_tables(self):
        n = self.cardinality
        at = [[self._add_direct(a, b) for b in range(n)] for a in range(n)]
        mt = [[self._mul_direct(a, b) for b in range(n)] for a in range(n)]
        nt = [self._neg_direct(a) for a in range(n)]
        self._at, self._mt, self._nt = at, mt, nt
        self.add = lambda a, b: at[a][b]
        self.mul = lambda a, b: mt[a][b]
        self.neg = nt.__getitem__
        self.sub = lambda a, b: at[a][nt[b]]
        fi = self.from_int
        self.scale = lambda a, c: mt[a][fi(c)]

    def scale(self, a: int, c: int) -> int:
        """Integer multiple ``c * a``."""
        return self.mul(a, self.from_int(c))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def dot(self, xs: Sequence[int], ys: Sequence[int]) -> int:
        acc = self.zero
        add, mul = self.add, self.mul
        for a, b in zip(xs, ys):
            acc = add(acc, mul(a, b))
        return acc

    def sum(self, xs) -> int:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    # enumeration

    def elements(self) -> list[int]:
        """Every element once; ``0`` then ``1`` lead whenever they differ."""
        rest = [a for a in range(self.cardinality) if a not in (0, self.one)]
        return [0] + ([self.one] if self.one != 0 else []) + rest

    def __iter__(self):
        return iter(self.elements())

    def __len__(self) -> int:
        return self.cardinality

    # ideals and quotients

    def multiples(self, m: int) -> frozenset[int]:
        """The ideal ``mR`` as a payload set."""
        cache = self._multiples
        if m not in cache:
            cache[m] = frozenset(self.scale(a, m) for a in range(self.cardinality))
        return cache[m]

    def quotient(self, m: int) -> tuple[Ring, Callable[[int], int]]:
        """``R/mR`` with its projection map."""
        if m <= 0:
            raise ValueError("quotient needs a positive integer")
        return self._quotient(m)

    # elements as objects

    def __call__(self, value) -> RingElement:
        if isinstance(value, RingElement):
            if value.ring != self:
                raise OwnerMismatch(f"{value} is not an element of {self}")
            return value
        if isinstance(value, int):
            return RingElement(self, self.from_int(value))
        if isinstance(value, str):
            return RingElement(self, self.parse_element(value))
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def element(self, payload: int) -> RingElement:
        if not 0 <= payload < self.cardinality:
            raise ValueError(f"payload {payload} out of range for {self}")
        return RingElement(self, payload)

    # identity

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"Ring({self.spec!r})"

    def __str__(self) -> str:
        return self.spec

    def __getstate__(self):
        state = self.__dict__.copy()
        for key in ("add", "mul", "neg", "sub", "scale", "_at", "_mt", "_nt"):
            state.pop(key, None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        if self.cardinality <= TABLE_LIMIT:
            self._build_tables()


class IntegersMod(Ring):
    def __init__(self, m: int):
        if m < 1:
            raise RingSpecError("modulus must be positive")
        self.m = m
        self.cardinality = m
        self.characteristic = m
        super().__init__()

    def _build_tables(self):
        pass  # native int arithmetic beats table lookups

    def add(self, a, b):
        return (a + b) % self.m

    def mul(self, a, b):
        return (a * b) % self.m

    def neg(self, a):
        return (-a) % self.m

    def sub(self, a, b):
        return (a - b) % self.m

    _add_direct, _mul_direct, _neg_direct = add, mul, neg

    def from_int(self, c: int) -> int:
        return c % self.m

    def scale(self, a: int, c: int) -> int:
        return (a * c) % self.m

    def pow(self, a: int, e: int) -> int:
        return pow(a, e, self.m) if self.m > 1 else 0

    def dot(self, xs, ys) -> int:
        return sum(map(operator.mul, xs, ys)) % self.m

    def sum(self, xs) -> int:
        return sum(xs) % self.m

    def elements(self) -> list[int]:
        return list(range(self.m))

    def _quotient(self, m):
        g = math.gcd(self.m, m)
        return IntegersMod(g), (lambda a, g=g: a % g)

    def parse_element(self, text: str) -> int:
        value = _eval_element(text, {})
        if not isinstance(value, int):
            raise RingSpecError(f"{text!r} is not an integer residue")
        return value % self.m

    def format(self, a: int) -> str:
        return str(a)

    @property
    def spec(self) -> str:
        return f"Z/{self.m}"


class PolyQuotient(Ring):
    """``(Z/m)[var]/(f)`` with ``f`` monic of degree ``d >= 1``."""

    def __init__(self, base: IntegersMod, modulus: Sequence[int], var: str = "x"):
        if not isinstance(base, IntegersMod):
            raise RingSpecError("polynomial quotients are built over Z/m only")
        modulus = list(modulus)
        while len(modulus) > 1 and modulus[-1] == 0:
            modulus.pop()
        if len(modulus) < 2:
            raise RingSpecError("modulus polynomial needs degree >= 1")
        if modulus[-1] != 1:
            raise RingSpecError("modulus polynomial must be monic")
        self.base = base
        self.var = var
        self.m = base.m
        self.modulus = tuple(c % self.m for c in modulus[:-1]) + (1,)
        self.degree = len(self.modulus) - 1
        self.cardinality = self.m ** self.degree
        self.characteristic = self.m
        self._weights = [self.m ** i for i in range(self.degree)]
        super().__init__()

    def coeffs(self, a: int) -> list[int]:
        out = []
        m = self.m
        for _ in range(self.degree):
            a, r = divmod(a, m)
            out.append(r)
        return out

    def encode(self, coeffs: Sequence[int]) -> int:
        """Reduce an arbitrary-length integer coefficient list into a payload."""
        c = [x % self.m for x in coeffs] if self.m > 1 else [0] * len(coeffs)
        d = self.degree
        low = self.modulus[:-1]
        for top in range(len(c) - 1, d - 1, -1):
            lead = c[top]
            if lead:
                base = top - d
                for i, fi in enumerate(low):
                    c[base + i] = (c[base + i] - lead * fi) % self.m
                c[top] = 0
        return sum(x * w for x, w in zip(c[:d], self._weights))

    def _add_direct(self, a, b):
        return self.encode([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def _neg_direct(self, a):
        return self.encode([-x for x in self.coeffs(a)])

    def _mul_direct(self, a, b):
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self.encode(prod)

    def from_int(self, c: int) -> int:
        return c % self.m

    def scale(self, a: int, c: int) -> int:
        return self.encode([x * c for x in self.coeffs(a)])

    def _quotient(self, m):
        g = math.gcd(self.m, m)
        q = PolyQuotient(IntegersMod(g), self.modulus, self.var)
        return q, (lambda a: q.encode(self.coeffs(a)))

    def parse_element(self, text: str) -> int:
        value = _eval_element(text, {self.var: MultiPoly.var(self.var)})
        if isinstance(value, int):
            return value % self.m
        return self.encode(value.univariate_coeffs(self.var))

    def format(self, a: int) -> str:
        return MultiPoly.from_univariate(self.coeffs(a), self.var).format().replace(" ", "")

    @property
    def spec(self) -> str:
        f = MultiPoly.from_univariate(self.modulus, self.var).format().replace(" ", "")
        return f"Z/{self.m}[{self.var}]/({f})"


class ProductRing(Ring):
    def __init__(self, factors: Sequence[Ring]):
        if len(factors) < 2:
            raise RingSpecError("a product needs at least two factors")
        self.factors = tuple(factors)
        self._radix = [f.cardinality for f in self.factors]
        self.cardinality = math.prod(self._radix)
        self.characteristic = math.lcm(*(f.characteristic for f in self.factors))
        super().__init__()

    def split(self, a: int) -> list[int]:
        out = []
        for r in self._radix:
            a, d = divmod(a, r)
            out.append(d)
        return out

    def join(self, parts: Sequence[int]) -> int:
        a, w = 0, 1
        for d, r in zip(parts, self._radix):
            a += d * w
            w *= r
        return a

    def _add_direct(self, a, b):
        return self.join([f.add(x, y) for f, x, y in zip(self.factors, self.split(a), self.split(b))])

    def _mul_direct(self, a, b):
        return self.join([f.mul(x, y) for f, x, y in zip(self.factors, self.split(a), self.split(b))])

    def _neg_direct(self, a):
        return self.join([f.neg(x) for f, x in zip(self.factors, self.split(a))])

    def from_int(self, c: int) -> int:
        return self.join([f.from_int(c) for f in self.factors])

    def _quotient(self, m):
        parts = [f.quotient(m) for f in self.factors]
        q = ProductRing([p[0] for p in parts])
        projs = [p[1] for p in parts]
        return q, (lambda a: q.join([pr(x) for pr, x in zip(projs, self.split(a))]))

    def parse_element(self, text: str) -> int:
        s = text.strip()
        if s.startswith("(") and s.endswith(")"):
            items = _split_top(s[1:-1], ",")
            if len(items) == len(self.factors):
                return self.join([f.parse_element(t) for f, t in zip(self.factors, items)])
        value = _eval_element(s, {})
        if isinstance(value, int):
            return self.from_int(value)
        raise RingSpecError(f"product elements are written (a,b,...); got {text!r}")

    def format(self, a: int) -> str:
        return "(" + ",".join(f.format(x) for f, x in zip(self.factors, self.split(a))) + ")"

    @property
    def spec(self) -> str:
        return "x".join(f"({f.spec})" for f in self.factors)


@dataclass(frozen=True, slots=True)
class RingElement:
    """An element bound to its ring; arithmetic checks ownership."""

    ring: Ring
    value: int

    def _other(self, other) -> int:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise OwnerMismatch(f"{other.ring} vs {self.ring}")
            return other.value
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else RingElement(self.ring, self.ring.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else RingElement(self.ring, self.ring.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        return NotImplemented if b is NotImplemented else RingElement(self.ring, self.ring.sub(b, self.value))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.int_scale(other)
        b = self._other(other)
        return NotImplemented if b is NotImplemented else RingElement(self.ring, self.ring.mul(self.value, b))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, e: int):
        return RingElement(self.ring, self.ring.pow(self.value, e))

    def int_scale(self, c: int) -> RingElement:
        return RingElement(self.ring, self.ring.scale(self.value, c))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return self.ring.format(self.value)

    def __repr__(self) -> str:
        return f"{self.ring.format(self.value)} in {self.ring.spec}"


# --- spec parsing ---------------------------------------------------------

_MOD_RE = re.compile(r"^Z/(\d+)$")
_POLY_RE = re.compile(r"^Z/(\d+)\[([A-Za-z_]\w*)\]/\((.+)\)$")
_FIELD_RE = re.compile(r"^F_(\d+)$")


def _split_top(text: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return out


def _product_parts(spec: str) -> list[str] | None:
    """Split ``(A)x(B)x(C)`` into its parenthesised factors, else None."""
    parts, i = [], 0
    while i < len(spec):
        if spec[i] != "(":
            return None
        depth, j = 0, i
        while j < len(spec):
            depth += {"(": 1, ")": -1}.get(spec[j], 0)
            if depth == 0:
                break
            j += 1
        if depth:
            raise RingSpecError(f"unbalanced parentheses in {spec!r}")
        parts.append(spec[i + 1:j])
        i = j + 1
        if i < len(spec):
            if spec[i] != "x":
                return None
            i += 1
    return parts


def _eval_element(text: str, names: dict):
    try:
        return evaluate_expression(text, names)
    except PolyParseError as exc:
        raise RingSpecError(str(exc)) from None


def make_ring(spec: str) -> Ring:
    """Parse a ring specification string."""
    s = spec.strip().replace(" ", "").replace("ε", "e")
    if not s:
        raise RingSpecError("empty ring spec")
    s = FIELD_ALIASES.get(s, s)
    parts = _product_parts(s)
    if parts is not None:
        if len(parts) == 1:
            return make_ring(parts[0])
        return ProductRing([make_ring(p) for p in parts])
    if m := _FIELD_RE.match(s):
        p = int(m.group(1))
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise RingSpecError(f"no built-in alias for {s}")
        s = f"Z/{p}"
    if m := _MOD_RE.match(s):
        mod = int(m.group(1))
        if mod < 2:
            raise RingSpecError("modulus must be at least 2")
        return IntegersMod(mod)
    if m := _POLY_RE.match(s):
        mod, var, poly_text = int(m.group(1)), m.group(2), m.group(3)
        if mod < 2:
            raise RingSpecError("modulus must be at least 2")
        value = _eval_element(poly_text, {var: MultiPoly.var(var)})
        if isinstance(value, int) or value.degree() < 1:
            raise RingSpecError("modulus polynomial needs degree >= 1")
        coeffs = value.univariate_coeffs(var)
        if coeffs[-1] != 1:
            raise RingSpecError(f"modulus {poly_text!r} is not monic")
        return PolyQuotient(IntegersMod(mod), coeffs, var)
    raise RingSpecError(f"cannot parse ring spec {spec!r}")


def quotient_by_integer(ring: Ring, m: int) -> tuple[Ring, Callable[[int], int]]:
    return ring.quotient(m)


def enumerate_ring(ring: Ring) -> list[RingElement]:
    return [RingElement(ring, a) for a in ring.elements()]

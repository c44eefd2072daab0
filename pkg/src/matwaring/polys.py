"""Sparse multivariate polynomials with exact integer coefficients.

A monomial is a sorted tuple of ``(variable, exponent)`` pairs with positive
exponents; the constant monomial is ``()``.  Terms map monomials to nonzero
Python ints, so arithmetic never overflows and equality is structural.

    >>> x, y = MultiPoly.var("x"), MultiPoly.var("y")
    >>> ((x + y) ** 2).format()
    'x^2 + 2*x*y + y^2'
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

Monomial = tuple[tuple[str, int], ...]


class PolyParseError(ValueError):
    pass


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


@dataclass(frozen=True)
class MultiPoly:
    terms: Mapping[Monomial, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {m: c for m, c in self.terms.items() if c}
        object.__setattr__(self, "terms", clean)

    # construction

    @classmethod
    def const(cls, c: int) -> MultiPoly:
        return cls({(): int(c)})

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        return cls({((name, 1),): 1})

    @classmethod
    def monomial(cls, coeff: int, **exps: int) -> MultiPoly:
        mono = tuple(sorted((v, e) for v, e in exps.items() if e))
        return cls({mono: coeff})

    @classmethod
    def from_univariate(cls, coeffs: Iterable[int], var: str = "x") -> MultiPoly:
        """Build ``sum(c_i * var^i)`` from a low-to-high coefficient list."""
        out = {}
        for i, c in enumerate(coeffs):
            out[((var, i),) if i else ()] = c
        return cls(out)

    @classmethod
    def parse(cls, text: str) -> MultiPoly:
        return parse_poly(text)

    # inspection

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(sorted({v for m in self.terms for v, _ in m}))

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(_mono_degree(m) for m in self.terms)
        return max(dict(m).get(var, 0) for m in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, **exps: int) -> int:
        mono = tuple(sorted((v, e) for v, e in exps.items() if e))
        return self.terms.get(mono, 0)

    def univariate_coeffs(self, var: str = "x") -> list[int]:
        """Low-to-high coefficients; raises if other variables occur."""
        if any(v != var for v in self.variables):
            raise ValueError(f"polynomial is not univariate in {var!r}")
        out = [0] * (self.degree() + 1)
        for m, c in self.terms.items():
            out[dict(m).get(var, 0)] = c
        return out

    def content(self) -> int:
        from math import gcd
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    # arithmetic

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, int):
            return MultiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponents must be nonnegative ints")
        result, base = MultiPoly.const(1), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> MultiPoly:
        return MultiPoly({m: c * v for m, v in self.terms.items()})

    def reduce_mod(self, m: int) -> MultiPoly:
        """Coefficients reduced into ``[0, m)``."""
        if m <= 0:
            raise ValueError("modulus must be positive")
        return MultiPoly({mono: c % m for mono, c in self.terms.items()})

    def congruent(self, other: MultiPoly, m: int) -> bool:
        return (self - other).reduce_mod(m).is_zero()

    def substitute(self, mapping: Mapping[str, MultiPoly | int]) -> MultiPoly:
        """Replace variables by polynomials; unmapped variables stay."""
        subs = {v: p if isinstance(p, MultiPoly) else MultiPoly.const(p) for v, p in mapping.items()}
        power_cache: dict[tuple[str, int], MultiPoly] = {}

        def pw(v: str, e: int) -> MultiPoly:
            key = (v, e)
            if key not in power_cache:
                power_cache[key] = subs[v] ** e
            return power_cache[key]

        out = MultiPoly()
        for mono, c in self.terms.items():
            term = MultiPoly({(): c})
            keep = []
            for v, e in mono:
                if v in subs:
                    term = term * pw(v, e)
                else:
                    keep.append((v, e))
            if keep:
                term = term * MultiPoly({tuple(keep): 1})
            out = out + term
        return out

    def __call__(self, *args, **kwargs) -> MultiPoly:
        """Positional arguments bind to ``self.variables`` in sorted order."""
        mapping = dict(zip(self.variables, args))
        mapping.update(kwargs)
        return self.substitute(mapping)

    def evaluate_int(self, values: Mapping[str, int]) -> int:
        total = 0
        for mono, c in self.terms.items():
            t = c
            for v, e in mono:
                t *= values[v] ** e
            total += t
        return total

    def compile_for(self, ring, order: tuple[str, ...] | None = None) -> Callable[..., int]:
        """Return ``f(*payloads)`` evaluating this polynomial inside ``ring``.

        Coefficients are mapped into the ring once; powers of each argument
        are built incrementally per call.
        """
        order = order or self.variables
        index = {v: i for i, v in enumerate(order)}
        missing = set(self.variables) - set(index)
        if missing:
            raise ValueError(f"no binding for variables {sorted(missing)}")
        terms = [(ring.from_int(c), [(index[v], e) for v, e in mono]) for mono, c in self.terms.items()]
        terms = [(c, mono) for c, mono in terms if c != ring.zero]
        max_exp = [0] * len(order)
        for _, mono in terms:
            for i, e in mono:
                max_exp[i] = max(max_exp[i], e)
        mul, add, one = ring.mul, ring.add, ring.one

        def f(*args: int) -> int:
            pows = []
            for a, top in zip(args, max_exp):
                row = [one]
                for _ in range(top):
                    row.append(mul(row[-1], a))
                pows.append(row)
            acc = ring.zero
            for c, mono in terms:
                t = c
                for i, e in mono:
                    t = mul(t, pows[i][e])
                acc = add(acc, t)
            return acc

        return f

    # display

    def _sorted_terms(self) -> Iterator[tuple[Monomial, int]]:
        return iter(sorted(self.terms.items(), key=lambda kv: (-_mono_degree(kv[0]), [(v, -e) for v, e in kv[0]])))

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self._sorted_terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", s))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MultiPoly({self.format()!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))


# --- parsing --------------------------------------------------------------

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Pow)


def _prepare(text: str) -> ast.expr:
    src = text.strip().replace("^", "**").replace("[", "(").replace("]", ")")
    if not src:
        raise PolyParseError("empty expression")
    try:
        return ast.parse(src, mode="eval").body
    except SyntaxError as exc:
        raise PolyParseError(f"cannot parse {text!r}: {exc.msg}") from None


def evaluate_expression(text: str, names: Mapping[str, object], call: Callable | None = None):
    """Evaluate an arithmetic expression over polynomials.

    ``names`` maps identifiers to values (MultiPoly or int).  Unknown
    identifiers raise.  ``call(name, args)`` handles ``name(arg, ...)`` nodes;
    without it calls are rejected.  Implicit multiplication like ``2x`` and
    bracket grouping ``9[x+1]`` are accepted.
    """
    src = _implicit_mul(text)
    node = _prepare(src)
    return _eval(node, names, call, text)


def _implicit_mul(text: str) -> str:
    # 2x -> 2*x, 9[...] -> 9*[...], )( -> )*(, 2( -> 2*(
    out = []
    s = text
    for i, ch in enumerate(s):
        if i and out:
            prev = s[i - 1]
            if prev.isdigit() and (ch.isalpha() or ch in "[("):
                # don't split identifiers like x2 (prev digit belongs to a name)
                j = i - 1
                while j >= 0 and s[j].isdigit():
                    j -= 1
                if j < 0 or not (s[j].isalnum() or s[j] == "_"):
                    out.append("*")
            elif prev in ")]" and (ch.isalnum() or ch in "[("):
                out.append("*")
        out.append(ch)
    return "".join(out)


def _eval(node, names, call, text):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.Name):
        if node.id not in names:
            raise PolyParseError(f"unknown name {node.id!r} in {text!r}")
        return names[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, names, call, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        a = _eval(node.left, names, call, text)
        b = _eval(node.right, names, call, text)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if not isinstance(b, int):
            raise PolyParseError(f"non-integer exponent in {text!r}")
        return a ** b
    if isinstance(node, ast.Call) and call is not None and isinstance(node.func, ast.Name) and not node.keywords:
        args = [_eval(a, names, call, text) for a in node.args]
        return call(node.func.id, args)
    raise PolyParseError(f"unsupported syntax in {text!r}")


class _Vars(dict):
    def __missing__(self, key):
        if key.isidentifier():
            return MultiPoly.var(key)
        raise KeyError(key)

    def __contains__(self, key):
        return isinstance(key, str) and key.isidentifier()


def parse_poly(text: str) -> MultiPoly:
    """Parse ``"x^2 - 3*x*y + 9[t^7*d]"`` style input; any identifier is a variable."""
    value = evaluate_expression(text, _Vars())
    if isinstance(value, int):
        return MultiPoly.const(value)
    return value

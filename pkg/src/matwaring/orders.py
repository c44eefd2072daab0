"""Discriminants of monogenic orders ``Z[x]/(f)`` and the p-th power criterion.

For a prime ``p`` three statements about ``R = Z[x]/(f)`` are compared:

1. every element of R is a p-th power modulo pR;
2. ``x^p in pR`` implies ``x in pR``;
3. ``gcd(p, disc f) = 1``.

(1) and (2) only depend on ``R/pR = F_p[x]/(f mod p)``, which is finite.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .condition_sets import pth_power_mod_p
from .polys import MultiPoly, PolyParseError
from .reports import Statement, TheoremReport
from .rings import IntegersMod, PolyQuotient


class PolynomialError(ValueError):
    pass


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients listed from the constant term up."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def parse(cls, text: str, var: str = "x") -> IntPolynomial:
        try:
            p = MultiPoly.parse(text)
        except PolyParseError as exc:
            raise PolynomialError(str(exc)) from None
        extra = set(p.variables) - {var}
        if extra:
            raise PolynomialError(f"unexpected variables {sorted(extra)} in {text!r}")
        return cls(tuple(p.univariate_coeffs(var)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def format(self, var: str = "x") -> str:
        return MultiPoly.from_univariate(self.coeffs, var).format().replace(" ", "")

    def __str__(self) -> str:
        return self.format()


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester_matrix(f: IntPolynomial, g: IntPolynomial) -> list[list[int]]:
    m, n = f.degree, g.degree
    size = m + n
    fh, gh = f.coeffs[::-1], g.coeffs[::-1]  # leading coefficient first
    rows = []
    for i in range(n):
        rows.append([0] * i + list(fh) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(gh) + [0] * (size - n - 1 - i))
    return rows


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    if f.is_zero() and g.is_zero():
        raise PolynomialError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        return 1 if other.degree == 0 else 0
    if f.degree == 0:
        return f.coeffs[0] ** g.degree
    if g.degree == 0:
        return g.coeffs[0] ** f.degree
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(f: IntPolynomial) -> int:
    """``(-1)^(d(d-1)/2) res(f, f')`` for monic ``f`` of degree ``d >= 2``."""
    if not f.is_monic():
        raise PolynomialError(f"{f} is not monic")
    d = f.degree
    if d < 2:
        raise PolynomialError("discriminant needs degree >= 2")
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


FAMILY_PRIME = {"deg9": 3, "deg11": 11, "deg13": 13, "deg16": 2}
FAMILY_POWERS = {"deg9": "3rd and 9th", "deg11": "11th", "deg13": "13th", "deg16": "2nd, 4th, 8th and 16th"}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def residue_ring(f: IntPolynomial, p: int) -> PolyQuotient:
    """``R/pR = F_p[x]/(f mod p)``."""
    return PolyQuotient(IntegersMod(p), f.coeffs, "x")


def order_power_criterion(f: IntPolynomial, p: int, family: str | None = None,
                          max_size: int = 10**6) -> TheoremReport:
    if not f.is_monic():
        raise PolynomialError(f"{f} is not monic")
    if not _is_prime(p):
        raise PolynomialError(f"{p} is not prime")
    if family is not None and FAMILY_PRIME.get(family) != p:
        raise PolynomialError(f"family {family} concerns p = {FAMILY_PRIME.get(family)}, not {p}")
    if p ** f.degree > max_size:
        raise PolynomialError(f"R/pR has {p}^{f.degree} elements, over the limit {max_size}")
    disc = discriminant(f)
    q = residue_ring(f, p)
    report = TheoremReport("order", f"Z[x]/({f.format()})")
    res = pth_power_mod_p(q, p)
    s1 = Statement("1", res.holds, f"every element is a {p}-th power modulo {p}R",
                   None if res.holds else {"kind": "not_pth_power", "p": p, "element": q.format(res.counterexample)})
    bad = next((x for x in q.elements() if x != 0 and q.pow(x, p) == 0), None)
    s2 = Statement("2", bad is None, f"x^{p} in {p}R implies x in {p}R",
                   None if bad is None else {"kind": "nilpotent", "p": p, "element": q.format(bad)})
    g = gcd(p, disc)
    s3 = Statement("3", g == 1, f"gcd({p}, disc) = 1", {"kind": "discriminant", "disc": disc, "gcd": g})
    report.statements = [s1, s2, s3]
    report.agreement = s1.verdict == s2.verdict == s3.verdict
    verdict = "HOLDS" if s3.verdict else "FAILS"
    report.notes.append(f"disc = {disc}; criterion {verdict}")
    if family:
        if s3.verdict:
            report.notes.append(f"every matrix over Z[x]/({f.format()}) is a sum of {FAMILY_POWERS[family]} powers")
        else:
            report.notes.append(f"not every matrix over Z[x]/({f.format()}) is a sum of {FAMILY_POWERS[family]} powers")
    return report


# Curated (f, p) pairs: both verdicts, both degrees 2 and 3.
CURATED_PAIRS: list[tuple[str, int, bool]] = [
    ("x^2-x+1", 3, False),
    ("x^2-x-1", 3, True),
    ("x^2+1", 2, False),
    ("x^2+1", 3, True),
    ("x^2-2", 2, False),
    ("x^2-2", 3, True),
    ("x^2+x+1", 3, False),
    ("x^2+x+1", 2, True),
    ("x^2-5", 5, False),
    ("x^2+x-1", 5, False),
    ("x^3-2", 3, False),
    ("x^3-2", 5, True),
    ("x^2+3", 3, False),
    ("x^2+3", 2, False),
    ("x^2+1", 11, True),
    ("x^3-x-1", 11, True),
    ("x^2-13", 13, False),
    ("x^2-x-1", 13, True),
]

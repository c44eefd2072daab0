"""Traces of matrix powers.

For the 2x2 matrix ``A(t, d) = [[t, d], [-1, 0]]``::

    tr(A^k) = sum_r (-1)^r (k/r) C(k-r-1, r-1) t^(k-2r) d^r,   0 <= r <= k/2

with the ``r = 0`` coefficient equal to 1.  Every 2x2 matrix with trace ``t``
and determinant ``d`` has the same power traces, so this polynomial covers
all of ``M_2(R)``.  For larger companion matrices the power traces come from
Newton's identities instead of matrix multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .budget import Budget
from .polys import MultiPoly
from .rings import Ring, RingElement, OwnerMismatch


def coefficient(k: int, r: int) -> int:
    """Integer coefficient of ``t^(k-2r) d^r`` in ``tr(A^k)``."""
    if r == 0:
        return 1
    num = k * comb(k - r - 1, r - 1)
    assert num % r == 0
    return (-1) ** r * (num // r)


def coefficients(k: int) -> tuple[int, ...]:
    if k < 2:
        raise ValueError("power must be at least 2")
    return tuple(coefficient(k, r) for r in range(k // 2 + 1))


# Expansions as printed for the powers treated individually.
PRINTED_COEFFICIENTS: dict[int, tuple[int, ...]] = {
    9: (1, -9, 27, -30, 9),
    10: (1, -10, 35, -50, 25, -2),
    11: (1, -11, 44, -77, 55, -11),
    12: (1, -12, 54, -112, 105, -36, 2),
    13: (1, -13, 65, -156, 182, -91, 13),
    14: (1, -14, 77, -210, 294, -196, 49, -2),
    15: (1, -15, 90, -275, 450, -378, 140, -15),
    16: (1, -16, 104, -352, 660, -672, 336, -64, 2),
}


@dataclass(frozen=True)
class TracePolynomial:
    k: int
    coefficients: tuple[int, ...]

    @classmethod
    def of(cls, k: int) -> TracePolynomial:
        return cls(k, coefficients(k))

    def as_poly(self, t: str = "t", d: str = "d") -> MultiPoly:
        out = MultiPoly.const(0)
        for r, c in enumerate(self.coefficients):
            out = out + MultiPoly.monomial(c, **{t: self.k - 2 * r, d: r})
        return out

    def evaluate(self, ring: Ring, t: int, d: int) -> int:
        """Horner in ``t^2`` and ``d``; payload in, payload out."""
        k = self.k
        tpows = [ring.one]
        for _ in range(k):
            tpows.append(ring.mul(tpows[-1], t))
        acc, dpow = ring.zero, ring.one
        for r, c in enumerate(self.coefficients):
            acc = ring.add(acc, ring.scale(ring.mul(tpows[k - 2 * r], dpow), c))
            dpow = ring.mul(dpow, d)
        return acc

    def format(self) -> str:
        return self.as_poly().format()


def _owner(t: RingElement, delta: RingElement) -> Ring:
    if t.ring != delta.ring:
        raise OwnerMismatch(f"{t.ring} vs {delta.ring}")
    return t.ring


def closed_form(k: int, t: RingElement, delta: RingElement) -> RingElement:
    """``tr(A(t, delta)^k)`` from the coefficient formula."""
    ring = _owner(t, delta)
    return RingElement(ring, TracePolynomial.of(k).evaluate(ring, t.value, delta.value))


def two_by_two_traces(ring: Ring, k: int) -> dict[tuple[int, int], int]:
    """``tr(A(t, d)^k)`` for every pair, via ``s_j = t s_(j-1) - d s_(j-2)``."""
    if k < 1:
        raise ValueError("power must be positive")
    mul, sub = ring.mul, ring.sub
    two = ring.from_int(2)
    out = {}
    elems = ring.elements()
    for t in elems:
        for d in elems:
            prev, cur = two, t
            for _ in range(k - 1):
                prev, cur = cur, sub(mul(t, cur), mul(d, prev))
            out[(t, d)] = cur
    return out


# Normal forms modulo kR.  Those for 10, 12, 14, 15 are the displayed ones;
# the others were derived from the coefficient vectors (see tests).
REDUCED_FORMS: dict[int, str] = {
    9: "t^9 - 3*(t*d)^3",
    10: "t^10 - 2*d^5 + 5*(t^3*d + t*d^2)^2",
    11: "t^11",
    12: "t^12 + 2*d^6 - 4*(t^2*d)^3 - 3*(t*d)^4 + 6*(t^4*d)^2",
    13: "t^13",
    14: "t^14 - 2*d^7 + 7*(t^5*d + t*d^3)^2",
    15: "t^15 - 3*(t*d)^5 + 5*(t*d^2 - t^3*d)^3",
    16: "t^16 + 2*d^8 + 4*(t^2*d)^4 + 8*(t^6*d)^2",
}


def reduced_poly(k: int) -> MultiPoly:
    if k not in REDUCED_FORMS:
        raise ValueError(f"no reduced form for k={k}")
    return MultiPoly.parse(REDUCED_FORMS[k])


def reduced_form(k: int, t: RingElement, delta: RingElement) -> RingElement:
    """The normal form of ``tr(A^k)`` evaluated in ``R/kR``."""
    ring = _owner(t, delta)
    poly = reduced_poly(k)
    q, proj = ring.quotient(k)
    f = poly.compile_for(q, ("d", "t"))
    return RingElement(q, f(proj(delta.value), proj(t.value)))


def power_traces(ring: Ring, coeffs: Sequence[int], kmax: int) -> list[int]:
    """``[tr(C^1), ..., tr(C^kmax)]`` for ``C = general_companion(coeffs)``.

    The characteristic polynomial is ``x^n - e1 x^(n-1) + e2 x^(n-2) - ...``,
    so Newton's identities give the power sums directly.
    """
    n = len(coeffs)
    add, mul, scale = ring.add, ring.mul, ring.scale
    signed = [c if i % 2 == 0 else ring.neg(c) for i, c in enumerate(coeffs)]
    p = [ring.from_int(n)]
    for j in range(1, kmax + 1):
        acc = ring.zero
        for i in range(1, min(j - 1, n) + 1):
            acc = add(acc, mul(signed[i - 1], p[j - i]))
        if j <= n:
            acc = add(acc, scale(signed[j - 1], j))
        p.append(acc)
    return p[1:]


@dataclass(frozen=True)
class WittCheck:
    member: bool
    value: int
    witness: tuple[int, ...] | None


def witt_membership_check(M, p: int, s: int, budget: Budget | None = None) -> WittCheck:
    """Is ``tr(M^(p^s))`` in ``W(p, s, R)``?  Exhaustive over the value set."""
    from .condition_sets import build_condition_set
    from .matrices import mat_pow

    if s < 1:
        raise ValueError("s must be at least 1")
    value = mat_pow(M, p ** s).trace()
    cs = build_condition_set(f"witt:{p}:{s}", M.ring, budget=budget)
    w = cs.witnesses.get(value)
    return WittCheck(w is not None, value, w[1] if w else None)

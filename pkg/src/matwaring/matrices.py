"""Dense square matrices over a finite commutative ring.

Entries are ring payloads (see :mod:`matwaring.rings`).  Matrices are
immutable; every operation returns a new one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .rings import OwnerMismatch, Ring, RingSpecError


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class Matrix:
    ring: Ring
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise DimensionError("matrix must be square and nonempty")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_ints(cls, ring: Ring, rows: Sequence[Sequence[int]]) -> Matrix:
        """Build from integer entries (reduced into the ring)."""
        return cls(ring, tuple(tuple(ring.from_int(v) for v in r) for r in rows))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> Matrix:
        return cls(ring, tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, ring: Ring, n: int) -> Matrix:
        return cls(ring, tuple((ring.zero,) * n for _ in range(n)))

    @classmethod
    def diagonal(cls, ring: Ring, diag: Sequence[int]) -> Matrix:
        n = len(diag)
        return cls(ring, tuple(tuple(diag[i] if i == j else ring.zero for j in range(n)) for i in range(n)))

    def _check(self, other: Matrix):
        if other.ring != self.ring:
            raise OwnerMismatch(f"{other.ring} vs {self.ring}")
        if other.n != self.n:
            raise DimensionError(f"{other.n}x{other.n} vs {self.n}x{self.n}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        add = self.ring.add
        return Matrix(self.ring, tuple(tuple(map(add, a, b)) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        sub = self.ring.sub
        return Matrix(self.ring, tuple(tuple(map(sub, a, b)) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> Matrix:
        neg = self.ring.neg
        return Matrix(self.ring, tuple(tuple(map(neg, r)) for r in self.rows))

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        dot = self.ring.dot
        cols = tuple(zip(*other.rows))
        return Matrix(self.ring, tuple(tuple(dot(r, c) for c in cols) for r in self.rows))

    def __pow__(self, k: int) -> Matrix:
        return mat_pow(self, k)

    def scale(self, c: int) -> Matrix:
        s = self.ring.scale
        return Matrix(self.ring, tuple(tuple(s(v, c) for v in r) for r in self.rows))

    def trace(self) -> int:
        return self.ring.sum(self.rows[i][i] for i in range(self.n))

    def det(self) -> int:
        """Determinant by closed formula; only ``n <= 3`` is supported."""
        R, a = self.ring, self.rows
        mul, sub, add = R.mul, R.sub, R.add
        if self.n == 1:
            return a[0][0]
        if self.n == 2:
            return sub(mul(a[0][0], a[1][1]), mul(a[0][1], a[1][0]))
        if self.n == 3:
            m = lambda i, j, k, l: sub(mul(a[i][j], a[k][l]), mul(a[i][l], a[k][j]))
            t0 = mul(a[0][0], m(1, 1, 2, 2))
            t1 = mul(a[0][1], m(1, 0, 2, 2))
            t2 = mul(a[0][2], m(1, 0, 2, 1))
            return add(sub(t0, t1), t2)
        raise DimensionError("determinant is implemented for n <= 3 only")

    def format(self) -> str:
        f = self.ring.format
        return f"{self.n}; " + "; ".join(",".join(f(v) for v in r) for r in self.rows)

    def __str__(self) -> str:
        return self.format()


def mat_pow(M: Matrix, k: int) -> Matrix:
    """``M**k`` by repeated squaring (``k >= 1``)."""
    if k < 1:
        raise ValueError("matrix power needs k >= 1")
    result = None
    base = M
    while k:
        if k & 1:
            result = base if result is None else result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def companion(ring: Ring, t: int, delta: int) -> Matrix:
    """The 2x2 matrix ``[[t, delta], [-1, 0]]``: trace ``t``, determinant ``delta``."""
    return Matrix(ring, ((t, delta), (ring.neg(ring.one), ring.zero)))


def general_companion(ring: Ring, coeffs: Sequence[int]) -> Matrix:
    """First row ``coeffs``, ``-1`` on the subdiagonal, zeros elsewhere.

    With ``coeffs = (e1, ..., en)`` the characteristic polynomial is
    ``x^n - e1 x^(n-1) + e2 x^(n-2) - ... + (-1)^n en``, so ``e1`` is the trace
    and ``en`` the determinant.  For ``n = 2`` this is exactly
    :func:`companion`.
    """
    n = len(coeffs)
    if n == 0:
        raise DimensionError("need at least one coefficient")
    minus_one = ring.neg(ring.one)
    rows = [tuple(coeffs)]
    for i in range(1, n):
        rows.append(tuple(minus_one if j == i - 1 else ring.zero for j in range(n)))
    return Matrix(ring, tuple(rows))


def direct_sum_embed(M: Matrix, n: int) -> Matrix:
    """``M (+) 0`` of size ``n``."""
    if n < M.n:
        raise DimensionError(f"cannot embed {M.n}x{M.n} into {n}x{n}")
    z = M.ring.zero
    rows = [r + (z,) * (n - M.n) for r in M.rows]
    rows += [(z,) * n for _ in range(n - M.n)]
    return Matrix(M.ring, tuple(rows))


@dataclass(frozen=True)
class CompanionPair:
    """Trace/determinant data of a 2x2 matrix, realised by :func:`companion`."""

    ring: Ring
    t: int
    delta: int

    def __post_init__(self):
        m = self.matrix()
        if m.trace() != self.t or m.det() != self.delta:
            raise AssertionError("companion matrix lost its trace or determinant")

    def matrix(self) -> Matrix:
        return companion(self.ring, self.t, self.delta)


def random_matrix(ring: Ring, n: int, rng: random.Random) -> Matrix:
    N = ring.cardinality
    return Matrix(ring, tuple(tuple(rng.randrange(N) for _ in range(n)) for _ in range(n)))


def all_matrices(ring: Ring, n: int):
    """Every ``n x n`` matrix, in lexicographic payload order."""
    from itertools import product
    elems = ring.elements()
    for flat in product(elems, repeat=n * n):
        yield Matrix(ring, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))


def parse_matrix(ring: Ring, text: str) -> Matrix:
    """Parse ``"n; a11,...,a1n; ...; an1,...,ann"``."""
    chunks = [c.strip() for c in text.strip().split(";") if c.strip()]
    if not chunks:
        raise RingSpecError("empty matrix text")
    try:
        n = int(chunks[0])
    except ValueError:
        raise RingSpecError(f"matrix text must start with its size, got {chunks[0]!r}") from None
    body = chunks[1:]
    if len(body) != n:
        raise RingSpecError(f"expected {n} rows, found {len(body)}")
    from .rings import _split_top
    rows = []
    for line in body:
        items = _split_top(line, ",")
        if len(items) != n:
            raise RingSpecError(f"row {line!r} has {len(items)} entries, expected {n}")
        rows.append(tuple(ring.parse_element(v) for v in items))
    return Matrix(ring, tuple(rows))

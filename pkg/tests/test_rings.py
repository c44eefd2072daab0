from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from matwaring import enumerate_ring, make_ring, quotient_by_integer
from matwaring.rings import OwnerMismatch, RingSpecError
from matwaring.universe import DEFAULT_UNIVERSE

from oracles import ORACLE_RINGS

LARGER = ["Z/3[x]/(x^3)", "Z/2[x]/(x^5+x^2+1)", "Z/64", "Z/5[x]/(x^2+2)", "(Z/4)x(Z/9)", "Z/8[x]/(x^2+x+1)"]
SMALL = [s for s in DEFAULT_UNIVERSE if make_ring(s).cardinality <= 16]


def test_examples():
    assert make_ring("Z/9").cardinality == 9
    r = make_ring("Z/3[e]/(e^2)")
    assert (r.cardinality, r.characteristic) == (9, 3)
    z9 = make_ring("Z/9")
    assert z9(8) + z9(3) == z9(2)
    e = r("e")
    assert e * e == r(0)
    z10 = make_ring("Z/10")
    assert z10.format(z10.scale(z10.from_int(5), 7)) == "5"
    assert [z.value for z in enumerate_ring(make_ring("Z/3"))] == [0, 1, 2]
    assert len(enumerate_ring(make_ring("Z/2[x]/(x^2+x+1)"))) == 4
    assert len(enumerate_ring(make_ring("(Z/2)x(Z/3)"))) == 6


def test_field_with_four_elements():
    f = make_ring("Z/2[x]/(x^2+x+1)")
    for a in f.elements():
        if a != f.zero:
            assert any(f.mul(a, b) == f.one for b in f.elements())


def test_quotient_examples():
    q, proj = quotient_by_integer(make_ring("Z/720"), 6)
    assert q.spec == "Z/6" and proj(make_ring("Z/720").from_int(13)) == 1
    r = make_ring("Z/3[e]/(e^2)")
    q, proj = quotient_by_integer(r, 3)
    assert q == r and all(proj(a) == a for a in r.elements())
    q, _ = quotient_by_integer(make_ring("Z/10"), 2)
    assert q.spec == "Z/2"


@pytest.mark.parametrize("bad", ["", "Z/1", "Z/0", "Z/3[x]/(2x^2+1)", "Z/3[x]/(5)", "Q", "F_6", "Z/3[x]/(x^2"])
def test_bad_specs(bad):
    with pytest.raises(RingSpecError):
        make_ring(bad)


def test_owner_mismatch():
    with pytest.raises(OwnerMismatch):
        make_ring("Z/3")(1) + make_ring("Z/5")(1)


@pytest.mark.parametrize("spec", SMALL)
def test_axioms_exhaustive(spec):
    r = make_ring(spec)
    els = r.elements()
    add, mul = r.add, r.mul
    for a in els:
        assert add(a, r.zero) == a and mul(a, r.one) == a
        assert add(a, r.neg(a)) == r.zero
        for b in els:
            assert add(a, b) == add(b, a) and mul(a, b) == mul(b, a)
            for c in els:
                assert add(add(a, b), c) == add(a, add(b, c))
                assert mul(mul(a, b), c) == mul(a, mul(b, c))
                assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


@pytest.mark.parametrize("spec", LARGER)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_axioms_sampled(spec, data):
    r = make_ring(spec)
    el = st.integers(0, r.cardinality - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c))
    assert r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
    assert r.sub(r.add(a, b), b) == a
    assert r.pow(a, 5) == r.mul(r.mul(r.mul(a, a), r.mul(a, a)), a)


@pytest.mark.parametrize("spec", sorted(ORACLE_RINGS))
def test_arithmetic_against_oracle(spec):
    r, o = make_ring(spec), ORACLE_RINGS[spec]
    code = {a: r.parse_element(o.text(a)) for a in o.elements()}
    assert sorted(code.values()) == list(range(r.cardinality))
    for a, b in product(o.elements(), repeat=2):
        assert r.add(code[a], code[b]) == code[o.add(a, b)]
        assert r.mul(code[a], code[b]) == code[o.mul(a, b)]


@pytest.mark.parametrize("spec", [s for s in DEFAULT_UNIVERSE] + ["Z/64", "Z/3[x]/(x^3)", "Z/2[x]/(x^5+x^2+1)"])
@pytest.mark.parametrize("m", [2, 3, 4, 6, 12, 15])
def test_quotient_is_ring_map(spec, m):
    r = make_ring(spec)
    assert r.cardinality <= 64
    q, proj = quotient_by_integer(r, m)
    els = r.elements()
    assert proj(r.one) == q.one and proj(r.zero) == q.zero
    assert set(map(proj, els)) == set(q.elements())
    mult = r.multiples(m)
    for a in els:
        for b in els:
            assert proj(r.add(a, b)) == q.add(proj(a), proj(b))
            assert proj(r.mul(a, b)) == q.mul(proj(a), proj(b))
    # kernel is exactly mR
    assert {a for a in els if proj(a) == q.zero} == set(mult)


def test_product_and_format_round_trip():
    for spec in DEFAULT_UNIVERSE:
        r = make_ring(spec)
        assert make_ring(r.spec) == r
        for a in r.elements():
            assert r.parse_element(r.format(a)) == a

import pytest
from hypothesis import given, strategies as st

from mubcert.gf2field import FieldSpec, find_irreducible, is_irreducible, mul, power, trace

import oracles

GF8 = FieldSpec(3, 0b1011)


@pytest.mark.parametrize("n,modulus", [(2, 0b111), (3, 0b1011), (5, 0b100101)])
def test_find_irreducible_examples(n, modulus):
    assert oracles.smallest_irreducible(n) == modulus
    assert find_irreducible(n).modulus == modulus


@pytest.mark.parametrize("n", range(1, 11))
def test_find_irreducible_matches_trial_division(n):
    assert find_irreducible(n).modulus == oracles.smallest_irreducible(n)


def test_irreducibility_agrees_with_trial_division():
    for v in range(4, 1 << 10):
        assert is_irreducible(v) == oracles.irreducible_by_trial_division(v), bin(v)


def test_large_degrees_construct():
    for n in (16, 24, 31):
        spec = find_irreducible(n)
        assert spec.modulus.bit_length() - 1 == n


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        FieldSpec(2, 0b101)  # (x + 1)^2
    with pytest.raises(ValueError):
        find_irreducible(32)


def test_mul_examples():
    assert oracles.poly_mulmod(0b10, 0b100, 0b1011) == 0b011
    assert mul(0b10, 0b100, GF8) == 0b011
    for a in GF8.elements():
        assert mul(a, 1, GF8) == a


def test_pow_examples():
    assert power(0b10, 7, GF8) == 1
    for a in GF8.elements():
        assert power(a, 0, GF8) == 1
        assert power(a, 1, GF8) == a


def test_trace_examples():
    assert trace(0, GF8) == 0
    assert trace(1, GF8) == 1
    assert trace(0b10, GF8) == 0
    for n in (1, 3, 5, 7):
        assert trace(1, find_irreducible(n)) == 1


fields = st.integers(1, 12).map(find_irreducible)


@given(fields, st.data())
def test_field_axioms(spec, data):
    a, b, c = (data.draw(st.integers(0, spec.order - 1)) for _ in range(3))
    assert spec.mul(a, b) == spec.mul(b, a)
    assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
    assert spec.mul(a, b ^ c) == spec.mul(a, b) ^ spec.mul(a, c)
    assert spec.mul(a, b) == oracles.poly_mulmod(a, b, spec.modulus)
    if a:
        assert spec.mul(a, spec.pow(a, spec.order - 2)) == 1
        assert spec.pow(a, spec.order - 1) == 1


@given(fields, st.data())
def test_trace_linear(spec, data):
    a, b = (data.draw(st.integers(0, spec.order - 1)) for _ in range(2))
    assert spec.trace(a ^ b) == spec.trace(a) ^ spec.trace(b)
    assert spec.trace(spec.mul(a, a)) == spec.trace(a)


@pytest.mark.parametrize("n", range(1, 16))
def test_frobenius_and_trace_balance(n):
    spec = find_irreducible(n)
    zeros = 0
    for z in spec.elements():
        s = z
        for _ in range(n):
            s = spec.mul(s, s)
        assert s == z
        zeros += spec.trace(z) == 0
    assert zeros == spec.order // 2

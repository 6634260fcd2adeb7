import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mubcert.boolfun import (
    AnfParseError,
    BooleanFunction,
    DimensionMismatch,
    VariableIndexError,
    add,
    derivative_sum,
    dot,
    from_anf,
    fwht,
    is_bent,
    packed_gram,
    pack_rows,
    walsh_spectrum,
)

import oracles


def tables(max_m=6, min_m=1):
    return st.integers(min_m, max_m).flatmap(
        lambda m: st.lists(st.integers(0, 1), min_size=1 << m, max_size=1 << m).map(
            lambda t: BooleanFunction(m, np.array(t, dtype=np.uint8))))


class TestFromAnf:
    def test_worked_example(self):
        f = from_anf("x1x2+x1x3+x2x4", 4)
        assert f.to_bits() == "0000010100111001"

    def test_zero(self):
        assert from_anf("0", 4).to_bits() == "0" * 16

    def test_x1_is_most_significant(self):
        assert from_anf("x1", 2).table.tolist() == [0, 0, 1, 1]

    def test_constant_one(self):
        assert from_anf("1", 3).to_bits() == "1" * 8

    def test_whitespace_ignored(self):
        assert from_anf(" x1 x2 +\tx3x4 ", 4) == from_anf("x1x2+x3x4", 4)

    @pytest.mark.parametrize("bad", ["", "x1+", "+x1", "x1++x2", "y1", "x", "x1*x2", "2", "x1x1",
                                     "x1+x1", "x1x2+x2x1", "1+1"])
    def test_parse_errors(self, bad):
        with pytest.raises(AnfParseError):
            from_anf(bad, 4)

    @pytest.mark.parametrize("bad", ["x9", "x0", "x1x5"])
    def test_index_out_of_range(self, bad):
        with pytest.raises(VariableIndexError):
            from_anf(bad, 4)

    @given(st.integers(1, 5).flatmap(
        lambda m: st.tuples(st.just(m), st.sets(st.frozensets(st.integers(1, m), min_size=1), max_size=8))))
    def test_matches_direct_evaluation(self, args):
        m, monos = args
        monos = [tuple(sorted(s)) for s in monos]
        expr = "+".join("".join(f"x{k}" for k in mono) for mono in monos) or "0"
        assert from_anf(expr, m).table.tolist() == oracles.anf_table(monos, m)


class TestAdd:
    @given(tables())
    def test_self_inverse(self, f):
        assert add(f, f).is_zero()

    @given(tables())
    def test_zero_identity(self, f):
        assert add(f, BooleanFunction.zero(f.m)) == f

    def test_sum_of_expressions(self):
        assert add(from_anf("x1x2", 4), from_anf("x3x4", 4)) == from_anf("x1x2+x3x4", 4)

    @given(st.data())
    def test_abelian_group(self, data):
        m = data.draw(st.integers(1, 5))
        f, g, h = (BooleanFunction(m, np.array(data.draw(st.lists(st.integers(0, 1), min_size=1 << m,
                                                                   max_size=1 << m)), dtype=np.uint8))
                   for _ in range(3))
        assert f + g == g + f
        assert (f + g) + h == f + (g + h)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            add(from_anf("x1", 2), from_anf("x1", 3))


class TestWalsh:
    def test_zero_function(self):
        assert walsh_spectrum(from_anf("0", 2)).tolist() == [4, 0, 0, 0]

    def test_linear_delta(self):
        assert walsh_spectrum(from_anf("x1", 2)).tolist() == [0, 0, 4, 0]

    def test_x1x2(self):
        # direct 4-point summation
        assert oracles.walsh_direct([0, 0, 0, 1], 2) == [2, 2, 2, -2]
        assert walsh_spectrum(from_anf("x1x2", 2)).tolist() == [2, 2, 2, -2]

    def test_point_lookup(self):
        spec = walsh_spectrum(from_anf("x1", 2))
        assert spec[(1, 0)] == 4 and spec[2] == 4

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_exhaustive_against_hadamard_matrix(self, m):
        n = 1 << m
        every = ((np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
        H = np.array(oracles.hadamard_direct(m))
        assert np.array_equal(fwht(1 - 2 * every), (1 - 2 * every) @ H.T)

    @given(tables(max_m=6))
    def test_butterfly_equals_direct_sum(self, f):
        assert walsh_spectrum(f).tolist() == oracles.walsh_direct(f.table.tolist(), f.m)

    @given(tables(max_m=8))
    def test_parseval_and_parity(self, f):
        v = walsh_spectrum(f).values
        assert int(np.sum(v * v)) == 1 << (2 * f.m)
        assert np.all(np.abs(v) <= 1 << f.m)
        assert np.all((v - (1 << f.m)) % 2 == 0)

    def test_batch_matches_single(self):
        rng = np.random.default_rng(3)
        fs = [BooleanFunction(5, rng.integers(0, 2, 32)) for _ in range(7)]
        batch = fwht(np.stack([f.signs() for f in fs]))
        for row, f in zip(batch, fs):
            assert np.array_equal(row, walsh_spectrum(f).values)


class TestBent:
    def test_x1x2(self):
        assert is_bent(from_anf("x1x2", 2))

    def test_linear_not_bent(self):
        assert not is_bent(from_anf("x1", 2))

    def test_x1x2_x3x4(self):
        spectrum = oracles.walsh_direct(from_anf("x1x2+x3x4", 4).table.tolist(), 4)
        assert all(abs(v) == 4 for v in spectrum)
        assert is_bent(from_anf("x1x2+x3x4", 4))

    def test_odd_m_is_an_error(self):
        with pytest.raises(ValueError):
            is_bent(from_anf("x1x2", 3))

    def test_bent_count_m4(self):
        # 896 bent functions on Z_2^4
        n = 16
        every = ((np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1).astype(np.int64)
        spectra = fwht(1 - 2 * every)
        assert int(np.all(np.abs(spectra) == 4, axis=1).sum()) == 896


class TestDerivativeSum:
    def test_bent_gives_zero(self):
        f = from_anf("x1x2+x3x4", 4)
        assert all(derivative_sum(f, a) == 0 for a in range(1, 16))

    @given(tables())
    def test_zero_shift(self, f):
        assert derivative_sum(f, 0) == 1 << f.m

    def test_linear_example(self):
        assert oracles.derivative_direct([0, 0, 1, 1], 2, (0, 1)) == 4
        assert derivative_sum(from_anf("x1", 2), (0, 1)) == 4

    @given(tables(max_m=5), st.data())
    def test_matches_direct(self, f, data):
        a = data.draw(st.tuples(*[st.integers(0, 1)] * f.m))
        assert derivative_sum(f, a) == oracles.derivative_direct(f.table.tolist(), f.m, a)

    def test_every_bent_function_on_four_variables(self):
        n = 16
        idx = np.arange(n)
        every = ((np.arange(1 << n)[:, None] >> idx[None, :]) & 1).astype(np.uint8)
        bent = every[np.all(np.abs(fwht(1 - 2 * every.astype(np.int64))) == 4, axis=1)]
        for a in range(1, n):
            diff = bent ^ bent[:, idx ^ a]
            assert np.all(diff.sum(axis=1) == n // 2)

    def test_every_bent_quadratic_form_on_six_variables(self):
        m, n = 6, 64
        pairs = list(itertools.combinations(range(m), 2))
        idx = np.arange(n)
        mono = np.array([((idx >> (m - 1 - i)) & (idx >> (m - 1 - j)) & 1) for i, j in pairs],
                        dtype=np.uint8)
        coeffs = ((np.arange(1 << len(pairs))[:, None] >> np.arange(len(pairs))[None, :]) & 1)
        forms = (coeffs.astype(np.uint8) @ mono) & 1
        bent = forms[np.all(np.abs(fwht(1 - 2 * forms.astype(np.int64))) == 8, axis=1)]
        assert len(bent) == 13888  # nondegenerate alternating forms on F_2^6
        for a in range(1, n):
            assert np.all((bent ^ bent[:, idx ^ a]).sum(axis=1) == n // 2)


class TestDot:
    @pytest.mark.parametrize("u,x,want", [((0, 0), (1, 1), 0), ((1, 1), (1, 0), 1), ((1, 1), (1, 1), 0)])
    def test_examples(self, u, x, want):
        assert dot(u, x) == want

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            dot((1, 0), (1, 0, 1))


@pytest.mark.parametrize("m", range(1, 7))
def test_character_sum_identity(m):
    pts = oracles.points(m)
    for z in pts:
        total = sum((-1) ** oracles.dot(w, z) for w in pts)
        assert total == (1 << m) * (not any(z))


def test_bits_round_trip():
    f = from_anf("x1x2+x1x3+x2x4", 4)
    assert BooleanFunction.from_bits(f.to_bits()) == f
    with pytest.raises(ValueError):
        BooleanFunction.from_bits("010")


@given(st.integers(1, 40), st.integers(1, 200), st.randoms())
def test_packed_gram_matches_dense(rows, length, rnd):
    bits = np.array([[rnd.randint(0, 1) for _ in range(length)] for _ in range(rows)], dtype=np.uint8)
    signs = 1 - 2 * bits.astype(np.int64)
    assert np.array_equal(packed_gram(pack_rows(bits), length), signs @ signs.T)

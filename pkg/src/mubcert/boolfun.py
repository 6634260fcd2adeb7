"""Boolean functions on Z_2^m stored as truth tables in lexicographic point order.

Point index ``i`` encodes ``(x1, ..., xm)`` with ``x1`` the most significant bit,
so ``x1`` of point ``i`` is ``(i >> (m - 1)) & 1`` and ``xm`` is ``i & 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

Point = Union[int, Sequence[int]]

_TERM = re.compile(r"(?:x\d+)+")
_VAR = re.compile(r"x(\d+)")


class AnfParseError(ValueError):
    """Malformed algebraic normal form expression."""


class VariableIndexError(AnfParseError):
    """A variable ``x<k>`` with ``k`` outside ``1..m``."""


class DimensionMismatch(ValueError):
    pass


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    m: int
    table: np.ndarray  # uint8 0/1, length 2**m

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be positive, got {self.m}")
        table = np.asarray(self.table, dtype=np.uint8)
        if table.shape != (1 << self.m,):
            raise ValueError(f"truth table must have length {1 << self.m}, got shape {table.shape}")
        if np.any(table > 1):
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "table", _frozen(table.copy()))

    @classmethod
    def zero(cls, m: int) -> "BooleanFunction":
        return cls(m, np.zeros(1 << m, dtype=np.uint8))

    @classmethod
    def from_bits(cls, bits: str) -> "BooleanFunction":
        """Parse a '0'/'1' string of length 2**m."""
        n = len(bits)
        if n < 2 or n & (n - 1) or set(bits) - {"0", "1"}:
            raise ValueError(f"not a truth-table bit string: {bits!r}")
        return cls(n.bit_length() - 1, np.frombuffer(bits.encode(), dtype=np.uint8) - ord("0"))

    def to_bits(self) -> str:
        return (self.table + ord("0")).tobytes().decode()

    def signs(self) -> np.ndarray:
        """The vector ((-1)^g(x))_x as int64."""
        return 1 - 2 * self.table.astype(np.int64)

    def packed(self) -> np.ndarray:
        """Truth table packed into uint64 words, point 0 in the low bit of word 0."""
        return pack_rows(self.table[None, :])[0]

    def __call__(self, x: Point) -> int:
        return int(self.table[point_index(x, self.m)])

    def __add__(self, other: "BooleanFunction") -> "BooleanFunction":
        return add(self, other)

    def __eq__(self, other):
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.m, self.table.tobytes()))

    def __repr__(self):
        return f"BooleanFunction(m={self.m}, table={self.to_bits()!r})"

    def is_zero(self) -> bool:
        return not self.table.any()


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    m: int
    values: np.ndarray  # int64, length 2**m

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen(np.asarray(self.values, dtype=np.int64).copy()))

    def __getitem__(self, u: Point) -> int:
        return int(self.values[point_index(u, self.m)])

    def __len__(self):
        return len(self.values)

    def tolist(self) -> list[int]:
        return self.values.tolist()


def point_index(x: Point, m: int) -> int:
    """Lexicographic index of a point given as an int or as bits (x1, ..., xm)."""
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < (1 << m):
            raise ValueError(f"point index {x} out of range for m={m}")
        return int(x)
    bits = list(x)
    if len(bits) != m:
        raise DimensionMismatch(f"point has {len(bits)} coordinates, expected {m}")
    idx = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"coordinate {b!r} is not a bit")
        idx = (idx << 1) | b
    return idx


def index_point(i: int, m: int) -> tuple[int, ...]:
    return tuple((i >> (m - 1 - k)) & 1 for k in range(m))


def dot(u: Sequence[int], x: Sequence[int]) -> int:
    """Inner product over Z_2."""
    if len(u) != len(x):
        raise DimensionMismatch(f"length mismatch: {len(u)} vs {len(x)}")
    return sum(a & b for a, b in zip(u, x)) & 1


def parse_anf(anf: str, m: int) -> list[int]:
    """Monomials of an ANF string as bit masks over point indices.

    A monomial ``x_k1 x_k2 ...`` becomes the mask with bit ``m - k`` set for each
    variable; the constant 1 is mask 0 and the constant 0 contributes nothing.
    """
    text = "".join(anf.split())
    if not text:
        raise AnfParseError("empty expression")
    masks: list[int] = []
    seen: set[str] = set()
    for term in text.split("+"):
        if term in seen:
            raise AnfParseError(f"duplicate monomial {term!r}")
        seen.add(term)
        if term == "0":
            continue
        if term == "1":
            masks.append(0)
            continue
        if not _TERM.fullmatch(term):
            raise AnfParseError(f"malformed monomial {term!r} in {anf!r}")
        mask = 0
        for k in map(int, _VAR.findall(term)):
            if not 1 <= k <= m:
                raise VariableIndexError(f"variable x{k} out of range for m={m}")
            bit = 1 << (m - k)
            if mask & bit:
                raise AnfParseError(f"repeated variable x{k} in monomial {term!r}")
            mask |= bit
        masks.append(mask)
    if len(set(masks)) != len(masks):
        raise AnfParseError(f"duplicate monomial in {anf!r}")
    return masks


def from_anf(anf: str, m: int) -> BooleanFunction:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    idx = np.arange(1 << m)
    table = np.zeros(1 << m, dtype=np.uint8)
    for mask in parse_anf(anf, m):
        table ^= ((idx & mask) == mask).astype(np.uint8)
    return BooleanFunction(m, table)


def add(f: BooleanFunction, g: BooleanFunction) -> BooleanFunction:
    if f.m != g.m:
        raise DimensionMismatch(f"cannot add functions on Z_2^{f.m} and Z_2^{g.m}")
    return BooleanFunction(f.m, f.table ^ g.table)


def fwht(a: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform along the last axis.

    Works on any leading batch shape; the last axis must have power-of-two length.
    """
    a = np.array(a, dtype=np.int64)
    n = a.shape[-1]
    if n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    lead = a.shape[:-1]
    h = 1
    while h < n:
        a = a.reshape(*lead, n // (2 * h), 2, h)
        lo, hi = a[..., 0, :], a[..., 1, :]
        a = np.stack((lo + hi, lo - hi), axis=-2)
        h *= 2
    return a.reshape(*lead, n)


def walsh_spectrum(f: BooleanFunction) -> WalshSpectrum:
    return WalshSpectrum(f.m, fwht(f.signs()))


def is_bent_spectrum(values: np.ndarray, m: int) -> bool:
    return bool(np.all(np.abs(values) == (1 << (m // 2))))


def is_bent(f: BooleanFunction) -> bool:
    if f.m % 2:
        raise ValueError(f"bentness is undefined for odd m={f.m}")
    return is_bent_spectrum(walsh_spectrum(f).values, f.m)


def derivative_sum(f: BooleanFunction, a: Point) -> int:
    """sum_x (-1)^(f(x) + f(x + a))."""
    shift = point_index(a, f.m)
    idx = np.arange(1 << f.m)
    diff = f.table ^ f.table[idx ^ shift]
    return int(len(diff) - 2 * int(diff.sum()))


# bit-packing helpers shared by the Gram computations

def pack_rows(bits: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array row-wise into uint64 words (little-endian bit order)."""
    bits = np.asarray(bits, dtype=np.uint8)
    rows, n = bits.shape
    width = -(-n // 64) * 64
    padded = np.zeros((rows, width), dtype=np.uint8)
    padded[:, :n] = bits
    return np.packbits(padded, axis=1, bitorder="little").view("<u8")


def packed_gram(packed: np.ndarray, length: int) -> np.ndarray:
    """Gram matrix of the +-1 vectors (-1)^bits from their packed sign bits.

    Entry (i, k) is ``length - 2 * popcount(row_i XOR row_k)``; padding bits are zero
    in every row so they never contribute to the popcount.
    """
    diff = packed[:, None, :] ^ packed[None, :, :]
    disagree = np.bitwise_count(diff).sum(axis=-1, dtype=np.int64)
    return length - 2 * disagree

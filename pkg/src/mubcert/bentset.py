"""Bent sets on Z_2^{2h}: the explicit size-8 set on Z_2^4, Kerdock sets, and the
exhaustive pairwise-bentness gate."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .boolfun import BooleanFunction, DimensionMismatch, add, from_anf, fwht
from .gf2field import FieldSpec, find_irreducible

MAX_H = 7

PAPER_H2_ANF = (
    "0",
    "x1x2+x3x4",
    "x1x2+x1x3+x1x4+x2x3",
    "x1x2+x1x3+x2x4",
    "x1x2+x1x4+x2x3+x2x4",
    "x1x3+x1x4+x2x4+x3x4",
    "x1x3+x2x3+x2x4+x3x4",
    "x1x4+x2x3+x3x4",
)


class BentSetError(ValueError):
    """A candidate failed the pairwise bentness gate."""

    def __init__(self, message: str, verdict: "BentSetVerdict"):
        super().__init__(message)
        self.verdict = verdict


@dataclass(frozen=True)
class BentSetVerdict:
    ok: bool
    pairs_checked: int
    pair: Optional[tuple[int, int]] = None
    witness_u: Optional[int] = None
    witness_value: Optional[int] = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return f"pass ({self.pairs_checked} pairwise sums bent)"
        j, k = self.pair
        return (f"fail: functions {j} and {k} sum to a non-bent function "
                f"(spectrum at u={self.witness_u} is {self.witness_value})")


@dataclass(frozen=True)
class BentSet:
    h: int
    functions: tuple[BooleanFunction, ...]

    @property
    def m(self) -> int:
        return 2 * self.h

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __getitem__(self, j):
        return self.functions[j]

    def tables(self) -> np.ndarray:
        """(r, 2^{2h}) uint8 array of truth tables."""
        return np.stack([f.table for f in self.functions])

    def to_json(self) -> dict:
        return {"h": self.h, "functions": [f.to_bits() for f in self.functions]}

    @classmethod
    def from_json(cls, doc: dict) -> "BentSet":
        try:
            h = int(doc["h"])
            funcs = [BooleanFunction.from_bits(s) for s in doc["functions"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed bent set document: {exc}") from exc
        return normalize(funcs, h=h)


def _check_family(functions: Sequence[BooleanFunction]) -> int:
    if not functions:
        raise ValueError("empty function list")
    m = functions[0].m
    if any(f.m != m for f in functions):
        raise DimensionMismatch("functions do not share a variable count")
    if m % 2:
        raise ValueError(f"bent sets need an even variable count, got m={m}")
    return m


def _first_failure(signs: np.ndarray, j: int, bound: int):
    """First k > j (and witness u) for which signs[j] * signs[k] is not bent."""
    spectra = fwht(signs[j] * signs[j + 1:])
    bad = np.abs(spectra) != bound
    rows = np.flatnonzero(bad.any(axis=1))
    if not len(rows):
        return None
    r = rows[0]
    u = int(np.flatnonzero(bad[r])[0])
    return j + 1 + int(r), u, int(spectra[r, u])


def verify_bent_set(functions: Sequence[BooleanFunction], threads: int = 1) -> BentSetVerdict:
    """Check that every pairwise sum is bent.

    On failure the lexicographically first offending pair (j, k), j < k, is
    reported along with the first spectrum entry whose magnitude is not 2^h.
    """
    m = _check_family(functions)
    r = len(functions)
    n_pairs = r * (r - 1) // 2
    signs = np.stack([f.signs() for f in functions])
    bound = 1 << (m // 2)
    rows = range(r - 1)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda j: _first_failure(signs, j, bound), rows))
    else:
        results = []
        for j in rows:
            results.append(_first_failure(signs, j, bound))
            if results[-1] is not None:
                break
    for j, res in enumerate(results):
        if res is not None:
            k, u, value = res
            return BentSetVerdict(False, n_pairs, (j, k), u, value)
    return BentSetVerdict(True, n_pairs)


def _gate(functions: Sequence[BooleanFunction], h: int, threads: int = 1) -> BentSet:
    verdict = verify_bent_set(functions, threads=threads)
    if not verdict.ok:
        raise BentSetError(verdict.describe(), verdict)
    if len(set(functions)) != len(functions):
        raise BentSetError("functions are not distinct", verdict)
    return BentSet(h, tuple(functions))


def normalize(functions: Sequence[BooleanFunction], h: Optional[int] = None,
              threads: int = 1) -> BentSet:
    """Shift every member by the first so that the first becomes zero.

    Pairwise sums are unchanged by the shift, so the gate result is too.
    """
    m = _check_family(functions)
    if h is not None and m != 2 * h:
        raise DimensionMismatch(f"functions are on Z_2^{m}, expected Z_2^{2 * h}")
    first = functions[0]
    shifted = [add(f, first) for f in functions]
    return _gate(shifted, m // 2, threads)


def paper_bent_set_h2() -> BentSet:
    return _gate([from_anf(s, 4) for s in PAPER_H2_ANF], 2)


def _mul_all(field: FieldSpec, a: int) -> np.ndarray:
    """a * x for every field element x, vectorized over x."""
    xs = np.arange(field.order, dtype=np.int64)
    prod = np.zeros_like(xs)
    for k in range(field.n):
        if a >> k & 1:
            prod ^= xs << k
    for k in range(2 * field.n - 2, field.n - 1, -1):
        hit = (prod >> k) & 1
        prod ^= hit * (field.modulus << (k - field.n))
    return prod


def kerdock_tables(h: int) -> np.ndarray:
    """Truth tables (2^{2h-1} rows) of the Kerdock bent set, zero function first.

    Point (x1..x_{2h}) is read as (x, eps) with x in GF(2^{2h-1}) having
    coefficient bits x1..x_{2h-1} (x1 highest degree) and eps = x_{2h}.
    Member f_a(x, eps) = Q(a x) + eps Tr(a x) with
    Q(z) = sum_{i=1}^{(n-1)/2} Tr(z^(2^i + 1)).
    """
    n = 2 * h - 1
    field = find_irreducible(n)
    tr = np.array([field.trace(z) for z in field.elements()], dtype=np.uint8)
    quad = np.zeros(field.order, dtype=np.uint8)
    for z in field.elements():
        q = 0
        for i in range(1, (n - 1) // 2 + 1):
            q ^= int(tr[field.pow(z, (1 << i) + 1)])
        quad[z] = q
    idx = np.arange(1 << (2 * h))
    x, eps = idx >> 1, (idx & 1).astype(np.uint8)
    tables = np.zeros((field.order, 1 << (2 * h)), dtype=np.uint8)
    for a in range(1, field.order):
        ax = _mul_all(field, a)[x]
        tables[a] = quad[ax] ^ (eps & tr[ax])
    return tables


def kerdock_construct(h: int, threads: int = 1) -> BentSet:
    if not 1 <= h <= MAX_H:
        raise ValueError(f"h must be in 1..{MAX_H}, got {h}")
    functions = [BooleanFunction(2 * h, t) for t in kerdock_tables(h)]
    return _gate(functions, h, threads)

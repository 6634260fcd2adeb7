"""Sets of mutually unbiased bases: assembly from bent sets, exact verification,
the tensor-product construction, and the five-basis fixture in C^4.

Vectors are kept unnormalized. Two vectors A, B from distinct bases are unbiased
when |<A, B>|^2 * d == |A|^2 * |B|^2, which needs no square roots and is checked
with integer arithmetic whenever the entries are (Gaussian) integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .bentset import BentSet
from .boolfun import fwht

REAL = "real_pm1"
GAUSS = "gauss_int"
COMPLEX = "complex"
FIELDS = (REAL, GAUSS, COMPLEX)

DEFAULT_TOL = 1e-9


class MubFormatError(ValueError):
    """Malformed MUB document or inconsistent array shapes."""


class MubVerificationError(ValueError):
    def __init__(self, message: str, report: "MubReport"):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True, eq=False)
class MubSet:
    """b bases of d vectors each.

    ``re`` and ``im`` have shape (b, d, d); ``im`` is None for real sets. Integer
    dtypes for the real and Gaussian-integer tags, float64 for complex.
    """

    d: int
    field: str
    re: np.ndarray
    im: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.field not in FIELDS:
            raise MubFormatError(f"unknown field tag {self.field!r}")
        dtype = np.float64 if self.field == COMPLEX else np.int64
        re = np.array(self.re, dtype=dtype)
        if re.ndim != 3 or re.shape[1:] != (self.d, self.d) or re.shape[0] < 1:
            raise MubFormatError(f"bases must have shape (b, {self.d}, {self.d}), got {re.shape}")
        re.setflags(write=False)
        object.__setattr__(self, "re", re)
        if self.field == REAL:
            if self.im is not None:
                raise MubFormatError("real sets carry no imaginary part")
        else:
            im = np.zeros_like(re) if self.im is None else np.array(self.im, dtype=dtype)
            if im.shape != re.shape:
                raise MubFormatError("real and imaginary parts differ in shape")
            im.setflags(write=False)
            object.__setattr__(self, "im", im)

    @property
    def b(self) -> int:
        return self.re.shape[0]

    @property
    def exact(self) -> bool:
        return self.field != COMPLEX

    def imag(self) -> np.ndarray:
        return np.zeros_like(self.re) if self.im is None else self.im

    def as_complex(self) -> np.ndarray:
        return self.re + 1j * self.imag()

    def subset(self, indices) -> "MubSet":
        idx = list(indices)
        return MubSet(self.d, self.field, self.re[idx], None if self.im is None else self.im[idx])

    def vector(self, basis: int, k: int):
        if self.im is None:
            return self.re[basis, k].tolist()
        return list(zip(self.re[basis, k].tolist(), self.im[basis, k].tolist()))

    # JSON documents: entries are ints (real_pm1) or [re, im] pairs

    def to_json(self) -> dict:
        if self.field == REAL:
            bases = self.re.tolist()
        else:
            bases = np.stack((self.re, self.im), axis=-1).tolist()
        return {"dimension": self.d, "field": self.field, "bases": bases}

    @classmethod
    def from_json(cls, doc) -> "MubSet":
        if not isinstance(doc, dict):
            raise MubFormatError("document must be a JSON object")
        try:
            d, tag, bases = doc["dimension"], doc["field"], doc["bases"]
        except KeyError as exc:
            raise MubFormatError(f"missing key {exc}") from exc
        if tag not in FIELDS:
            raise MubFormatError(f"unknown field tag {tag!r}")
        if not isinstance(d, int) or isinstance(d, bool) or d < 2:
            raise MubFormatError(f"dimension must be an integer > 1, got {d!r}")
        if not isinstance(bases, list) or not bases:
            raise MubFormatError("bases must be a non-empty list")
        want = int if tag != COMPLEX else (int, float)
        for bi, basis in enumerate(bases):
            if not isinstance(basis, list) or len(basis) != d:
                raise MubFormatError(f"basis {bi} must hold {d} vectors")
            for vi, vec in enumerate(basis):
                if not isinstance(vec, list) or len(vec) != d:
                    raise MubFormatError(f"vector {vi} of basis {bi} must have {d} entries")
                for entry in vec:
                    parts = [entry] if tag == REAL else entry
                    if tag != REAL and (not isinstance(entry, list) or len(entry) != 2):
                        raise MubFormatError(f"entry {entry!r} in basis {bi} must be a [re, im] pair")
                    if not all(isinstance(p, want) and not isinstance(p, bool) for p in parts):
                        raise MubFormatError(f"entry {entry!r} in basis {bi} has the wrong type")
        arr = np.array(bases, dtype=np.float64 if tag == COMPLEX else np.int64)
        if tag == REAL:
            return cls(d, tag, arr)
        return cls(d, tag, arr[..., 0], arr[..., 1])

    def dump(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json()) + "\n")

    @classmethod
    def load(cls, path) -> "MubSet":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise MubFormatError(f"{path}: not valid JSON ({exc})") from exc
        return cls.from_json(doc)


@dataclass(frozen=True)
class Violation:
    kind: str  # "orthogonality" | "unbiasedness" | "degenerate" | "bound"
    basis: tuple[int, int] = (-1, -1)
    vectors: tuple[int, int] = (-1, -1)
    value: object = None
    expected: object = None

    def describe(self) -> str:
        if self.kind == "bound":
            return f"bound: {self.value} bases exceeds the maximum {self.expected}"
        (i, k), (s, t) = self.basis, self.vectors
        return (f"{self.kind}: basis {i} vector {s} vs basis {k} vector {t}: "
                f"got {self.value}, expected {self.expected}")


@dataclass
class MubReport:
    d: int
    b: int
    field: str
    mode: str
    tolerance: float
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        head = f"d={self.d} b={self.b} field={self.field} mode={self.mode}"
        if self.ok:
            return f"{head}: pass"
        return f"{head}: FAIL ({len(self.violations)} violations)"

    def to_json(self) -> dict:
        return {
            "dimension": self.d, "bases": self.b, "field": self.field, "mode": self.mode,
            "tolerance": self.tolerance, "ok": self.ok,
            "violations": [
                {"kind": v.kind, "basis": list(v.basis), "vectors": list(v.vectors),
                 "value": _plain(v.value), "expected": _plain(v.expected)}
                for v in self.violations
            ],
        }


def _plain(x):
    if isinstance(x, np.generic):
        return x.item()
    return x


def _cross(re1, im1, re2, im2):
    """Real and imaginary parts of the matrix of <A, B> = sum A conj(B)."""
    return re1 @ re2.T + im1 @ im2.T, im1 @ re2.T - re1 @ im2.T


def verify_mub_set(mubs: MubSet, mode: Optional[str] = None,
                   tolerance: float = DEFAULT_TOL) -> MubReport:
    """Check orthogonality within bases, unbiasedness across bases, and the
    count bounds b <= d + 1 (b <= d/2 + 1 for real sets).

    ``mode`` is "exact" or "tolerance"; it defaults to exact for integer data.
    Exact mode on float data compares with zero tolerance.
    """
    if mode is None:
        mode = "exact" if mubs.exact else "tolerance"
    if mode not in ("exact", "tolerance"):
        raise ValueError(f"unknown verification mode {mode!r}")
    tol = 0.0 if mode == "exact" else tolerance
    exact = mode == "exact" and mubs.exact
    report = MubReport(mubs.d, mubs.b, mubs.field, mode, tol)
    d = mubs.d

    if mode == "exact" or not mubs.exact:
        re, im = mubs.re, mubs.imag()
    else:
        re, im = mubs.re.astype(np.float64), mubs.imag().astype(np.float64)
    if exact:
        # headroom check: |<A,B>|^2 * d must stay inside int64
        peak = int(np.max(np.abs(re)) + np.max(np.abs(im))) if re.size else 0
        if (peak * peak * d) ** 2 * d >= 2 ** 62:
            re, im = re.astype(object), im.astype(object)

    norms = (re * re + im * im).sum(axis=2)  # (b, d)

    for i in range(mubs.b):
        for k in range(i, mubs.b):
            gre, gim = _cross(re[i], im[i], re[k], im[k])
            mag2 = gre * gre + gim * gim
            if i == k:
                for s in np.flatnonzero(norms[i] == 0):
                    report.violations.append(Violation("degenerate", (i, i), (int(s), int(s)), 0))
                upper = np.triu(np.ones((d, d), dtype=bool), 1)
                bad = upper & ((mag2 != 0) if exact else (np.abs(mag2) > tol))
                for s, t in np.argwhere(bad):
                    report.violations.append(
                        Violation("orthogonality", (i, i), (int(s), int(t)), _plain(mag2[s, t]), 0))
            else:
                target = np.outer(norms[i], norms[k])
                lhs = mag2 * d
                bad = np.argwhere(lhs != target) if exact else np.argwhere(
                    np.abs(lhs - target) > tol)
                for s, t in bad:
                    report.violations.append(
                        Violation("unbiasedness", (i, k), (int(s), int(t)),
                                  _plain(lhs[s, t]), _plain(target[s, t])))
    limit = d // 2 + 1 if mubs.field == REAL else d + 1
    if mubs.b > limit:
        report.violations.append(Violation("bound", value=mubs.b, expected=limit))
    return report


def sylvester_hadamard(m: int) -> np.ndarray:
    """H[u, x] = (-1)^(u . x) for u, x in Z_2^m, lexicographic."""
    return fwht(np.eye(1 << m, dtype=np.int64))


def from_bent_set(bent: BentSet, check: bool = True) -> MubSet:
    """2^h times the standard basis, then for each g_j the basis with vector u
    equal to ((-1)^(g_j(x) + u . x))_x."""
    d = 1 << bent.m
    char = sylvester_hadamard(bent.m)
    bases = [(1 << bent.h) * np.eye(d, dtype=np.int64)]
    for g in bent:
        bases.append(char * g.signs()[None, :])
    mubs = MubSet(d, REAL, np.stack(bases))
    if check:
        _require(mubs, "bent-set MUBs")
    return mubs


def _require(mubs: MubSet, what: str) -> None:
    report = verify_mub_set(mubs)
    if not report.ok:
        raise MubVerificationError(f"{what} failed verification: {report.violations[0].describe()}",
                                   report)


def _promote(a: str, b: str) -> str:
    return FIELDS[max(FIELDS.index(a), FIELDS.index(b))]


def product(m1: MubSet, m2: MubSet, check: bool = True) -> MubSet:
    """Pair basis i of m1 with basis i of m2 and take all tensor products.

    Vector index s * d2 + t is the tensor product of vector s of m1 with
    vector t of m2.
    """
    if check:
        _require(m1, "first factor")
        _require(m2, "second factor")
    b = min(m1.b, m2.b)
    d = m1.d * m2.d
    tag = _promote(m1.field, m2.field)

    def kron(x, y):
        return np.stack([np.einsum("si,tj->stij", x[i], y[i]).reshape(d, d) for i in range(b)])

    r1, i1, r2, i2 = m1.re, m1.imag(), m2.re, m2.imag()
    re = kron(r1, r2) - kron(i1, i2)
    out = MubSet(d, tag, re, None if tag == REAL else kron(r1, i2) + kron(i1, r2))
    if check:
        _require(out, "product")
    return out


_C4 = [
    ["2 0 0 0", "0 2 0 0", "0 0 2 0", "0 0 0 2"],
    ["1 1 1 1", "1 1 -1 -1", "1 -1 1 -1", "1 -1 -1 1"],
    ["1 1 i -i", "1 1 -i i", "1 -1 i i", "1 -1 -i -i"],
    ["1 i 1 -i", "1 i -1 i", "1 -i 1 i", "1 -i -1 -i"],
    ["1 i i -1", "1 i -i 1", "1 -i i 1", "1 -i -i -1"],
]


def _gauss(tok: str) -> tuple[int, int]:
    if tok.endswith("i"):
        return 0, -1 if tok.startswith("-") else 1
    return int(tok), 0


def fixture_c4_5mubs() -> MubSet:
    """Five MUBs in C^4 with entries in {0, +-1, +-2, +-i}."""
    ent = np.array([[[_gauss(t) for t in row.split()] for row in basis] for basis in _C4])
    return MubSet(4, GAUSS, ent[..., 0], ent[..., 1])

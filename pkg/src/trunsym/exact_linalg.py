"""Exact scalars over Q and F_p, and row reduction over those fields.

Rows are sparse: a row is a mapping ``column -> nonzero scalar``. Over Q the
elimination is fraction-free on primitive integer rows and only the final
normalisation introduces ``Fraction`` entries. Over F_p rows are densified
in chunks and handed to the kernel in :mod:`trunsym.kernels`.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

import numpy as np

from .kernels import MAX_PRIME, rref_modp

Row = dict[int, "Scalar"]
Scalar = "Fraction | int"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``characteristic == 0``, otherwise the prime field F_p."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or (p and not is_prime(p)):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        if p >= MAX_PRIME:
            raise ValueError(f"primes >= 2**31 are not supported (got {p})")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    def __str__(self):
        return self.name

    def coerce(self, x) -> Fraction | int:
        """Map an int or Fraction into the field."""
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes in {self.name}")
            return x.numerator * pow(den, -1, p) % p
        return int(x) % p

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        return a + b if self.characteristic == 0 else (a + b) % self.characteristic

    def sub(self, a, b):
        return a - b if self.characteristic == 0 else (a - b) % self.characteristic

    def mul(self, a, b):
        return a * b if self.characteristic == 0 else (a * b) % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


def field_from_char(char: int) -> FieldSpec:
    return QQ if char == 0 else FieldSpec(char)


@dataclass(frozen=True)
class ExactMatrix:
    """Sparse matrix over an exact field.

    ``rows`` holds one tuple of ``(column, value)`` pairs per row, sorted by
    column, with no zero values.
    """

    rows: tuple[tuple[tuple[int, Fraction | int], ...], ...]
    ncols: int
    field: FieldSpec = dc_field(default=QQ)

    def __post_init__(self):
        for r in self.rows:
            for c, v in r:
                if not 0 <= c < self.ncols:
                    raise ValueError(f"column {c} out of range for {self.ncols} columns")
                if v == 0:
                    raise ValueError("zero entries must not be stored")

    @classmethod
    def from_sparse(cls, rows: Iterable[Mapping[int, object]], ncols: int, field: FieldSpec = QQ):
        packed = []
        for r in rows:
            items = []
            for c, v in sorted(r.items()):
                v = field.coerce(v)
                if v != 0:
                    items.append((c, v))
            packed.append(tuple(items))
        return cls(tuple(packed), ncols, field)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]], field: FieldSpec = QQ, ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("rows have differing lengths")
        return cls.from_sparse(({c: v for c, v in enumerate(r)} for r in rows), ncols, field)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> Row:
        return dict(self.rows[i])

    def to_dense(self) -> list[list]:
        zero = self.field.zero()
        out = []
        for r in self.rows:
            dense = [zero] * self.ncols
            for c, v in r:
                dense[c] = v
            out.append(dense)
        return out

    def pivots(self) -> list[int]:
        return [r[0][0] for r in self.rows if r]


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = row[min(row)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        row = {c: v // g for c, v in row.items()}
    return row


def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    vals = {c: Fraction(v) for c, v in row.items() if v != 0}
    if not vals:
        return {}
    den = lcm(*(v.denominator for v in vals.values()))
    return _primitive({c: int(v * den) for c, v in vals.items()})


class RowSpace:
    """Incrementally built echelon basis of a row space.

    ``extend`` accepts sparse rows; ``rank`` and ``contains`` answer queries;
    ``matrix`` returns the canonical reduced row echelon form.
    """

    def __init__(self, ncols: int, field: FieldSpec = QQ, chunk: int | None = None):
        self.ncols = ncols
        self.field = field
        # Q: pivot column -> primitive integer row (echelon, not reduced)
        self._int_pivots: dict[int, dict[int, int]] = {}
        # F_p: reduced basis as a dense array plus pending rows
        self._dense = np.zeros((0, ncols), dtype=np.int64)
        self._pending: list[Mapping[int, object]] = []
        self._chunk = chunk or max(64, 2 * ncols)

    # -- building ---------------------------------------------------------
    def add(self, row: Mapping[int, object]) -> None:
        if self.field.is_rational:
            self._insert_int(_integer_row(row))
        else:
            self._pending.append(row)
            if len(self._pending) >= self._chunk:
                self._flush()

    def extend(self, rows: Iterable[Mapping[int, object]], stop_at: int | None = None) -> "RowSpace":
        """Add rows; if ``stop_at`` is given, stop once the rank reaches it."""
        for r in rows:
            self.add(r)
            if stop_at is not None and self._maybe_rank() >= stop_at:
                break
        return self

    def _maybe_rank(self) -> int:
        # cheap rank lower bound without forcing a flush on every row
        if self.field.is_rational:
            return len(self._int_pivots)
        return self._dense.shape[0]

    def _insert_int(self, row: dict[int, int]) -> bool:
        pivots = self._int_pivots
        while row:
            c = min(row)
            pr = pivots.get(c)
            if pr is None:
                pivots[c] = row
                return True
            a, b = pr[c], row[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {k: a * v for k, v in row.items()}
            for k, v in pr.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
        return False

    def _flush(self) -> None:
        if not self._pending:
            return
        p = self.field.characteristic
        block = np.zeros((self._dense.shape[0] + len(self._pending), self.ncols), dtype=np.int64)
        block[: self._dense.shape[0]] = self._dense
        base = self._dense.shape[0]
        for i, r in enumerate(self._pending):
            for c, v in r.items():
                block[base + i, c] = self.field.coerce(v)
        self._pending = []
        reduced, pivots = rref_modp(block, p)
        self._dense = reduced[: len(pivots)].copy()

    # -- queries ----------------------------------------------------------
    @property
    def rank(self) -> int:
        if self.field.is_rational:
            return len(self._int_pivots)
        self._flush()
        return self._dense.shape[0]

    def contains(self, v: Mapping[int, object] | Sequence[object]) -> bool:
        v = _as_sparse(v, self.ncols)
        if self.field.is_rational:
            row = _integer_row(v)
            pivots = self._int_pivots
            while row:
                c = min(row)
                pr = pivots.get(c)
                if pr is None:
                    return False
                a, b = pr[c], row[c]
                new = {k: a * x for k, x in row.items()}
                for k, x in pr.items():
                    w = new.get(k, 0) - b * x
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                row = _primitive(new) if new else new
            return True
        self._flush()
        return in_row_space(self.matrix(), v)

    def matrix(self) -> ExactMatrix:
        """Reduced row echelon basis (unit pivots, cleared pivot columns)."""
        if self.field.is_rational:
            return _rref_from_int_pivots(self._int_pivots, self.ncols)
        self._flush()
        rows = []
        for r in self._dense:
            nz = np.flatnonzero(r)
            rows.append(tuple((int(c), int(r[c])) for c in nz))
        return ExactMatrix(tuple(rows), self.ncols, self.field)


def _rref_from_int_pivots(pivots: dict[int, dict[int, int]], ncols: int) -> ExactMatrix:
    order = sorted(pivots)
    rows = {c: {k: Fraction(v, pivots[c][c]) for k, v in pivots[c].items()} for c in order}
    for c in reversed(order):
        pr = rows[c]
        for c2 in order:
            if c2 >= c:
                break
            r = rows[c2]
            f = r.get(c)
            if f:
                for k, v in pr.items():
                    w = r.get(k, 0) - f * v
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
    packed = tuple(tuple(sorted(rows[c].items())) for c in order)
    return ExactMatrix(packed, ncols, QQ)


def _as_sparse(v, ncols: int) -> dict:
    if isinstance(v, Mapping):
        if any(not 0 <= c < ncols for c in v):
            raise ValueError("vector index out of range")
        return {c: x for c, x in v.items() if x != 0}
    v = list(v)
    if len(v) != ncols:
        raise ValueError(f"vector has length {len(v)}, expected {ncols}")
    return {c: x for c, x in enumerate(v) if x != 0}


def echelonize(m: ExactMatrix) -> ExactMatrix:
    """Reduced row echelon form of ``m``; zero rows are dropped."""
    return RowSpace(m.ncols, m.field).extend(dict(r) for r in m.rows).matrix()


def rank(m: ExactMatrix) -> int:
    return RowSpace(m.ncols, m.field).extend(dict(r) for r in m.rows).rank


def in_row_space(m: ExactMatrix, v) -> bool:
    """Membership of ``v`` in the row space of the reduced echelon matrix ``m``."""
    F = m.field
    vec = {c: F.coerce(x) for c, x in _as_sparse(v, m.ncols).items()}
    vec = {c: x for c, x in vec.items() if x != 0}
    for r in m.rows:
        if not r:
            continue
        c0, lead = r[0]
        f = vec.get(c0)
        if not f:
            continue
        f = F.div(f, lead)
        for c, x in r:
            w = F.sub(vec.get(c, 0), F.mul(f, x))
            if w:
                vec[c] = w
            else:
                vec.pop(c, None)
    return not vec


def left_kernel(m: ExactMatrix) -> ExactMatrix:
    """Reduced echelon basis of ``{c : c . m = 0}`` (vectors of length nrows)."""
    F = m.field
    width = m.ncols + m.nrows
    aug = []
    for i, r in enumerate(m.rows):
        row = dict(r)
        row[m.ncols + i] = F.one()
        aug.append(row)
    red = RowSpace(width, F).extend(aug).matrix()
    kernel = []
    for r in red.rows:
        if r and r[0][0] >= m.ncols:
            kernel.append(tuple((c - m.ncols, v) for c, v in r))
    return ExactMatrix(tuple(kernel), m.nrows, F)

"""Symmetric polynomials in the orbit-sum (monomial symmetric) basis.

A :class:`Partition` is a weakly decreasing exponent vector of length ``n``;
its orbit sum ``P[a1,...,an]`` is the sum of all distinct monomials whose
exponent vector is a permutation of it. :class:`SymPolynomial` stores
coefficients in that basis; :class:`DensePolynomial` stores raw monomials and
backs the brute-force oracle.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Mapping

from .exact_linalg import QQ, FieldSpec


class NotSymmetric(ValueError):
    pass


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(a) for a in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(a < 0 for a in parts):
            raise ValueError(f"negative exponent in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, parts: Iterable[int], n: int) -> "Partition":
        """Sort ``parts`` decreasingly and pad with zeros to length ``n``."""
        parts = sorted((int(a) for a in parts), reverse=True)
        while len(parts) > n and parts[-1] == 0:
            parts.pop()
        if len(parts) > n:
            raise ValueError(f"{tuple(parts)} has more than {n} nonzero parts")
        return cls(tuple(parts) + (0,) * (n - len(parts)))

    @property
    def n(self) -> int:
        return len(self.parts)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def weight(self) -> int:
        """Number of nonzero parts."""
        return sum(1 for a in self.parts if a)

    @property
    def leading_multiplicity(self) -> int:
        """Multiplicity of the largest part (``n`` for the zero partition)."""
        if not self.parts:
            return 0
        return sum(1 for a in self.parts if a == self.parts[0])

    @property
    def largest(self) -> int:
        return self.parts[0] if self.parts else 0

    def orbit_size(self) -> int:
        """Number of monomials in the orbit sum, n!/(lambda_1! ... lambda_m!)."""
        return factorial(self.n) // prod(factorial(m) for m in Counter(self.parts).values())

    def abbreviated(self) -> tuple[int, ...]:
        return tuple(a for a in self.parts if a)

    def __str__(self):
        short = self.abbreviated()
        return "P[" + ",".join(map(str, short or (0,))) + "]"

    __repr__ = __str__


_PART_RE = re.compile(r"^\s*P\[\s*([0-9,\s]*)\]\s*$")


def parse_partition(text: str, n: int) -> Partition:
    """Parse ``"P[3,3]"``; trailing zeros may be omitted."""
    m = _PART_RE.match(text)
    if not m:
        raise ValueError(f"not an orbit sum: {text!r}")
    body = m.group(1).strip()
    parts = [int(x) for x in body.split(",") if x.strip()] if body else []
    return Partition.of(parts, n)


def partitions(k: int, n: int, max_part: int | None = None) -> list[Partition]:
    """Partitions of ``k`` into at most ``n`` parts, each at most ``max_part``.

    Ordered reverse-lexicographically on parts, so ``(k, 0, ..., 0)`` comes first.
    """
    return [Partition(p) for p in _partition_tuples(k, n, k if max_part is None else max_part)]


@lru_cache(maxsize=None)
def _partition_tuples(k: int, n: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),) if k == 0 else ()
    out = []
    for first in range(min(k, max_part), -1, -1):
        if first * n < k:
            break
        for rest in _partition_tuples(k - first, n - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def distinct_permutations(seq: Iterable[int]) -> Iterator[tuple[int, ...]]:
    """Distinct permutations in lexicographic order, each visited once."""
    a = sorted(seq)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1:] = reversed(a[i + 1:])


@lru_cache(maxsize=200_000)
def structure_constants(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Integer coefficients k_c of ``P_a * P_b = sum_c k_c P_c``.

    Enumerates distinct permutations ``b'`` of ``b`` against the fixed
    representative ``a`` and tallies ``N_c = #{b' : sort(a + b') = c}``.
    Counting over the whole orbit of ``c`` gives
    ``k_c * |orbit(c)| = N_c * |orbit(a)|``.
    """
    if len(a) != len(b):
        raise ValueError("partitions have different lengths")
    pa, pb = Partition(a), Partition(b)
    if pb.orbit_size() > pa.orbit_size():
        a, b, pa, pb = b, a, pb, pa
    tally: Counter = Counter()
    for bp in distinct_permutations(b):
        c = tuple(sorted((x + y for x, y in zip(a, bp)), reverse=True))
        tally[c] += 1
    oa = pa.orbit_size()
    out = []
    for c, count in sorted(tally.items(), reverse=True):
        num = count * oa
        oc = Partition(c).orbit_size()
        assert num % oc == 0
        out.append((c, num // oc))
    return tuple(out)


# ---------------------------------------------------------------------------
# symmetric polynomials in the orbit-sum basis



def _join_terms(pairs) -> str:
    """Render ``(coefficient, body)`` pairs as ``a*X + b*Y - c*Z``."""
    text = ""
    for c, body in pairs:
        neg = c < 0
        c = -c if neg else c
        piece = body if c == 1 else f"{c}*{body}"
        if not text:
            text = ("-" if neg else "") + piece
        else:
            text += (" - " if neg else " + ") + piece
    return text

class SymPolynomial:
    """Element of F[x_1..x_n]^{S_n} as a map Partition -> coefficient."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, terms: Mapping[Partition, object], n: int, field: FieldSpec = QQ):
        self.n = n
        self.field = field
        clean = {}
        for part, c in terms.items():
            if part.n != n:
                raise ValueError(f"{part} does not have {n} parts")
            c = field.coerce(c)
            if c != 0:
                clean[part] = c
        self.terms: dict[Partition, object] = clean

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, n: int, field: FieldSpec = QQ):
        return cls({}, n, field)

    @classmethod
    def one(cls, n: int, field: FieldSpec = QQ):
        return cls({Partition((0,) * n): 1}, n, field)

    @classmethod
    def orbit(cls, parts: Iterable[int], n: int, field: FieldSpec = QQ, coeff=1):
        return cls({Partition.of(parts, n): coeff}, n, field)

    # basic protocol ----------------------------------------------------
    def _check(self, other: "SymPolynomial"):
        if not isinstance(other, SymPolynomial):
            raise TypeError(f"expected SymPolynomial, got {type(other).__name__}")
        if other.n != self.n or other.field != self.field:
            raise ValueError("operands live in different rings")

    def __eq__(self, other):
        if not isinstance(other, SymPolynomial):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for part, c in other.terms.items():
            out[part] = F.add(out.get(part, 0), c)
        return SymPolynomial(out, self.n, F)

    def __neg__(self):
        return SymPolynomial({k: self.field.neg(v) for k, v in self.terms.items()}, self.n, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymPolynomial":
        c = self.field.coerce(c)
        return SymPolynomial({k: self.field.mul(c, v) for k, v in self.terms.items()}, self.n, self.field)

    def __mul__(self, other):
        if isinstance(other, (int,)):
            return self.scale(other)
        return sym_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = SymPolynomial.one(self.n, self.field)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # gradings -------------------------------------------------------------
    def degrees(self) -> set[int]:
        return {p.degree for p in self.terms}

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, k: int) -> "SymPolynomial":
        return SymPolynomial({p: c for p, c in self.terms.items() if p.degree == k}, self.n, self.field)

    def __str__(self):
        if not self.terms:
            return "0"
        order = sorted(self.terms, key=lambda p: (-p.degree, tuple(-a for a in p.parts)))
        return _join_terms((self.terms[p], str(p)) for p in order)

    def __repr__(self):
        return f"SymPolynomial({self}, n={self.n}, field={self.field})"


_TERM_RE = re.compile(r"\s*(?:(-?\s*[0-9]+(?:/[0-9]+)?)\s*\*\s*)?(P\[[0-9,\s]*\])\s*")


def parse_sym(text: str, n: int, field: FieldSpec = QQ) -> SymPolynomial:
    """Parse ``"2*P[1,1] + P[2] - 3/2*P[3]"``."""
    from fractions import Fraction

    text = text.strip()
    if text == "0":
        return SymPolynomial.zero(n, field)
    out = SymPolynomial.zero(n, field)
    # split on + and - at top level, keeping the sign with the term
    chunks = re.split(r"(?=[+-]\s*(?:[0-9]|P))", text)
    for chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk[0] in "+-":
            sign = -1 if chunk[0] == "-" else 1
            chunk = chunk[1:]
        m = _TERM_RE.fullmatch(chunk)
        if not m:
            raise ValueError(f"cannot parse term {chunk!r}")
        coeff = Fraction(m.group(1).replace(" ", "")) if m.group(1) else Fraction(1)
        out = out + SymPolynomial({parse_partition(m.group(2), n): sign * coeff}, n, field)
    return out


def orbit_mul(a: Partition, b: Partition, field: FieldSpec = QQ) -> SymPolynomial:
    if a.n != b.n:
        raise ValueError("partitions have different numbers of variables")
    terms = {Partition(c): k for c, k in structure_constants(a.parts, b.parts)}
    return SymPolynomial(terms, a.n, field)


def sym_mul(f: SymPolynomial, g: SymPolynomial) -> SymPolynomial:
    f._check(g)
    F = f.field
    acc: dict[tuple[int, ...], object] = {}
    for pa, ca in f.terms.items():
        for pb, cb in g.terms.items():
            w = F.mul(ca, cb)
            for c, k in structure_constants(pa.parts, pb.parts):
                acc[c] = F.add(acc.get(c, 0), F.mul(w, k))
    return SymPolynomial({Partition(c): v for c, v in acc.items()}, f.n, F)


def power_sum(i: int, n: int, field: FieldSpec = QQ) -> SymPolynomial:
    if i < 1:
        raise ValueError("power sums are indexed from 1")
    return SymPolynomial.orbit((i,), n, field)


def elementary_symmetric(k: int, n: int, field: FieldSpec = QQ) -> SymPolynomial:
    if not 1 <= k <= n:
        raise ValueError(f"elementary symmetric index {k} outside 1..{n}")
    return SymPolynomial.orbit((1,) * k, n, field)


def newton_next(known: list[SymPolynomial], n: int, field: FieldSpec = QQ) -> SymPolynomial:
    """Next power sum from ``n`` consecutive ones ``P_{m+1}, ..., P_{m+n}``.

    P_{m+n+1} = s_1 P_{m+n} - s_2 P_{m+n-1} + ... + (-1)^{n+1} s_n P_{m+1}.
    """
    if len(known) != n:
        raise ValueError(f"need {n} consecutive power sums, got {len(known)}")
    degs = []
    for f in known:
        if len(f.terms) != 1 or f.n != n or f.field != field:
            raise ValueError("inputs must be power sums in the same ring")
        (part,) = f.terms
        if part.weight != 1 or f.terms[part] != field.one():
            raise ValueError(f"{f} is not a power sum")
        degs.append(part.degree)
    if any(degs[i + 1] != degs[i] + 1 for i in range(n - 1)):
        raise ValueError(f"power sums are not consecutive: degrees {degs}")
    out = SymPolynomial.zero(n, field)
    for j in range(1, n + 1):
        term = elementary_symmetric(j, n, field) * known[n - j]
        out = out + term if j % 2 else out - term
    return out


# ---------------------------------------------------------------------------
# dense monomial oracle


class DensePolynomial:
    """Element of F[x_1..x_n] as a map exponent tuple -> coefficient."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, terms: Mapping[tuple[int, ...], object], n: int, field: FieldSpec = QQ):
        self.n = n
        self.field = field
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            c = field.coerce(c)
            if c != 0:
                clean[e] = field.add(clean.get(e, 0), c)
                if clean[e] == 0:
                    del clean[e]
        self.terms = clean

    @classmethod
    def monomial(cls, exps, field: FieldSpec = QQ, coeff=1):
        exps = tuple(exps)
        return cls({exps: coeff}, len(exps), field)

    def __eq__(self, other):
        if not isinstance(other, DensePolynomial):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.field, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "DensePolynomial"):
        if other.n != self.n or other.field != self.field:
            raise ValueError("operands live in different rings")
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = F.add(out.get(e, 0), c)
        return DensePolynomial(out, self.n, F)

    def __neg__(self):
        return DensePolynomial({e: self.field.neg(c) for e, c in self.terms.items()}, self.n, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return dense_mul(self, other)

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def __str__(self):
        if not self.terms:
            return "0"
        def mono(e):
            return "*".join(f"x{i + 1}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a) or "1"
        return _join_terms((self.terms[e], mono(e)) for e in sorted(self.terms, reverse=True))

    __repr__ = __str__


def dense_mul(f: DensePolynomial, g: DensePolynomial) -> DensePolynomial:
    if f.n != g.n or f.field != g.field:
        raise ValueError("operands live in different rings")
    F = f.field
    out: dict[tuple[int, ...], object] = {}
    for e1, c1 in f.terms.items():
        for e2, c2 in g.terms.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = F.add(out.get(e, 0), F.mul(c1, c2))
    return DensePolynomial(out, f.n, F)


def expand_to_monomials(f: SymPolynomial) -> DensePolynomial:
    out = {}
    for part, c in f.terms.items():
        for e in distinct_permutations(part.parts):
            out[e] = c
    return DensePolynomial(out, f.n, f.field)


def symmetrize(g: DensePolynomial) -> SymPolynomial:
    """Rewrite a symmetric dense polynomial in the orbit-sum basis."""
    out = {}
    seen = set()
    for e, c in g.terms.items():
        part = Partition.of(e, g.n)
        if part in seen:
            continue
        seen.add(part)
        for other in distinct_permutations(part.parts):
            if g.terms.get(other, 0) != c:
                raise NotSymmetric(f"exponents {e} and {other} carry different coefficients")
        out[part] = c
    return SymPolynomial(out, g.n, g.field)

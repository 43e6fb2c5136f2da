"""Graded membership in the full polynomial ring F[x_1..x_n].

Ideals here are generated by homogeneous polynomials, so membership of a
homogeneous element is decided by linear algebra in a single degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact_linalg import QQ, ExactMatrix, FieldSpec, RowSpace, in_row_space
from .orbit_algebra import DensePolynomial, elementary_symmetric, expand_to_monomials


@lru_cache(maxsize=None)
def monomials(k: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree ``k`` in ``n`` variables, lexicographically descending."""
    if n == 0:
        return ((),) if k == 0 else ()
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in monomials(k - first, n - 1):
            out.append((first,) + rest)
    return tuple(out)


def elementary_dense(n: int, field: FieldSpec = QQ) -> list[DensePolynomial]:
    return [expand_to_monomials(elementary_symmetric(j, n, field)) for j in range(1, n + 1)]


@dataclass(frozen=True)
class GradedIdealSlice:
    degree: int
    basis: ExactMatrix
    generators: tuple[DensePolynomial, ...]
    columns: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def contains(self, f: DensePolynomial) -> bool:
        if self.columns and f.n != len(self.columns[0]):
            raise ValueError("variable count mismatch")
        index = {e: i for i, e in enumerate(self.columns)}
        vec = {}
        for e, c in f.terms.items():
            if sum(e) != self.degree:
                raise ValueError(f"{f} is not homogeneous of degree {self.degree}")
            vec[index[e]] = c
        return in_row_space(self.basis, vec)


def ideal_slice(gens: list[DensePolynomial], k: int, n: int, field: FieldSpec = QQ) -> GradedIdealSlice:
    """Degree-``k`` part of the ideal generated by ``gens``."""
    cols = monomials(k, n)
    index = {e: i for i, e in enumerate(cols)}
    space = RowSpace(len(cols), field)
    for g in gens:
        if g.n != n or g.field != field:
            raise ValueError("generator lives in a different ring")
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
        if not g:
            continue
        e = g.degree
        if e > k:
            continue
        for m in monomials(k - e, n):
            row = {}
            for ge, c in g.terms.items():
                row[index[tuple(x + y for x, y in zip(ge, m))]] = c
            space.add(row)
    return GradedIdealSlice(k, space.matrix(), tuple(gens), cols)


def in_elementary_ideal(f: DensePolynomial, field: FieldSpec = QQ) -> bool:
    """Membership of a homogeneous ``f`` in (s_1, ..., s_n)."""
    if not f:
        return True
    if not f.is_homogeneous():
        raise ValueError("membership is decided for homogeneous polynomials only")
    sl = ideal_slice(elementary_dense(f.n, field), f.degree, f.n, field)
    return sl.contains(f)


def powers_lemma_check(n: int, field: FieldSpec = QQ) -> tuple[bool, bool]:
    """Whether x_1^n and x_1^(n-1) lie in the ideal of elementary symmetric polynomials."""
    if n < 1:
        raise ValueError("n must be positive")
    top = DensePolynomial.monomial((n,) + (0,) * (n - 1), field)
    below = DensePolynomial.monomial((n - 1,) + (0,) * (n - 1), field)
    return in_elementary_ideal(top, field), in_elementary_ideal(below, field)


def serre_collapses(n: int, d: int, field: FieldSpec = QQ) -> bool:
    """Whether every x_i^(d+1) vanishes modulo (s_1, ..., s_n).

    Only ``i = 1`` is tested; the other variables follow by symmetry.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    x1 = DensePolynomial.monomial((d + 1,) + (0,) * (n - 1), field)
    return in_elementary_ideal(x1, field)

"""Integer polynomials and truncated power series in ``t``.

Algebraic grading (deg x_i = 1) is used for Hilbert series of R_n and its
quotients. The Poincaré series of the spaces built from (CP^d)^n live in the
complex cohomological grading (deg x_i = 2); :func:`regrade` converts.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping


class SeriesError(ValueError):
    pass


class NonPolynomialSeries(SeriesError):
    """A quotient of polynomials that does not divide exactly."""


class NegativeSeries(SeriesError):
    """A polynomial that cannot be a Hilbert series (negative coefficient)."""

    def __init__(self, msg: str, series: "SeriesPoly"):
        super().__init__(msg)
        self.series = series


class CollapseRangeViolation(SeriesError):
    pass


class SeriesPoly:
    """Map degree -> integer coefficient, optionally truncated.

    With ``truncation = N`` only coefficients of degree <= N are meaningful
    and arithmetic discards anything above N.
    """

    __slots__ = ("coeffs", "truncation")

    def __init__(self, coeffs: Mapping[int, int] | Iterable[int] = (), truncation: int | None = None):
        if not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        self.truncation = truncation
        self.coeffs = {int(k): int(v) for k, v in coeffs.items()
                       if v and (truncation is None or k <= truncation)}
        if any(k < 0 for k in self.coeffs):
            raise ValueError("negative exponents are not supported")

    @classmethod
    def monomial(cls, k: int, c: int = 1, truncation: int | None = None):
        return cls({k: c}, truncation)

    def coeff(self, k: int) -> int:
        if self.truncation is not None and k > self.truncation:
            raise ValueError(f"coefficient {k} lies beyond the truncation {self.truncation}")
        return self.coeffs.get(k, 0)

    @property
    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def _trunc(self, other: "SeriesPoly") -> int | None:
        ts = [x for x in (self.truncation, other.truncation) if x is not None]
        return min(ts) if ts else None

    def __eq__(self, other):
        if isinstance(other, int):
            other = SeriesPoly({0: other})
        if not isinstance(other, SeriesPoly):
            return NotImplemented
        t = self._trunc(other)
        a = {k: v for k, v in self.coeffs.items() if t is None or k <= t}
        b = {k: v for k, v in other.coeffs.items() if t is None or k <= t}
        return a == b

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.truncation))

    def __add__(self, other: "SeriesPoly"):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SeriesPoly(out, self._trunc(other))

    def __neg__(self):
        return SeriesPoly({k: -v for k, v in self.coeffs.items()}, self.truncation)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SeriesPoly({k: v * other for k, v in self.coeffs.items()}, self.truncation)
        t = self._trunc(other)
        out: dict[int, int] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if t is not None and i + j > t:
                    continue
                out[i + j] = out.get(i + j, 0) + a * b
        return SeriesPoly(out, t)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = SeriesPoly({0: 1}, self.truncation)
        for _ in range(e):
            out = out * self
        return out

    def mul_one_minus_t_power(self, e: int) -> "SeriesPoly":
        return self * SeriesPoly({0: 1, e: -1}, self.truncation)

    def __call__(self, t):
        if self.truncation is not None:
            raise ValueError("cannot evaluate a truncated series")
        return sum(c * t**k for k, c in self.coeffs.items())

    def is_palindromic(self) -> bool:
        top = self.degree
        return all(self.coeffs.get(top - k, 0) == c for k, c in self.coeffs.items())

    def is_nonnegative(self) -> bool:
        return all(v > 0 for v in self.coeffs.values())

    def to_list(self) -> list[list[int]]:
        """Sparse ``[degree, coefficient]`` pairs in increasing degree."""
        return [[k, self.coeffs[k]] for k in sorted(self.coeffs)]

    def __str__(self):
        if not self.coeffs and self.truncation is None:
            return "0"
        pieces = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        text = ""
        for i, (sign, body) in enumerate(pieces):
            if i == 0:
                text = ("-" if sign == "-" else "") + body
            else:
                text += f" {sign} {body}"
        if self.truncation is not None:
            text = (text or "0") + f" + O(t^{self.truncation + 1})"
        return text

    def __repr__(self):
        return f"SeriesPoly({self})"


def regrade(s: SeriesPoly, num: int, den: int = 1) -> SeriesPoly:
    """Rescale degrees by ``num / den``; every degree must stay integral."""
    out = {}
    for k, c in s.coeffs.items():
        if (k * num) % den:
            raise SeriesError(f"degree {k} cannot be rescaled by {num}/{den}")
        out[k * num // den] = c
    trunc = None if s.truncation is None else s.truncation * num // den
    return SeriesPoly(out, trunc)


def _divide_one_minus_t_power(f: SeriesPoly, i: int) -> SeriesPoly:
    """Exact quotient f / (1 - t^i) for a polynomial f, or raise."""
    top = f.degree
    q: dict[int, int] = {}
    for k in range(0, max(top - i, -1) + 1):
        v = f.coeffs.get(k, 0) + q.get(k - i, 0)
        if v:
            q[k] = v
    quotient = SeriesPoly(q)
    if quotient.mul_one_minus_t_power(i) != f:
        raise NonPolynomialSeries(f"{f} is not divisible by 1 - t^{i}")
    return quotient


def hilbert_Rn(n: int, up_to: int) -> SeriesPoly:
    """Truncation of 1 / prod_{i=1..n} (1 - t^i)."""
    counts = [1] + [0] * up_to
    for i in range(1, n + 1):
        for k in range(i, up_to + 1):
            counts[k] += counts[k - i]
    return SeriesPoly(counts, truncation=up_to)


@lru_cache(maxsize=None)
def _gaussian(m: int, k: int) -> tuple[int, ...]:
    if k < 0 or k > m:
        return ()
    if k == 0 or k == m:
        return (1,)
    left = _gaussian(m - 1, k - 1)
    right = _gaussian(m - 1, k)
    size = max(len(left), len(right) + k)
    out = [0] * size
    for j, c in enumerate(left):
        out[j] += c
    for j, c in enumerate(right):
        out[j + k] += c
    return tuple(out)


def gaussian_binomial(m: int, k: int) -> SeriesPoly:
    """[m choose k]_t by the Pascal-type recurrence."""
    return SeriesPoly(_gaussian(m, k))


def quotient_series(n: int, d: int) -> SeriesPoly:
    """Hilbert series of R_n / I(n, d): the box-partition generating function."""
    return gaussian_binomial(n + d, n)


def complete_intersection_series(degrees: Iterable[int], n: int) -> SeriesPoly:
    """prod (1 - t^{e_i}) / prod_{i=1..n} (1 - t^i) as an exact polynomial.

    Raises :class:`NonPolynomialSeries` when the division is not exact and
    :class:`NegativeSeries` when the quotient has a negative coefficient.
    """
    num = SeriesPoly({0: 1})
    for e in degrees:
        if e < 1:
            raise ValueError("degrees must be positive")
        num = num.mul_one_minus_t_power(e)
    out = num
    for i in range(1, n + 1):
        out = _divide_one_minus_t_power(out, i)
    if not out.is_nonnegative():
        raise NegativeSeries(f"{out} has a negative coefficient", out)
    return out


def exterior_series(n: int, d: int) -> SeriesPoly:
    """Poincaré polynomial of an exterior algebra on classes of degrees 2(d+i) - 1."""
    out = SeriesPoly({0: 1})
    for i in range(1, n + 1):
        out = out * SeriesPoly({0: 1, 2 * (d + i) - 1: 1})
    return out


def flag_series(n: int) -> SeriesPoly:
    """Poincaré polynomial of U(n)/T, prod_{i=1..n} (1 - t^{2i}) / (1 - t^2)."""
    out = SeriesPoly({0: 1})
    for i in range(1, n + 1):
        out = out * SeriesPoly({2 * j: 1 for j in range(i)})
    return out


def w_series(n: int, d: int) -> SeriesPoly:
    """flag_series(n) * (1 + t^{2d+1})^n, valid in the collapse range d >= n - 1."""
    if d < n - 1:
        raise CollapseRangeViolation(f"d = {d} < n - 1 = {n - 1}: no collapse, formula not available")
    return flag_series(n) * SeriesPoly({0: 1, 2 * d + 1: 1}) ** n


# Mod-2 Poincaré series of X(2, .) quoted from the literature. Not computed here:
# it depends on the fundamental group and group cohomology, outside this engine.
MOD2_X22_SERIES = SeriesPoly({0: 1, 1: 1, 2: 1, 3: 1, 5: 1, 6: 1, 7: 1, 8: 1})

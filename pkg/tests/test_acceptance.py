"""Acceptance criteria, one check per criterion.

Run under pytest (one PASS/FAIL line per criterion is printed even without
``-s``) or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time

import pytest

from trunsym.exact_linalg import GF, QQ
from trunsym.orbit_algebra import (
    SymPolynomial,
    dense_mul,
    expand_to_monomials,
    orbit_mul,
    partitions,
    power_sum,
    symmetrize,
)
from trunsym.poly_ring import powers_lemma_check, serre_collapses
from trunsym.series import complete_intersection_series, exterior_series, quotient_series, SeriesPoly
from trunsym.truncated_ideal import (
    TruncatedIdeal,
    certify_generation,
    divisibility_families,
    explicit_socle_partition,
    is_regular_sequence,
    min_generators,
    power_sum_generators,
    quotient_basis,
    remark_generators,
    socle,
    thm1b_generators,
    verify_socle_element,
)

CRITERIA = {}


def criterion(number, title, limit=None):
    def wrap(fn):
        CRITERIA[number] = (title, limit, fn)
        return fn
    return wrap


@criterion(1, "orbit_mul agrees with the monomial oracle on 500 random pairs", limit=30)
def c1():
    rng = random.Random(2024)
    fields = [QQ, GF(2), GF(3)]
    for i in range(500):
        n = rng.randint(1, 4)
        field = fields[i % 3]
        a = rng.choice(partitions(rng.randint(0, 6), n))
        b = rng.choice(partitions(rng.randint(0, 6), n))
        lhs = orbit_mul(a, b, field)
        rhs = symmetrize(dense_mul(expand_to_monomials(SymPolynomial({a: 1}, n, field)),
                                   expand_to_monomials(SymPolynomial({b: 1}, n, field))))
        if lhs != rhs:
            return False, f"mismatch at {a} * {b} over {field}"
    return True, "500 pairs"


def thm1a_grid():
    pts = [(n, d, QQ) for n in range(1, 6) for d in range(0, 5)]
    return pts + [(n, d, GF(5)) for n in range(1, 5) for d in range(0, 5)]


@criterion(2, "power sums P_{d+1..d+n} generate I(n,d) off bad characteristic", limit=120)
def c2():
    for n, d, F in thm1a_grid():
        cert = certify_generation(power_sum_generators(n, d, F), TruncatedIdeal(n, d, F))
        if not cert.generates:
            return False, f"(n,d)=({n},{d}) over {F}: {cert.verdict}"
    return True, f"{len(thm1a_grid())} points"


@criterion(3, "the extra generator P_{(d+1)^p} is needed and sufficient for p <= n <= 2p-1")
def c3():
    count = 0
    for p, n in [(2, 2), (2, 3), (3, 3), (3, 4), (3, 5)]:
        F = GF(p)
        for d in (1, 2, 3):
            t = TruncatedIdeal(n, d, F)
            small = certify_generation(power_sum_generators(n, d, F), t)
            big = certify_generation(thm1b_generators(n, d, F), t)
            if small.failed_degree is None or not big.generates or len(thm1b_generators(n, d, F)) != n + 1:
                return False, f"(p,n,d)=({p},{n},{d}): without {small.verdict}, with {big.verdict}"
            count += 1
    return True, f"{count} points"


@criterion(4, "power sums P_{d+1..d+n} form a regular sequence off bad characteristic")
def c4():
    for n, d, F in thm1a_grid():
        if not is_regular_sequence(power_sum_generators(n, d, F), n, F):
            return False, f"(n,d)=({n},{d}) over {F}"
    return True, f"{len(thm1a_grid())} points"


@criterion(5, "socle has dimension >= 2 and contains the explicit orbit sum")
def c5():
    grid = [(2, 2, d) for d in (1, 2, 3)] + [(2, 4, d) for d in (1, 2, 3)] + [(3, 3, d) for d in (1, 2, 3)]
    grid += [(2, 3, d) for d in (2, 3)] + [(3, 5, d) for d in (2, 3)]
    for p, n, d in grid:
        t = TruncatedIdeal(n, d, GF(p))
        a = explicit_socle_partition(n, d, p)
        check = verify_socle_element(t, a)
        dim = socle(t).dimension
        if dim < 2 or not check.in_socle:
            return False, f"(p,n,d)=({p},{n},{d}): dim {dim}, {a} in socle: {check.in_socle}"
    return True, f"{len(grid)} points"


@criterion(6, "minimal generator count is n+1 on the corollary grid")
def c6():
    grid = []
    for p in (2, 3):
        grid += [(p, n, d) for n in range(p, 2 * p - 1) for d in (1, 2)]
        grid.append((p, 2 * p - 1, 2))
    for p, n, d in grid:
        total = min_generators(TruncatedIdeal(n, d, GF(p))).total
        if total != n + 1:
            return False, f"(p,n,d)=({p},{n},{d}): {total} generators"
    return True, f"{len(grid)} points"


@criterion(7, "n = 2p-1, d = 1: n generators suffice and form a regular sequence; P_{2p} = P_2^p")
def c7():
    for p, n in [(2, 3), (3, 5)]:
        F = GF(p)
        t = TruncatedIdeal(n, 1, F)
        gens = remark_generators(n, F)
        total = min_generators(t).total
        if total != n or len(gens) != n:
            return False, f"(p,n)=({p},{n}): {total} minimal generators"
        if not certify_generation(gens, t).generates or not is_regular_sequence(gens, n, F):
            return False, f"(p,n)=({p},{n}): set does not generate or is not regular"
        if power_sum(2, n, F) ** p != power_sum(2 * p, n, F):
            return False, f"P_2^{p} != P_{2 * p} over {F}"
    return True, "(2,3,1) and (3,5,1)"


@criterion(8, "x_1^n lies in (s_1..s_n) but x_1^(n-1) does not", limit=60)
def c8():
    for n in range(1, 7):
        for F in (QQ, GF(2), GF(3), GF(5)):
            if powers_lemma_check(n, F) != (True, False):
                return False, f"n={n} over {F}"
    return True, "n <= 6, 4 fields"


@criterion(9, "collapse predicate equals d >= n-1")
def c9():
    for n in range(1, 7):
        for d in range(1, 7):
            if serre_collapses(n, d) != (d >= n - 1):
                return False, f"(n,d)=({n},{d})"
    return True, "n, d <= 6"


@criterion(10, "series identities")
def c10():
    if exterior_series(2, 1) != SeriesPoly({0: 1, 3: 1, 5: 1, 8: 1}):
        return False, "exterior_series(2,1)"
    for n in range(1, 6):
        for d in range(0, 5):
            q = quotient_series(n, d)
            if complete_intersection_series(range(d + 1, d + n + 1), n) != q:
                return False, f"CI identity at ({n},{d})"
            qb = quotient_basis(TruncatedIdeal(n, d))
            if any(q.coeff(k) != len(qb.get(k, [])) for k in range(n * d + 1)) or q.degree != n * d:
                return False, f"box count at ({n},{d})"
            e = exterior_series(n, d)
            if e(1) != 2 ** n or not e.is_palindromic() or e.degree != n * (n + 2 * d):
                return False, f"exterior series at ({n},{d})"
    return True, "n <= 5, d <= 4"


@criterion(11, "worked examples in two variables")
def c11():
    F2 = GF(2)

    def P(*parts, field=QQ):
        return SymPolynomial.orbit(parts, 2, field)

    cert = certify_generation([P(2, field=F2), P(3, field=F2), P(2, 2, field=F2)], TruncatedIdeal(2, 1, F2))
    if not cert.generates:
        return False, "F_2, (2,1): " + cert.verdict
    if P(2, 2).scale(2) != P(2) ** 2 - P(1) * P(3) + P(1, 1) * P(2):
        return False, "2 P22 identity over Q"
    for d in (1, 2, 3):
        gens = [P(d + 1, field=F2), P(d + 2, field=F2), P(d + 1, d + 1, field=F2)]
        cert = certify_generation(gens, TruncatedIdeal(2, d, F2))
        if not cert.generates:
            return False, f"F_2, (2,{d}): {cert.verdict}"
    return True, "(2,1) certificate, identity, d = 1..3"


@criterion(12, "binomial coefficient families are divisible by p")
def c12():
    count = 0
    for p in (2, 3, 5):
        for q in (1, 2):
            for name, params, value in divisibility_families(p, q):
                count += 1
                if value % p:
                    return False, f"{name} with p={p}, q={q}, {params} = {value}"
    return True, f"{count} coefficients"


def run_criterion(number):
    title, limit, fn = CRITERIA[number]
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed > limit:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s, limit {limit}s"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail}; {elapsed:.2f}s)"
    return ok, line


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

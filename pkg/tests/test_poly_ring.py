import pytest

from trunsym.exact_linalg import GF, QQ
from trunsym.orbit_algebra import DensePolynomial
from trunsym.poly_ring import (
    elementary_dense,
    ideal_slice,
    in_elementary_ideal,
    monomials,
    powers_lemma_check,
    serre_collapses,
)

FIELDS = [QQ, GF(2), GF(3), GF(5)]


def x_power(k, n, field=QQ, var=0):
    e = [0] * n
    e[var] = k
    return DensePolynomial.monomial(tuple(e), field)


def test_monomials_order_and_count():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(monomials(4, 3)) == 15
    assert monomials(0, 3) == ((0, 0, 0),)


def test_slice_of_s1_s2_in_degree_two():
    sl = ideal_slice(elementary_dense(2), 2, 2)
    assert sl.dim == 3
    assert sl.contains(x_power(2, 2))


def test_slice_of_x1_squared_one_variable():
    sl = ideal_slice([x_power(2, 1)], 5, 1)
    assert sl.dim == 1 == len(sl.columns)


def test_slice_ignores_higher_generators_and_zero():
    sl = ideal_slice([x_power(3, 2), DensePolynomial({}, 2)], 2, 2)
    assert sl.dim == 0


def test_non_homogeneous_generator_rejected():
    g = DensePolynomial({(1, 0): 1, (0, 0): 1}, 2)
    with pytest.raises(ValueError):
        ideal_slice([g], 3, 2)


def test_in_elementary_ideal_small():
    assert in_elementary_ideal(x_power(2, 2))
    assert not in_elementary_ideal(x_power(1, 2))
    assert in_elementary_ideal(DensePolynomial({}, 3))


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_powers_lemma(n, field):
    assert powers_lemma_check(n, field) == (True, False)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_power_membership_threshold(field):
    # x_1^k lies in (s_1..s_n) exactly from k = n on
    for n in range(1, 5):
        for k in range(1, n + 3):
            assert in_elementary_ideal(x_power(k, n, field), field) == (k >= n)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_serre_threshold(field):
    for n in range(1, 5):
        for d in range(1, 5):
            assert serre_collapses(n, d, field) == (d >= n - 1)


def test_slices_grow_with_degree():
    gens = elementary_dense(3)
    dims = [ideal_slice(gens, k, 3).dim for k in range(1, 6)]
    total = [len(monomials(k, 3)) for k in range(1, 6)]
    # the quotient of F[x] by (s_1..s_n) has dimension n! concentrated in degrees <= n(n-1)/2
    assert [t - d for t, d in zip(total, dims)][3:] == [0, 0]
    assert all(a <= b for a, b in zip(dims, dims[1:]))


def test_other_variables_by_symmetry():
    for var in range(3):
        assert in_elementary_ideal(x_power(3, 3, QQ, var))
        assert not in_elementary_ideal(x_power(2, 3, QQ, var))

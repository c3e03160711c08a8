import random
from fractions import Fraction

import pytest

from cliffordian import Algebra, DiracConvention, MultiPoly, SlicePoly, expand_slice_poly
from cliffordian.kernel import random_multivector, random_slice_poly

R3 = Algebra(3)
R5 = Algebra(5)


def xvar(alg, i):
    return MultiPoly.variable(alg, i)


def test_product_examples():
    x0, x1 = xvar(R3, 0), xvar(R3, 1)
    e1 = MultiPoly.constant(R3, R3.generator(1))
    assert x0 * (x1 * e1) == MultiPoly(R3, {(1, 1, 0, 0): R3.generator(1)})
    v = x1 * e1
    assert v * v == MultiPoly(R3, {(0, 2, 0, 0): -1})
    f = MultiPoly(R3, {(2, 0, 1, 0): R3.parse("1 + e12"), (0, 0, 0, 0): 3})
    assert f * MultiPoly.constant(R3, 1) == f


def test_product_coefficients_multiply_left_to_right():
    e1 = MultiPoly.constant(R3, R3.generator(1))
    e2 = MultiPoly.constant(R3, R3.generator(2))
    assert e1 * e2 == MultiPoly.constant(R3, R3.blade(0b011))
    assert e2 * e1 == MultiPoly.constant(R3, -R3.blade(0b011))


def test_expand_identity_polynomial():
    mp = expand_slice_poly(SlicePoly.monomial(R3, 1))
    expected = MultiPoly(
        R3,
        {
            (1, 0, 0, 0): 1,
            (0, 1, 0, 0): R3.generator(1),
            (0, 0, 1, 0): R3.generator(2),
            (0, 0, 0, 1): R3.generator(3),
        },
    )
    assert mp == expected


def test_expand_square():
    for alg in (R3, R5):
        mp = expand_slice_poly(SlicePoly.monomial(alg, 2))
        terms = {}
        e = [0] * (alg.m + 1)
        e[0] = 2
        terms[tuple(e)] = alg.scalar(1)
        for j in range(1, alg.m + 1):
            e = [0] * (alg.m + 1)
            e[j] = 2
            terms[tuple(e)] = alg.scalar(-1)
            e = [0] * (alg.m + 1)
            e[0] = 1
            e[j] = 1
            terms[tuple(e)] = alg.generator(j) * 2
        assert mp == MultiPoly(alg, terms)


def test_expand_power_five_matches_bivariate_closed_form():
    # restrict x^5 to the slice x = x0 + x1 e1: the classical expansion
    # a^5 - 10 a^3 b^2 + 5 a b^4 + e1 (5 a^4 b - 10 a^2 b^3 + b^5)
    mp = expand_slice_poly(SlicePoly.monomial(R5, 5)).set_zero([2, 3, 4, 5])

    def expo(i, j):
        return (i, j, 0, 0, 0, 0)

    e1 = R5.generator(1)
    expected = MultiPoly(
        R5,
        {
            expo(5, 0): 1,
            expo(3, 2): -10,
            expo(1, 4): 5,
            expo(4, 1): e1 * 5,
            expo(2, 3): e1 * -10,
            expo(0, 5): e1,
        },
    )
    assert mp == expected


def test_partial_examples():
    f = MultiPoly(R3, {(2, 1, 0, 0): 1})
    assert f.partial(0) == MultiPoly(R3, {(1, 1, 0, 0): 2})
    assert f.partial(1) == MultiPoly(R3, {(2, 0, 0, 0): 1})
    assert not MultiPoly.constant(R3, R3.parse("1 + e12")).partial(2)
    with pytest.raises(IndexError):
        f.partial(4)


def test_dirac_examples():
    for alg in (R3, R5):
        x = expand_slice_poly(SlicePoly.monomial(alg, 1))
        assert x.dirac(DiracConvention.HALF) == MultiPoly.constant(
            alg, Fraction(1 - alg.m, 2)
        )
        assert x.dirac(DiracConvention.UNITAL) == MultiPoly.constant(alg, 1 - alg.m)
    assert not MultiPoly.constant(R3, R3.parse("2 + e123")).dirac(DiracConvention.HALF)


def test_laplacian_examples():
    harmonic = MultiPoly(R3, {(2, 0, 0, 0): 1, (0, 2, 0, 0): -1})
    assert not harmonic.laplacian()
    for alg in (R3, R5):
        sq = expand_slice_poly(SlicePoly.monomial(alg, 2))
        assert sq.laplacian() == MultiPoly.constant(alg, 2 * (1 - alg.m))
    f = MultiPoly(R3, {(3, 1, 0, 0): R3.parse("1 - e3")})
    assert f.laplacian(0) == f
    with pytest.raises(ValueError):
        f.laplacian(-1)


def test_evaluate_examples():
    f = MultiPoly(R3, {(1, 0, 0, 0): 1, (0, 1, 0, 0): R3.generator(1)})
    assert f.evaluate([2, 3, 0, 0]) == R3.parse("2 + 3 e1")
    mp5 = expand_slice_poly(SlicePoly.monomial(R5, 5))
    assert mp5.evaluate([1, 1, 0, 0, 0, 0]) == R5.parse("-4 - 4 e1")
    assert MultiPoly.zero(R3).evaluate([1, 2, 3, 4]) == R3.zero()
    with pytest.raises(ValueError):
        f.evaluate([1, 2, 3])


def test_operators_commute():
    rng = random.Random(31)
    for _ in range(10):
        terms = {}
        for _ in range(6):
            expo = tuple(rng.randint(0, 3) for _ in range(4))
            terms[expo] = random_multivector(R3, rng)
        f = MultiPoly(R3, terms)
        for k in (1, 2):
            assert f.laplacian(k).dirac(DiracConvention.HALF) == f.dirac(
                DiracConvention.HALF
            ).laplacian(k)


def test_expanded_powers_take_paravector_values():
    rng = random.Random(12)
    for n in range(7):
        mp = expand_slice_poly(SlicePoly.monomial(R5, n))
        for _ in range(5):
            point = [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(6)]
            assert mp.evaluate(point).is_paravector()


def test_evaluation_homomorphism_for_real_right_factor():
    rng = random.Random(77)
    for _ in range(10):
        f = expand_slice_poly(random_slice_poly(R3, rng, 3))
        g_terms = {
            tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-5, 5)
            for _ in range(4)
        }
        g = MultiPoly(R3, g_terms)  # real coefficients only
        point = [Fraction(rng.randint(-3, 3)) for _ in range(4)]
        assert (f * g).evaluate(point) == f.evaluate(point) * g.evaluate(point)


def test_degree_bookkeeping():
    rng = random.Random(55)
    for _ in range(10):
        f = expand_slice_poly(random_slice_poly(R3, rng, rng.randint(1, 3)))
        g = expand_slice_poly(random_slice_poly(R3, rng, rng.randint(1, 3)))
        h = f * g
        assert h.total_degree() <= f.total_degree() + g.total_degree()
    # dense scalar polynomials achieve equality
    f = MultiPoly(R3, {(2, 1, 0, 0): 3, (0, 0, 0, 0): 1})
    g = MultiPoly(R3, {(1, 1, 1, 0): 2})
    assert (f * g).total_degree() == f.total_degree() + g.total_degree()
    assert MultiPoly.zero(R3).total_degree() == -1


def test_signature_mismatch_rejected():
    with pytest.raises(ValueError):
        MultiPoly.constant(R3, 1) * MultiPoly.constant(R5, 1)
    with pytest.raises(ValueError):
        MultiPoly.constant(R3, 1) + MultiPoly.constant(R5, 1)
    with pytest.raises(ValueError):
        MultiPoly(R3, {(1, 0, 0): 1})  # wrong exponent length


def test_canonical_text():
    f = MultiPoly(
        R3,
        {
            (0, 2, 0, 0): -1,
            (1, 1, 0, 0): R3.parse("2 e1"),
            (0, 0, 0, 0): Fraction(1, 2),
        },
    )
    assert str(f) == "2 x0 x1 e1 - x1^2 + 1/2"
    assert str(MultiPoly.zero(R3)) == "0"
    mixed = MultiPoly(R3, {(1, 0, 0, 0): R3.parse("1 + e12")})
    assert str(mixed) == "x0 + x0 e12"

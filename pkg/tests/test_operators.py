import random
from fractions import Fraction

import pytest

from cliffordian import (
    Algebra,
    BiPoly,
    DiracConvention,
    Parity,
    SlicePoly,
    dirac_laplacian,
    dirac_slice,
    expand_slice_poly,
    falling_factorial,
    falling_factorial_sum,
    fueter_sce_check,
    laplacian_coeff,
    laplacian_coeff_tables,
    laplacian_power_even_stem,
    laplacian_power_spherical,
    sce_prefactor,
    stem_components,
)
from cliffordian.kernel import random_slice_poly

R3 = Algebra(3)
R5 = Algebra(5)
R9 = Algebra(9)

HALF = DiracConvention.HALF
UNITAL = DiracConvention.UNITAL


def test_coeff_closed_form_examples():
    for k in range(1, 8):
        assert laplacian_coeff(k, k) == 1
    assert laplacian_coeff(2, 1) == -1
    assert laplacian_coeff(3, 1) == 3
    with pytest.raises(ValueError):
        laplacian_coeff(3, 0)
    with pytest.raises(ValueError):
        laplacian_coeff(3, 4)


def test_coeff_tables_first_rows():
    tables = laplacian_coeff_tables(3)
    assert tables[0].entries == (Fraction(1),)
    assert tables[1].entries == (Fraction(-1), Fraction(1))
    assert tables[2].entries == (Fraction(3), Fraction(-3), Fraction(1))
    assert tables[2].entry(0) == 0  # a(k,0) vanishes identically
    assert tables[2].entry(4) == 0


def test_recursion_matches_closed_form_exhaustively():
    for table in laplacian_coeff_tables(12):
        for l in range(1, table.k + 1):
            assert table.entry(l) == laplacian_coeff(table.k, l)


def test_falling_factorial():
    assert falling_factorial(4, 2) == 12
    assert falling_factorial(2, 3) == 0  # hits zero descending from 2
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(-2, 2) == 6


def test_falling_factorial_sum_examples():
    for h in range(6):
        assert falling_factorial_sum(1, h) == -4 * h
    assert falling_factorial_sum(2, 1) == 0
    assert falling_factorial_sum(2, 2) == 32


def test_falling_factorial_sum_identity_grid():
    # sum equals (-4)^k h(h-1)...(h-k+1) on the full desk-scale grid
    for k in range(1, 11):
        for h in range(13):
            product = 1
            for l in range(k):
                product *= h - l
            assert falling_factorial_sum(k, h) == (-4) ** k * product


def test_falling_factorial_sum_vanishing_range():
    for k in range(2, 11):
        for h in range(1, k):
            assert falling_factorial_sum(k, h) == 0
        assert falling_factorial_sum(k, k) != 0


def test_sce_prefactor():
    assert sce_prefactor(5, 0) == 1
    assert sce_prefactor(5, 1) == 2
    assert sce_prefactor(5, 2) == 0  # contains m - 5
    assert sce_prefactor(9, 2) == 24
    assert sce_prefactor(9, 3) == 48


def test_laplacian_power_spherical_examples():
    p5 = SlicePoly.monomial(R5, 5)
    assert laplacian_power_spherical(p5, 1) == BiPoly(
        R5, {(2, 0): -40, (0, 2): 8}, Parity.EVEN
    )
    assert not laplacian_power_spherical(p5, 2)  # prefactor contains m - 5 = 0
    p9 = SlicePoly.monomial(R9, 5)
    assert laplacian_power_spherical(p9, 2) == BiPoly(R9, {(0, 0): 192}, Parity.EVEN)
    fs = stem_components(p5).spherical_derivative()
    assert laplacian_power_spherical(p5, 0) == fs


def test_monomial_stems_collapse():
    # an even monomial beta^(2h) maps to prefactor * 2^k h(h-1)...(h-k+1) * beta^(2h-2k)
    for m in (5, 9):
        alg = Algebra(m)
        for h in range(6):
            for k in range(1, 4):
                fs = BiPoly(alg, {(0, 2 * h): 1}, Parity.EVEN)
                out = laplacian_power_even_stem(fs, k)
                expected_coeff = sce_prefactor(m, k) * 2**k * falling_factorial(h, k)
                if h < k or expected_coeff == 0:
                    assert not out
                else:
                    assert out == BiPoly(
                        alg, {(0, 2 * h - 2 * k): expected_coeff}, Parity.EVEN
                    )


def test_laplacian_power_rejects_odd_stems():
    with pytest.raises(ValueError):
        laplacian_power_even_stem(BiPoly(R5, {(0, 1): 1}), 1)
    with pytest.raises(ValueError):
        laplacian_power_even_stem(BiPoly(R5, {(0, 0): 1}), -1)


def test_dirac_slice_examples():
    assert dirac_slice(SlicePoly.monomial(R5, 1), HALF) == BiPoly(
        R5, {(0, 0): Fraction(1 - 5, 2)}, Parity.EVEN
    )
    assert dirac_slice(SlicePoly.monomial(R9, 1), HALF) == BiPoly(
        R9, {(0, 0): -4}, Parity.EVEN
    )
    assert dirac_slice(SlicePoly.monomial(R5, 5), UNITAL) == BiPoly(
        R5, {(4, 0): -20, (2, 2): 40, (0, 4): -4}, Parity.EVEN
    )
    assert not dirac_slice(SlicePoly(R5, [R5.parse("3 + e12")]), HALF)


def test_dirac_laplacian_worked_values():
    p5 = SlicePoly.monomial(R5, 5)
    assert dirac_laplacian(p5, 0, UNITAL) == BiPoly(
        R5, {(4, 0): -20, (2, 2): 40, (0, 4): -4}, Parity.EVEN
    )
    assert dirac_laplacian(p5, 1, UNITAL) == BiPoly(
        R5, {(2, 0): 160, (0, 2): -32}, Parity.EVEN
    )
    assert not dirac_laplacian(p5, 2, UNITAL)
    p9 = SlicePoly.monomial(R9, 5)
    assert dirac_laplacian(p9, 0, UNITAL) == BiPoly(
        R9, {(4, 0): -40, (2, 2): 80, (0, 4): -8}, Parity.EVEN
    )
    assert dirac_laplacian(p9, 1, UNITAL) == BiPoly(
        R9, {(2, 0): 960, (0, 2): -192}, Parity.EVEN
    )
    assert dirac_laplacian(p9, 2, UNITAL) == BiPoly(R9, {(0, 0): -1536}, Parity.EVEN)
    assert not dirac_laplacian(p9, 3, UNITAL)


def test_dirac_laplacian_half_is_half_of_unital():
    rng = random.Random(2)
    for _ in range(8):
        p = random_slice_poly(R5, rng, rng.randint(0, 5))
        for k in (0, 1):
            assert dirac_laplacian(p, k, UNITAL) == dirac_laplacian(p, k, HALF) * 2


def test_beyond_critical_exponent_is_zero():
    rng = random.Random(6)
    for m in (3, 5):
        alg = Algebra(m)
        for _ in range(5):
            p = random_slice_poly(alg, rng, rng.randint(0, 5))
            for k in range(alg.sce_exponent, alg.sce_exponent + 3):
                assert not dirac_laplacian(p, k, HALF)


def test_scaling_commutes_with_laplacian_power():
    # applying Delta^k then the Dirac scalar equals scaling first
    rng = random.Random(9)
    for _ in range(8):
        p = random_slice_poly(R5, rng, rng.randint(0, 6))
        for k in (0, 1, 2):
            via_scale_last = laplacian_power_spherical(p, k) * (
                (1 - 5) * HALF.factor
            )
            via_scale_first = laplacian_power_even_stem(
                dirac_slice(p, HALF), k
            )
            assert via_scale_last == via_scale_first == dirac_laplacian(p, k, HALF)


def test_gamma_route_agrees_with_laurent_route():
    # Delta^k f's = 2^k (m-3)...(m-2k-1) (d/dgamma)^k G at gamma = beta^2
    rng = random.Random(14)
    for m in (5, 9):
        alg = Algebra(m)
        for _ in range(6):
            p = random_slice_poly(alg, rng, rng.randint(0, 6), max_grade=2)
            fs = stem_components(p).spherical_derivative()
            g = fs.as_gamma_poly()
            for k in (1, 2, 3):
                d = g
                for _ in range(k):
                    d = d.d_gamma()
                expected = d.to_bipoly() * (2**k * sce_prefactor(m, k))
                assert laplacian_power_even_stem(fs, k) == expected


def test_fueter_sce_check():
    assert fueter_sce_check(SlicePoly.monomial(R5, 5))
    assert fueter_sce_check(SlicePoly.monomial(R3, 5))
    rng = random.Random(20)
    p = random_slice_poly(R5, rng, 4)
    assert fueter_sce_check(p)


def test_fast_path_matches_oracle_spot_checks():
    rng = random.Random(30)
    for m in (3, 5):
        alg = Algebra(m)
        e1_axis = lambda x0, x1: [x0, x1] + [0] * (m - 1)
        for _ in range(6):
            p = random_slice_poly(alg, rng, rng.randint(0, 5))
            k = rng.randint(0, alg.sce_exponent)
            fast = dirac_laplacian(p, k, HALF)
            slow = expand_slice_poly(p).laplacian(k).dirac(HALF)
            x0 = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
            x1 = Fraction(rng.randint(1, 5), rng.randint(1, 3))
            assert fast.evaluate(x0, x1) == slow.evaluate(e1_axis(x0, x1))

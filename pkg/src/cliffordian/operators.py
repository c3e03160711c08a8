"""Laplacian powers of spherical derivatives and the composed Dirac operator.

The key fact driving this module: for a slice regular polynomial the k-th
Laplacian power of the spherical derivative collapses to a single-variable
expression

    Delta^k f's = (m-3)(m-5)...(m-2k-1) * sum_l a(k,l) beta^(l-2k) d_beta^l F's

with universal rational coefficients a(k,l).  The sum is assembled as a
Laurent polynomial and the negative powers must cancel identically; the
descending prefactor hits zero as soon as k reaches the critical exponent
(m-1)/2, which is how the Fueter-Sce collapse appears in this calculus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import Multivector
from .mpoly import DiracConvention, expand_slice_poly
from .stems import BiPoly, Parity, SlicePoly, stem_components


def falling_factorial(a: int, n: int) -> int:
    """a (a-1) ... (a-n+1); the empty product for n = 0."""
    if n < 0:
        raise ValueError("length of a falling factorial must be >= 0")
    out = 1
    for i in range(n):
        out *= a - i
    return out


def laplacian_coeff(k: int, l: int) -> Fraction:
    """Closed form of the coefficient a(k,l) in the Laplacian-power formula.

    a(k,l) = (-2)^(l-k) (2k-l-1)! / ((l-1)! (k-l)!),  1 <= l <= k.
    """
    if not 1 <= l <= k:
        raise ValueError(f"l must satisfy 1 <= l <= k, got l={l}, k={k}")
    return (
        Fraction(-2) ** (l - k)
        * factorial(2 * k - l - 1)
        / (factorial(l - 1) * factorial(k - l))
    )


@dataclass(frozen=True)
class CoeffTable:
    """Row a(k,1) .. a(k,k) of the Laplacian-power coefficients."""

    k: int
    entries: tuple[Fraction, ...]

    def entry(self, l: int) -> Fraction:
        """a(k,l); zero outside 1 <= l <= k."""
        if 1 <= l <= self.k:
            return self.entries[l - 1]
        return Fraction(0)


def laplacian_coeff_tables(k_max: int) -> list[CoeffTable]:
    """Rows 1..k_max built purely from the two-term recursion.

    a(k+1,l) = a(k,l-1) - (2k-l) a(k,l), seeded by a(1,1) = 1 with a(k,0) = 0
    and a(k,l) = 0 beyond l = k.  Independent of :func:`laplacian_coeff`, so
    the two routes check each other.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    tables = [CoeffTable(1, (Fraction(1),))]
    prev: dict[int, Fraction] = {1: Fraction(1)}
    for k in range(1, k_max):
        nxt = {
            l: prev.get(l - 1, Fraction(0)) - (2 * k - l) * prev.get(l, Fraction(0))
            for l in range(1, k + 2)
        }
        tables.append(CoeffTable(k + 1, tuple(nxt[l] for l in range(1, k + 2))))
        prev = nxt
    return tables


def falling_factorial_sum(k: int, h: int) -> int:
    """The terminating sum sum_l (-2)^l (2k-l-1)!/((l-1)!(k-l)!) (2h)_l.

    Always an integer; it equals (-4)^k h(h-1)...(h-k+1), so it vanishes
    exactly for h = 0..k-1.  That identity is what makes the even powers
    beta^(2h), h < k, solve the order-k equation built from a(k,l).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    total = Fraction(0)
    for l in range(1, k + 1):
        total += Fraction(
            (-2) ** l * factorial(2 * k - l - 1) * falling_factorial(2 * h, l),
            factorial(l - 1) * factorial(k - l),
        )
    if total.denominator != 1:
        raise ArithmeticError(f"sum unexpectedly non-integer: {total}")
    return int(total)


class CancellationError(ArithmeticError):
    """Negative beta powers survived the Laurent assembly.

    For polynomial stems this cannot happen; seeing it means a corrupted
    input or a bug, never a mathematical edge case.
    """


def sce_prefactor(m: int, k: int) -> int:
    """The k-factor descending product (m-3)(m-5)...(m-2k-1)."""
    out = 1
    for i in range(1, k + 1):
        out *= m - 2 * i - 1
    return out


def laplacian_power_even_stem(fs: BiPoly, k: int) -> BiPoly:
    """Delta^k of the circular slice function with even stem ``fs``.

    Assembles the Laurent sum, verifies that all negative beta powers cancel,
    then applies the descending prefactor.  k = 0 returns ``fs`` unchanged.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if any(eb % 2 for _, eb in fs.terms):
        raise ValueError("stem must be even in beta")
    if k == 0:
        return BiPoly(fs.algebra, fs.terms, Parity.EVEN)
    algebra = fs.algebra
    acc: dict[tuple[int, int], Multivector] = {}
    d = fs
    for l in range(1, k + 1):
        d = d.d_beta()
        a_l = laplacian_coeff(k, l)
        for (ea, eb), c in d.terms.items():
            key = (ea, eb + l - 2 * k)
            term = c * a_l
            prev = acc.get(key)
            acc[key] = term if prev is None else prev + term
    acc = {key: c for key, c in acc.items() if c}
    leftover = {key: c for key, c in acc.items() if key[1] < 0}
    if leftover:
        raise CancellationError(f"uncancelled negative beta powers: {leftover}")
    pref = sce_prefactor(algebra.m, k)
    return BiPoly(algebra, {key: c * pref for key, c in acc.items()}, Parity.EVEN)


def laplacian_power_spherical(poly: SlicePoly, k: int) -> BiPoly:
    """Delta^k applied to the spherical derivative of a slice polynomial."""
    return laplacian_power_even_stem(stem_components(poly).spherical_derivative(), k)


def dirac_slice(
    poly: SlicePoly, convention: DiracConvention = DiracConvention.HALF
) -> BiPoly:
    """Dirac operator of a slice regular polynomial: a (1-m)-multiple of f's."""
    scale = (1 - poly.algebra.m) * convention.factor
    return stem_components(poly).spherical_derivative() * scale


def dirac_laplacian(
    poly: SlicePoly, k: int, convention: DiracConvention = DiracConvention.HALF
) -> BiPoly:
    """The composed operator dbar Delta^k on a slice regular polynomial.

    Returned as the even stem of the resulting circular slice function; the
    polynomial lies in the kernel exactly when this is zero.
    """
    scale = (1 - poly.algebra.m) * convention.factor
    return laplacian_power_spherical(poly, k) * scale


def fueter_sce_check(poly: SlicePoly) -> bool:
    """Confirm via the coordinate oracle that Delta^((m-1)/2) f is monogenic."""
    gamma = poly.algebra.sce_exponent
    image = expand_slice_poly(poly).laplacian(gamma).dirac(DiracConvention.HALF)
    return not image

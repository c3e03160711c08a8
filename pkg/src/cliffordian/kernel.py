"""Kernel census for dbar Delta^k and polynomial reconstruction.

Below the critical exponent (m-1)/2 the kernel of the composed operator on
slice regular polynomials consists exactly of the polynomials of degree at
most 2k.  :func:`verify_kernel_characterization` stress-tests both directions
of that statement on seeded random polynomials, and
:func:`reconstruct_entire` rebuilds a polynomial from the coefficient data of
its spherical derivative, the constructive half of the argument.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra import Algebra, Multivector, as_multivector
from .mpoly import DiracConvention
from .operators import dirac_laplacian, falling_factorial_sum
from .stems import BiPoly, SlicePoly, stem_components


def in_kernel(poly: SlicePoly, k: int) -> bool:
    """True when dbar Delta^k annihilates the polynomial."""
    return not dirac_laplacian(poly, k, DiracConvention.HALF)


def random_multivector(
    algebra: Algebra,
    rng: random.Random,
    max_grade: int | None = None,
    nonzero: bool = False,
) -> Multivector:
    """Multivector with integer entries drawn uniformly from -5..5.

    ``max_grade`` restricts the blade support; with large m a dense draw over
    all 2^m blades would swamp the oracle for no extra test strength.
    """
    masks = list(algebra.blade_masks(max_grade))
    while True:
        mv = Multivector(algebra, {mask: rng.randint(-5, 5) for mask in masks})
        if mv or not nonzero:
            return mv


def random_slice_poly(
    algebra: Algebra,
    rng: random.Random,
    degree: int,
    max_grade: int | None = None,
) -> SlicePoly:
    """Random polynomial of exact degree ``degree`` (nonzero leading term)."""
    coeffs = [random_multivector(algebra, rng, max_grade) for _ in range(degree)]
    coeffs.append(random_multivector(algebra, rng, max_grade, nonzero=True))
    return SlicePoly(algebra, coeffs)


@dataclass
class KernelReport:
    """Outcome of one kernel census run.

    ``trials`` is the per-degree count; counterexamples hold every polynomial
    whose membership disagreed with its degree.
    """

    m: int
    k: int
    deg_max: int
    trials: int
    in_kernel_low_degree: int
    out_of_kernel_high_degree: int
    counterexamples: list[SlicePoly]
    elapsed_ms: int

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "trials": self.trials,
            "failures": [
                {"degree": p.degree, "poly": str(p)} for p in self.counterexamples
            ],
            "elapsed_ms": self.elapsed_ms,
        }


def verify_kernel_characterization(
    m: int, k: int, deg_max: int, trials: int, seed: int = 0
) -> KernelReport:
    """Check membership iff degree <= 2k over seeded random polynomials.

    For each degree 0..deg_max, ``trials`` random polynomials with nonzero
    leading coefficient are tested.  Each trial reseeds from a counter, so
    the report is reproducible regardless of evaluation order.
    """
    algebra = Algebra(m)
    if k < 0 or k >= algebra.sce_exponent:
        raise ValueError(f"k must satisfy 0 <= k < (m-1)/2 = {algebra.sce_exponent}")
    if deg_max <= 2 * k:
        raise ValueError(f"deg_max must exceed 2k = {2 * k}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    max_grade = None if m <= 5 else 2
    t0 = time.perf_counter()
    low_ok = 0
    high_ok = 0
    bad: list[SlicePoly] = []
    counter = 0
    for degree in range(deg_max + 1):
        for _ in range(trials):
            rng = random.Random(seed * 1_000_003 + counter)
            counter += 1
            poly = random_slice_poly(algebra, rng, degree, max_grade)
            member = in_kernel(poly, k)
            if degree <= 2 * k:
                if member:
                    low_ok += 1
                else:
                    bad.append(poly)
            else:
                if not member:
                    high_ok += 1
                else:
                    bad.append(poly)
    elapsed_ms = int(round((time.perf_counter() - t0) * 1000))
    return KernelReport(m, k, deg_max, trials, low_ok, high_ok, bad, elapsed_ms)


def ode_residual(k: int, h: int) -> tuple[int, int]:
    """Residual monomial of y = x^(2h) in the order-k equation
    sum_l a(k,l) x^(l-1) y^(l) = 0.

    Returns (coefficient, exponent) with exponent 2h-1.  The coefficient is
    the terminating sum rescaled by (-2)^(-k), which works out to
    2^k h(h-1)...(h-k+1); it vanishes exactly for h = 0..k-1, so those even
    powers span the polynomial solutions.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    coeff = Fraction(falling_factorial_sum(k, h), (-2) ** k)
    if coeff.denominator != 1:
        raise ArithmeticError(f"residual unexpectedly non-integer: {coeff}")
    return int(coeff), 2 * h - 1


# ---------------------------------------------------------------------------
# Reconstruction of a polynomial from its spherical-derivative data
# ---------------------------------------------------------------------------

AlphaPoly = tuple[Multivector, ...]  # coefficients by power of alpha


@dataclass(frozen=True)
class ReconstructionInput:
    """The data determining a degree-2k polynomial up to its constant term.

    ``c`` lists the k univariate alpha-polynomials multiplying beta^(2l) in
    the spherical derivative; ``s_minus1`` pins the free constant.
    """

    k: int
    c: tuple[AlphaPoly, ...]
    s_minus1: Multivector

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be >= 0")
        if len(self.c) != self.k:
            raise ValueError(f"expected {self.k} coefficient polynomials, got {len(self.c)}")
        object.__setattr__(
            self, "c", tuple(_trim(tuple(cl)) for cl in self.c)
        )

    @property
    def algebra(self) -> Algebra:
        return self.s_minus1.algebra


def _trim(c: AlphaPoly) -> AlphaPoly:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c[:n]


def _alpha_coeff(c: AlphaPoly, i: int, algebra: Algebra) -> Multivector:
    return c[i] if i < len(c) else algebra.zero()


def _second_derivative(c: AlphaPoly) -> AlphaPoly:
    return _trim(tuple(c[i] * (i * (i - 1)) for i in range(2, len(c))))


def harmonicity_check(rec: ReconstructionInput) -> bool:
    """Exact blade-wise check of c_l'' = -(2l+2)(2l+3) c_(l+1), c_(k-1)'' = 0."""
    k = rec.k
    algebra = rec.algebra
    for l in range(k - 1):
        lhs = _second_derivative(rec.c[l])
        rhs = _trim(tuple(cv * (-(2 * l + 2) * (2 * l + 3)) for cv in rec.c[l + 1]))
        if lhs != rhs:
            return False
    if k >= 1 and _second_derivative(rec.c[k - 1]):
        return False
    return True


def extract_reconstruction(
    fs: BiPoly, k: int, s_minus1: Multivector | int | Fraction = 0
) -> ReconstructionInput:
    """Read the c-polynomials off an even stem of beta-degree < 2k.

    This is the shape the spherical derivative of a kernel member always has;
    anything wider is rejected.
    """
    algebra = fs.algebra
    if any(eb % 2 for _, eb in fs.terms):
        raise ValueError("stem is not even in beta")
    if fs.beta_degree() > 2 * k - 2:
        raise ValueError(
            f"beta-degree {fs.beta_degree()} too large for k={k}: not of kernel shape"
        )
    c = []
    for l in range(k):
        col = fs.beta_coefficient(2 * l)
        width = max(col, default=-1) + 1
        c.append(tuple(col.get(i, algebra.zero()) for i in range(width)))
    return ReconstructionInput(k, tuple(c), as_multivector(algebra, s_minus1))


def reconstruct_entire(rec: ReconstructionInput) -> SlicePoly:
    """Rebuild the unique degree-2k polynomial with the given derivative data.

    The s-sequence is read off c_0 by matching alpha powers; the remaining
    c_l are cross-validated against it.  The constant term is
    (2k+1)! * s_minus1.
    """
    if not harmonicity_check(rec):
        raise ValueError("coefficient polynomials violate the harmonicity system")
    k = rec.k
    algebra = rec.algebra
    fact = factorial(2 * k + 1)
    if k == 0:
        return SlicePoly(algebra, [rec.s_minus1])

    c0 = rec.c[0]
    if len(c0) - 1 > 2 * k - 1:
        raise ValueError(f"c_0 has degree {len(c0) - 1}, above the bound {2 * k - 1}")
    s = [
        _alpha_coeff(c0, eta, algebra) * Fraction(factorial(eta), fact)
        for eta in range(2 * k)
    ]
    for l in range(1, k):
        bound = 2 * k - 2 * l - 1
        if len(rec.c[l]) - 1 > bound:
            raise ValueError(f"c_{l} has degree {len(rec.c[l]) - 1}, above the bound {bound}")
        scale = Fraction(fact, factorial(2 * l + 1)) * (-1 if l % 2 else 1)
        expected = _trim(
            tuple(
                s[eta + 2 * l] * (scale / factorial(eta)) for eta in range(bound + 1)
            )
        )
        if expected != rec.c[l]:
            raise ValueError(f"c_{l} is inconsistent with the data extracted from c_0")

    coeffs = [rec.s_minus1 * fact]
    coeffs += [s[l - 1] * Fraction(fact, factorial(l)) for l in range(1, 2 * k + 1)]
    return SlicePoly(algebra, coeffs)


def spherical_reconstruction_roundtrip(
    poly: SlicePoly, k: int
) -> SlicePoly:
    """Extract the reconstruction data of a degree <= 2k polynomial and rebuild it.

    Convenience wrapper used by demos and tests; the free constant is chosen
    so the round trip is exact.
    """
    if poly.degree > 2 * k:
        raise ValueError(f"degree {poly.degree} exceeds 2k = {2 * k}")
    fs = stem_components(poly).spherical_derivative()
    s_minus1 = poly.coefficient(0) * Fraction(1, factorial(2 * k + 1))
    return reconstruct_entire(extract_reconstruction(fs, k, s_minus1))

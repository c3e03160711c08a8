"""Brute-force oracle: polynomials in the paravector coordinates x_0..x_m.

Slice polynomials expand here into honest multivariate polynomials with
multivector coefficients, and the Dirac and Laplace operators act
coordinate-wise on them.  This path shares nothing with the stem-function
shortcut, which is exactly what makes it a useful cross-check.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .algebra import Algebra, Multivector, Rational, as_multivector, blade_name, blade_sort_key
from .stems import SlicePoly


class DiracConvention(Enum):
    """Overall factor of the Cauchy-Riemann-type operator.

    HALF applies the classical 1/2, UNITAL leaves it out; the two differ by
    nothing but that scalar.
    """

    HALF = "half"
    UNITAL = "unital"

    @property
    def factor(self) -> Fraction:
        return Fraction(1, 2) if self is DiracConvention.HALF else Fraction(1)


class MultiPoly:
    """Sparse polynomial over R_m in m+1 commuting variables x_0..x_m.

    Variables commute with everything; the multivector coefficients do not
    commute with each other, so products keep left-to-right coefficient order.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms):
        nvars = algebra.m + 1
        clean: dict[tuple[int, ...], Multivector] = {}
        for expo, coeff in dict(terms).items():
            expo = tuple(expo)
            if len(expo) != nvars or any(e < 0 for e in expo):
                raise ValueError(f"exponent vector {expo} invalid for m={algebra.m}")
            mv = as_multivector(algebra, coeff)
            if mv:
                clean[expo] = mv
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def zero(cls, algebra: Algebra) -> "MultiPoly":
        return cls(algebra, {})

    @classmethod
    def constant(cls, algebra: Algebra, value) -> "MultiPoly":
        return cls(algebra, {(0,) * (algebra.m + 1): as_multivector(algebra, value)})

    @classmethod
    def variable(cls, algebra: Algebra, i: int) -> "MultiPoly":
        if not 0 <= i <= algebra.m:
            raise IndexError(f"variable index {i} out of range 0..{algebra.m}")
        expo = [0] * (algebra.m + 1)
        expo[i] = 1
        return cls(algebra, {tuple(expo): algebra.scalar(1)})

    @property
    def terms(self):
        return dict(self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def _check(self, other: "MultiPoly"):
        if other.algebra != self.algebra:
            raise ValueError(f"algebra mismatch: m={self.algebra.m} vs m={other.algebra.m}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for expo, c in other._terms.items():
            prev = out.get(expo)
            out[expo] = c if prev is None else prev + c
        return MultiPoly(self.algebra, out)

    def __neg__(self):
        return MultiPoly(self.algebra, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MultiPoly(self.algebra, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        acc: dict[tuple[int, ...], Multivector] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                expo = tuple(x + y for x, y in zip(ea, eb))
                c = ca * cb
                prev = acc.get(expo)
                acc[expo] = c if prev is None else prev + c
        return MultiPoly(self.algebra, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def scale_right(self, mv) -> "MultiPoly":
        """Multiply every coefficient by a constant multivector on the right."""
        mv = as_multivector(self.algebra, mv)
        return MultiPoly(self.algebra, {e: c * mv for e, c in self._terms.items()})

    # ----- calculus ------------------------------------------------------

    def partial(self, i: int) -> "MultiPoly":
        """Formal partial derivative in x_i."""
        if not 0 <= i <= self.algebra.m:
            raise IndexError(f"variable index {i} out of range 0..{self.algebra.m}")
        out = {}
        for expo, c in self._terms.items():
            if expo[i]:
                e = list(expo)
                e[i] -= 1
                out[tuple(e)] = c * expo[i]
        return MultiPoly(self.algebra, out)

    def _laplacian_once(self) -> "MultiPoly":
        acc: dict[tuple[int, ...], Multivector] = {}
        for expo, c in self._terms.items():
            for i, ei in enumerate(expo):
                if ei >= 2:
                    e = list(expo)
                    e[i] -= 2
                    key = tuple(e)
                    term = c * (ei * (ei - 1))
                    prev = acc.get(key)
                    acc[key] = term if prev is None else prev + term
        return MultiPoly(self.algebra, acc)

    def laplacian(self, power: int = 1) -> "MultiPoly":
        """(sum_i d^2/dx_i^2)^power; power 0 is the identity."""
        if power < 0:
            raise ValueError("Laplacian power must be >= 0")
        out = self
        for _ in range(power):
            out = out._laplacian_once()
        return out

    def dirac(self, convention: DiracConvention = DiracConvention.HALF) -> "MultiPoly":
        """c * (d/dx_0 + sum_j e_j d/dx_j), the e_j acting on the left."""
        acc: dict[tuple[int, ...], Multivector] = {}
        for expo, c in self.partial(0)._terms.items():
            acc[expo] = c
        for j in range(1, self.algebra.m + 1):
            ej = self.algebra.generator(j)
            for expo, c in self.partial(j)._terms.items():
                term = ej * c
                prev = acc.get(expo)
                acc[expo] = term if prev is None else prev + term
        factor = convention.factor
        return MultiPoly(self.algebra, {e: c * factor for e, c in acc.items()})

    def evaluate(self, point) -> Multivector:
        """Exact value at a rational point of the paravector space."""
        point = [Fraction(p) for p in point]
        if len(point) != self.algebra.m + 1:
            raise ValueError(f"point must have {self.algebra.m + 1} coordinates")
        acc = self.algebra.zero()
        for expo, c in self._terms.items():
            scale = Fraction(1)
            for p, e in zip(point, expo):
                if e:
                    scale *= p**e
            acc = acc + c * scale
        return acc

    def set_zero(self, indices) -> "MultiPoly":
        """Substitute x_i = 0 for every i in ``indices``."""
        idx = set(indices)
        out = {}
        for expo, c in self._terms.items():
            if all(expo[i] == 0 for i in idx):
                out[expo] = c
        return MultiPoly(self.algebra, out)

    # ----- canonical text -------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        flat = []  # (expo, blade_mask, rational)
        for expo in sorted(self._terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            mv = self._terms[expo]
            for mask in sorted(mv.terms, key=blade_sort_key):
                flat.append((expo, mask, mv.terms[mask]))
        parts = []
        for expo, mask, r in flat:
            pieces = []
            mag = abs(r)
            vars_part = " ".join(
                f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in enumerate(expo) if e
            )
            bname = blade_name(mask, self.algebra.m)
            tail = " ".join(p for p in (vars_part, bname) if p)
            if not tail:
                pieces.append(str(mag))
            elif mag == 1:
                pieces.append(tail)
            else:
                pieces.append(f"{mag} {tail}")
            body = " ".join(pieces)
            if not parts:
                parts.append(body if r > 0 else "-" + body)
            else:
                parts.append(("+ " if r > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"MultiPoly(m={self.algebra.m}: {self})"


@lru_cache(maxsize=None)
def _paravector_power(algebra: Algebra, n: int) -> MultiPoly:
    # Cached; results are immutable so sharing across callers is safe.
    if n == 0:
        return MultiPoly.constant(algebra, 1)
    x = MultiPoly(
        algebra,
        {
            tuple(1 if j == i else 0 for j in range(algebra.m + 1)): (
                algebra.scalar(1) if i == 0 else algebra.generator(i)
            )
            for i in range(algebra.m + 1)
        },
    )
    return _paravector_power(algebra, n - 1) * x


def expand_slice_poly(poly: SlicePoly) -> MultiPoly:
    """Substitute x = x_0 + sum_j x_j e_j and collect monomials.

    Powers multiply out by the noncommutative product; each coefficient a_n
    then lands on the right of its power.
    """
    algebra = poly.algebra
    out = MultiPoly.zero(algebra)
    for n, a in enumerate(poly.coefficients):
        if not a:
            continue
        out = out + _paravector_power(algebra, n).scale_right(a)
    return out

"""Exact arithmetic in the Clifford algebras R_m = Cl(0,m).

Elements are sparse maps from basis blades (bitmasks over the m anticommuting
generators, each squaring to -1) to arbitrary-precision rationals, so every
operation is exact.  Only the negative-definite signatures with an odd number
of generators m >= 3 are supported; those are the algebras where the critical
Laplacian power (m-1)/2 is an integer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from types import MappingProxyType

Rational = int | Fraction


def blade_product(a: int, b: int) -> tuple[int, int]:
    """Geometric product of two basis blades given as index bitsets.

    Returns ``(sign, mask)`` with ``mask = a ^ b``.  The sign counts the
    generator transpositions needed to interleave the two sorted index
    sequences, plus one factor -1 per shared generator (e_i * e_i = -1).
    """
    swaps = 0
    t = a >> 1
    while t:
        swaps += (t & b).bit_count()
        t >>= 1
    swaps += (a & b).bit_count()
    return (1 if swaps % 2 == 0 else -1), a ^ b


def blade_indices(mask: int) -> tuple[int, ...]:
    """Sorted 1-based generator indices contained in a blade mask."""
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def blade_sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical blade ordering: by grade, then lexicographic on indices."""
    return (mask.bit_count(), blade_indices(mask))


def blade_name(mask: int, m: int) -> str:
    """Text name of a blade: '' for the scalar, 'e13', or 'e{1,13}' for m >= 10."""
    if mask == 0:
        return ""
    idx = blade_indices(mask)
    if m <= 9:
        return "e" + "".join(str(i) for i in idx)
    return "e{" + ",".join(str(i) for i in idx) + "}"


@dataclass(frozen=True)
class Algebra:
    """Signature of R_m: m anticommuting imaginary generators.

    The critical Laplacian power ``(m - 1) / 2`` is exposed as
    :attr:`sce_exponent`.
    """

    m: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 3 or self.m % 2 == 0:
            raise ValueError(f"m must be an odd integer >= 3, got {self.m!r}")

    @property
    def sce_exponent(self) -> int:
        return (self.m - 1) // 2

    @property
    def dimension(self) -> int:
        return 1 << self.m

    def blade_masks(self, max_grade: int | None = None):
        """Iterate every blade mask, optionally capped at a grade."""
        for mask in range(self.dimension):
            if max_grade is None or mask.bit_count() <= max_grade:
                yield mask

    # ----- multivector factories -------------------------------------

    def zero(self) -> "Multivector":
        return Multivector(self, {})

    def scalar(self, value: Rational) -> "Multivector":
        return Multivector(self, {0: Fraction(value)})

    def blade(self, mask: int, coeff: Rational = 1) -> "Multivector":
        return Multivector(self, {mask: Fraction(coeff)})

    def generator(self, i: int) -> "Multivector":
        """The generator e_i, 1-based."""
        if not 1 <= i <= self.m:
            raise ValueError(f"generator index must be in 1..{self.m}, got {i}")
        return self.blade(1 << (i - 1))

    def paravector(self, coords) -> "Multivector":
        """x_0 + x_1 e_1 + ... + x_m e_m from m+1 rational coordinates."""
        coords = list(coords)
        if len(coords) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} coordinates, got {len(coords)}")
        terms = {0: Fraction(coords[0])}
        for i, c in enumerate(coords[1:], start=1):
            terms[1 << (i - 1)] = Fraction(c)
        return Multivector(self, terms)

    def multivector(self, terms) -> "Multivector":
        return Multivector(self, terms)

    def parse(self, text: str) -> "Multivector":
        return Multivector.parse(self, text)

    def from_json(self, obj) -> "Multivector":
        return Multivector.from_json(self, obj)


def as_multivector(algebra: Algebra, value) -> "Multivector":
    """Coerce a rational or Multivector into an element of this algebra."""
    if isinstance(value, Multivector):
        if value.algebra != algebra:
            raise ValueError(f"algebra mismatch: m={value.algebra.m} vs m={algebra.m}")
        return value
    if isinstance(value, (int, Fraction)):
        return algebra.scalar(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as a multivector")


class Multivector:
    """Element of R_m as a sparse blade -> Fraction map; zeros never stored.

    Instances are immutable value objects: all arithmetic returns fresh
    multivectors and instances may be shared freely across threads.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms):
        clean: dict[int, Fraction] = {}
        limit = 1 << algebra.m
        for mask, coeff in dict(terms).items():
            if not isinstance(mask, int) or not 0 <= mask < limit:
                raise ValueError(f"blade mask {mask!r} out of range for m={algebra.m}")
            c = Fraction(coeff)
            if c:
                clean[mask] = c
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def coefficient(self, mask: int) -> Fraction:
        return self._terms.get(mask, Fraction(0))

    def scalar_part(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def is_real(self) -> bool:
        return all(mask == 0 for mask in self._terms)

    def is_paravector(self) -> bool:
        return all(mask.bit_count() <= 1 for mask in self._terms)

    def max_grade(self) -> int:
        return max((mask.bit_count() for mask in self._terms), default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ----- ring operations --------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Multivector):
            if other.algebra != self.algebra:
                raise ValueError(
                    f"algebra mismatch: m={self.algebra.m} vs m={other.algebra.m}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Multivector(self.algebra, {0: Fraction(other)})
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for mask, c in rhs._terms.items():
            out[mask] = out.get(mask, Fraction(0)) + c
        return Multivector(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Multivector(self.algebra, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.algebra.zero()
            return Multivector(
                self.algebra, {m: c * other for m, c in self._terms.items()}
            )
        if not isinstance(other, Multivector):
            return NotImplemented
        rhs = self._coerce(other)
        acc: dict[int, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in rhs._terms.items():
                sign, mask = blade_product(ma, mb)
                c = ca * cb if sign > 0 else -(ca * cb)
                prev = acc.get(mask)
                acc[mask] = c if prev is None else prev + c
        return Multivector(self.algebra, acc)

    def __rmul__(self, other):
        # Only rationals reach here; they commute with everything.
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return self.algebra == other.algebra and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_real() and self.scalar_part() == other
        return NotImplemented

    def __hash__(self):
        if self.is_real():
            return hash(self.scalar_part())
        return hash((self.algebra.m, frozenset(self._terms.items())))

    # ----- involutions and quadratic invariants -----------------------

    def conjugate(self) -> "Multivector":
        """Clifford conjugation: the antiautomorphism sending e_i to -e_i.

        A grade-g blade picks up the sign (-1)^(g(g+1)/2).
        """
        out = {}
        for mask, c in self._terms.items():
            g = mask.bit_count()
            out[mask] = -c if (g * (g + 1) // 2) % 2 else c
        return Multivector(self.algebra, out)

    def trace(self) -> "Multivector":
        """t(x) = x + x^c."""
        return self + self.conjugate()

    def norm(self) -> "Multivector":
        """n(x) = x * x^c (the *-algebra norm, not a vector length)."""
        return self * self.conjugate()

    def quadratic_invariants(self) -> tuple["Multivector", "Multivector"]:
        return self.trace(), self.norm()

    def is_imaginary_unit(self) -> bool:
        """True when t(x) = 0 and n(x) = 1; such x satisfy x^2 = -1."""
        return not self.trace() and self.norm() == 1

    def cone_decompose(self) -> "ConeDecomposition":
        """Split x = alpha + J*beta when x lies in the quadratic cone.

        Membership is decided exactly from t(x) and n(x) being real.  beta is
        never materialised; its square ``n(x) - alpha^2`` is stored together
        with the raw imaginary part ``beta * J`` so the result stays rational.
        """
        t, n = self.quadratic_invariants()
        if not t.is_real() or not n.is_real():
            return ConeDecomposition(ConeKind.NOT_IN_CONE, None, None, None)
        alpha = t.scalar_part() / 2
        beta_squared = n.scalar_part() - alpha * alpha
        imaginary = self - alpha
        if not imaginary:
            if beta_squared != 0:
                raise ArithmeticError("inconsistent quadratic invariants on a real element")
            return ConeDecomposition(ConeKind.REAL, alpha, Fraction(0), imaginary)
        if beta_squared <= 0:
            # t, n real forces x = alpha + J beta with beta > 0 once x is not real
            raise ArithmeticError("quadratic cone decomposition failed: beta^2 <= 0")
        return ConeDecomposition(ConeKind.NON_REAL, alpha, beta_squared, imaginary)

    # ----- text and JSON forms -----------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mask in sorted(self._terms, key=blade_sort_key):
            c = self._terms[mask]
            name = blade_name(mask, self.algebra.m)
            mag = abs(c)
            if mask == 0:
                body = str(mag)
            elif mag == 1:
                body = name
            else:
                body = f"{mag} {name}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Multivector(m={self.algebra.m}: {self})"

    _TOKEN_RE = re.compile(
        r"\s*(?:(?P<sign>[+-])"
        r"|(?P<rat>\d+(?:/\d+)?)"
        r"|(?P<blade>e\{\d+(?:,\d+)*\}|e\d+)"
        r"|(?P<junk>\S))"
    )

    @classmethod
    def parse(cls, algebra: Algebra, text: str) -> "Multivector":
        """Parse the textual sum-of-terms grammar, e.g. ``3/2 + 2 e1 - 1/3 e13``.

        Each term is an optional rational followed by an optional blade; for
        m >= 10 blades must use the braced form ``e{1,13}``.
        """
        acc: dict[int, Fraction] = {}
        sign = 1
        coeff: Fraction | None = None
        mask: int | None = None
        started = False  # current term has content

        def flush():
            nonlocal sign, coeff, mask, started
            c = coeff if coeff is not None else Fraction(1)
            k = mask if mask is not None else 0
            acc[k] = acc.get(k, Fraction(0)) + sign * c
            sign, coeff, mask, started = 1, None, None, False

        pos = 0
        pending_sign = False
        while pos < len(text):
            match = cls._TOKEN_RE.match(text, pos)
            if match is None:
                break
            pos = match.end()
            if match.lastgroup == "junk":
                raise ValueError(f"unexpected character {match.group('junk')!r} in multivector text")
            if match.lastgroup == "sign":
                if started:
                    flush()
                elif pending_sign:
                    raise ValueError("consecutive signs in multivector text")
                if match.group("sign") == "-":
                    sign = -sign
                pending_sign = True
            elif match.lastgroup == "rat":
                if started:
                    raise ValueError("missing sign between terms in multivector text")
                coeff = Fraction(match.group("rat"))
                started = True
                pending_sign = False
            else:
                if mask is not None:
                    raise ValueError("two blades in one term in multivector text")
                mask = _parse_blade_token(match.group("blade"), algebra.m)
                started = True
                pending_sign = False
        if pending_sign and not started:
            raise ValueError("dangling sign in multivector text")
        if started:
            flush()
        return Multivector(algebra, acc)

    def to_json_dict(self) -> dict[str, str]:
        out = {}
        for mask in sorted(self._terms, key=blade_sort_key):
            out[_blade_json_key(mask, self.algebra.m)] = str(self._terms[mask])
        return out

    @classmethod
    def from_json(cls, algebra: Algebra, obj) -> "Multivector":
        terms = {}
        for key, value in obj.items():
            mask = _parse_blade_json_key(key, algebra.m)
            terms[mask] = terms.get(mask, Fraction(0)) + Fraction(value)
        return Multivector(algebra, terms)


def _parse_blade_token(token: str, m: int) -> int:
    if token.startswith("e{"):
        idx = [int(s) for s in token[2:-1].split(",")]
    else:
        if m > 9:
            raise ValueError(f"blade {token!r}: use the braced form e{{i,j,...}} for m >= 10")
        idx = [int(ch) for ch in token[1:]]
    if not idx or any(not 1 <= i <= m for i in idx):
        raise ValueError(f"blade {token!r}: indices must lie in 1..{m}")
    if any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"blade {token!r}: indices must be strictly increasing")
    return sum(1 << (i - 1) for i in idx)


def _blade_json_key(mask: int, m: int) -> str:
    if mask == 0:
        return ""
    idx = blade_indices(mask)
    if m <= 9:
        return "".join(str(i) for i in idx)
    return ",".join(str(i) for i in idx)


def _parse_blade_json_key(key: str, m: int) -> int:
    if key == "":
        return 0
    if "," in key:
        idx = [int(s) for s in key.split(",")]
    else:
        if m > 9:
            raise ValueError(f"blade key {key!r}: use comma-separated indices for m >= 10")
        idx = [int(ch) for ch in key]
    if any(not 1 <= i <= m for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"invalid blade key {key!r}")
    return sum(1 << (i - 1) for i in idx)


class ConeKind(Enum):
    NOT_IN_CONE = "not_in_cone"
    REAL = "real"
    NON_REAL = "non_real"


@dataclass(frozen=True)
class ConeDecomposition:
    """Result of splitting x = alpha + J*beta over the quadratic cone.

    ``imaginary`` holds beta*J (the raw imaginary part), not J itself, so
    that no square root is ever taken; ``beta_squared`` carries the scale.
    """

    kind: ConeKind
    alpha: Fraction | None
    beta_squared: Fraction | None
    imaginary: Multivector | None

    @property
    def in_cone(self) -> bool:
        return self.kind is not ConeKind.NOT_IN_CONE

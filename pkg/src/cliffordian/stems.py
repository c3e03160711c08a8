"""Stem-function calculus for slice regular polynomials.

A polynomial P(x) = sum_n x^n a_n with right multivector coefficients induces
a function on the quadratic cone through the pair (F0, F1) of bivariate stem
components defined by (alpha + i beta)^n = P_n + i Q_n.  F0 is even and F1 odd
in beta, the spherical derivative is F1/beta, and values on the cone are
F0 + J*F1.  All stems here are polynomial, so every manipulation is an exact
identity between rational coefficient tables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .algebra import Algebra, Multivector, Rational, as_multivector


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    NONE = "none"


_FLIP = {Parity.EVEN: Parity.ODD, Parity.ODD: Parity.EVEN, Parity.NONE: Parity.NONE}


class BiPoly:
    """Polynomial in (alpha, beta) with multivector coefficients.

    A parity in beta may be declared; it is validated on construction and
    tracked through derivatives and beta shifts.
    """

    __slots__ = ("algebra", "_terms", "parity")

    def __init__(self, algebra: Algebra, terms, parity: Parity = Parity.NONE):
        clean: dict[tuple[int, int], Multivector] = {}
        for (ea, eb), coeff in dict(terms).items():
            if ea < 0 or eb < 0:
                raise ValueError(f"negative exponent in term ({ea}, {eb})")
            mv = as_multivector(algebra, coeff)
            if not mv:
                continue
            if parity is Parity.EVEN and eb % 2:
                raise ValueError(f"odd beta power {eb} in a declared-even polynomial")
            if parity is Parity.ODD and eb % 2 == 0:
                raise ValueError(f"even beta power {eb} in a declared-odd polynomial")
            clean[(ea, eb)] = mv
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "parity", parity)

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def zero(cls, algebra: Algebra, parity: Parity = Parity.NONE) -> "BiPoly":
        return cls(algebra, {}, parity)

    @property
    def terms(self):
        return dict(self._terms)

    def coefficient(self, ea: int, eb: int) -> Multivector:
        return self._terms.get((ea, eb), self.algebra.zero())

    def beta_coefficient(self, eb: int) -> dict[int, Multivector]:
        """Map alpha-exponent -> coefficient at a fixed beta power."""
        return {ea: c for (ea, b), c in self._terms.items() if b == eb}

    def alpha_degree(self) -> int:
        return max((ea for ea, _ in self._terms), default=-1)

    def beta_degree(self) -> int:
        return max((eb for _, eb in self._terms), default=-1)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        return hash((self.algebra.m, frozenset(self._terms.items())))

    def __add__(self, other):
        if not isinstance(other, BiPoly) or other.algebra != self.algebra:
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
        parity = self.parity if self.parity is other.parity else Parity.NONE
        return BiPoly(self.algebra, out, parity)

    def __neg__(self):
        return BiPoly(self.algebra, {k: -c for k, c in self._terms.items()}, self.parity)

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return BiPoly(
            self.algebra, {k: c * scalar for k, c in self._terms.items()}, self.parity
        )

    __rmul__ = __mul__

    def d_alpha(self) -> "BiPoly":
        out = {}
        for (ea, eb), c in self._terms.items():
            if ea:
                out[(ea - 1, eb)] = c * ea
        return BiPoly(self.algebra, out, self.parity)

    def d_beta(self) -> "BiPoly":
        out = {}
        for (ea, eb), c in self._terms.items():
            if eb:
                out[(ea, eb - 1)] = c * eb
        return BiPoly(self.algebra, out, _FLIP[self.parity])

    def mul_beta(self, power: int = 1) -> "BiPoly":
        parity = self.parity if power % 2 == 0 else _FLIP[self.parity]
        return BiPoly(
            self.algebra, {(ea, eb + power): c for (ea, eb), c in self._terms.items()}, parity
        )

    def div_beta(self) -> "BiPoly":
        """Exact division by beta; every term must contain a beta factor."""
        out = {}
        for (ea, eb), c in self._terms.items():
            if eb == 0:
                raise ValueError("division by beta impossible: term free of beta")
            out[(ea, eb - 1)] = c
        return BiPoly(self.algebra, out, _FLIP[self.parity])

    def evaluate(self, alpha: Rational, beta: Rational) -> Multivector:
        alpha, beta = Fraction(alpha), Fraction(beta)
        acc = self.algebra.zero()
        for (ea, eb), c in self._terms.items():
            acc = acc + c * (alpha**ea * beta**eb)
        return acc

    def as_gamma_poly(self) -> "GammaPoly":
        """Rewrite an even polynomial with gamma in place of beta^2."""
        out = {}
        for (ea, eb), c in self._terms.items():
            if eb % 2:
                raise ValueError(f"odd beta power {eb}: no gamma form exists")
            out[(ea, eb // 2)] = c
        return GammaPoly(self.algebra, out)

    def _sorted_keys(self):
        return sorted(self._terms, key=lambda k: (-(k[0] + k[1]), -k[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for ea, eb in self._sorted_keys():
            c = self._terms[(ea, eb)]
            vars_part = " ".join(
                p
                for p in (
                    "a" if ea == 1 else f"a^{ea}" if ea else "",
                    "b" if eb == 1 else f"b^{eb}" if eb else "",
                )
                if p
            )
            if c.is_real():
                r = c.scalar_part()
                mag = abs(r)
                if not vars_part:
                    body = str(mag)
                elif mag == 1:
                    body = vars_part
                else:
                    body = f"{mag} {vars_part}"
                negative = r < 0
            else:
                body = f"({c}) {vars_part}" if vars_part else f"({c})"
                negative = False
            if not parts:
                parts.append(body if not negative else "-" + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"BiPoly(m={self.algebra.m}: {self})"

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"a": ea, "b": eb, "coef": self._terms[(ea, eb)].to_json_dict()}
                for ea, eb in self._sorted_keys()
            ]
        }


class GammaPoly:
    """Polynomial in (alpha, gamma) where gamma stands for beta squared."""

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra: Algebra, terms):
        clean = {}
        for (ea, eg), coeff in dict(terms).items():
            if ea < 0 or eg < 0:
                raise ValueError(f"negative exponent in term ({ea}, {eg})")
            mv = as_multivector(algebra, coeff)
            if mv:
                clean[(ea, eg)] = mv
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GammaPoly is immutable")

    @property
    def terms(self):
        return dict(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, GammaPoly):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def d_gamma(self) -> "GammaPoly":
        out = {}
        for (ea, eg), c in self._terms.items():
            if eg:
                out[(ea, eg - 1)] = c * eg
        return GammaPoly(self.algebra, out)

    def to_bipoly(self) -> BiPoly:
        """Substitute gamma = beta^2 back; the round trip is the identity."""
        return BiPoly(
            self.algebra,
            {(ea, 2 * eg): c for (ea, eg), c in self._terms.items()},
            Parity.EVEN,
        )


@dataclass(frozen=True)
class StemPair:
    """Stem components (F0 even in beta, F1 odd in beta) of a slice function."""

    f0: BiPoly
    f1: BiPoly

    def __post_init__(self):
        if self.f0.algebra != self.f1.algebra:
            raise ValueError("stem components live in different algebras")
        for key in self.f0.terms:
            if key[1] % 2:
                raise ValueError("F0 must be even in beta")
        for key in self.f1.terms:
            if key[1] % 2 == 0:
                raise ValueError("F1 must be odd in beta")

    @property
    def algebra(self) -> Algebra:
        return self.f0.algebra

    def spherical_derivative(self) -> BiPoly:
        """F1 / beta, the even stem of the spherical derivative."""
        return self.f1.div_beta()

    def evaluate(self, alpha: Rational, beta: Rational, unit: Multivector) -> Multivector:
        """Value F0(alpha, beta) + J * F1(alpha, beta) at a cone point.

        ``unit`` must satisfy t(J) = 0, n(J) = 1 and beta must be >= 0, the
        normal form of cone points.
        """
        if Fraction(beta) < 0:
            raise ValueError("beta must be nonnegative")
        unit = as_multivector(self.algebra, unit)
        if not unit.is_imaginary_unit():
            raise ValueError(f"{unit} is not an imaginary unit")
        return self.f0.evaluate(alpha, beta) + unit * self.f1.evaluate(alpha, beta)


def slice_eval(stem: StemPair, alpha: Rational, beta: Rational, unit: Multivector) -> Multivector:
    return stem.evaluate(alpha, beta, unit)


class SlicePoly:
    """Polynomial sum_n x^n a_n with multivector coefficients on the right."""

    __slots__ = ("algebra", "coefficients")

    def __init__(self, algebra: Algebra, coefficients):
        coeffs = [as_multivector(algebra, c) for c in coefficients]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("SlicePoly is immutable")

    @classmethod
    def zero(cls, algebra: Algebra) -> "SlicePoly":
        return cls(algebra, [])

    @classmethod
    def monomial(cls, algebra: Algebra, n: int, coeff: Rational | Multivector = 1) -> "SlicePoly":
        """The monomial x^n * coeff."""
        return cls(algebra, [0] * n + [as_multivector(algebra, coeff)])

    @property
    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def coefficient(self, n: int) -> Multivector:
        if 0 <= n < len(self.coefficients):
            return self.coefficients[n]
        return self.algebra.zero()

    def __bool__(self):
        return bool(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, SlicePoly):
            return NotImplemented
        return self.algebra == other.algebra and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.algebra.m, self.coefficients))

    def __add__(self, other):
        if not isinstance(other, SlicePoly) or other.algebra != self.algebra:
            return NotImplemented
        n = max(len(self.coefficients), len(other.coefficients))
        return SlicePoly(
            self.algebra,
            [self.coefficient(i) + other.coefficient(i) for i in range(n)],
        )

    def __neg__(self):
        return SlicePoly(self.algebra, [-c for c in self.coefficients])

    def __sub__(self, other):
        if not isinstance(other, SlicePoly):
            return NotImplemented
        return self + (-other)

    # ----- text grammar -------------------------------------------------

    def __str__(self):
        if not self.coefficients:
            return "0"
        parts = []
        for n in range(self.degree, -1, -1):
            c = self.coefficient(n)
            if not c:
                continue
            xpow = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
            if c.is_real():
                r = c.scalar_part()
                mag = abs(r)
                if not xpow:
                    body = str(mag)
                elif mag == 1:
                    body = xpow
                else:
                    body = f"{mag} {xpow}"
                negative = r < 0
            else:
                body = f"{xpow} ({c})" if xpow else f"({c})"
                negative = False
            if not parts:
                parts.append(body if not negative else "-" + body)
            else:
                parts.append(("- " if negative else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"SlicePoly(m={self.algebra.m}: {self})"

    @classmethod
    def parse(cls, algebra: Algebra, text: str) -> "SlicePoly":
        """Parse e.g. ``x^5 + (1/2 + 2 e1) x^2 - 3``.

        A term is a power of x with one optional coefficient, written on
        either side: a parenthesised multivector sum, a rational, or a
        rational-times-blade pair.
        """
        slots: dict[int, Multivector] = {}
        for sign, term in _split_signed_terms(text):
            n, coeff = _parse_poly_term(algebra, term)
            mv = coeff * sign
            slots[n] = slots.get(n, algebra.zero()) + mv
        if not slots:
            return cls.zero(algebra)
        degree = max(slots)
        return cls(algebra, [slots.get(i, algebra.zero()) for i in range(degree + 1)])


def _split_signed_terms(text: str):
    """Split a sum at top-level +/- signs, keeping parenthesised groups whole."""
    terms: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    pending = False  # a sign is waiting for its term
    cur: list[str] = []

    def flush():
        nonlocal sign, pending, cur
        body = "".join(cur)
        cur = []
        if body.strip():
            terms.append((sign, body))
            sign, pending = 1, False
        elif pending:
            raise ValueError("consecutive signs in polynomial text")

    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced ')' in polynomial text")
        if ch in "+-" and depth == 0:
            flush()
            if ch == "-":
                sign = -sign
            pending = True
            continue
        cur.append(ch)
    if depth != 0:
        raise ValueError("unbalanced '(' in polynomial text")
    if "".join(cur).strip():
        terms.append((sign, "".join(cur)))
    elif pending:
        raise ValueError("dangling sign in polynomial text")
    return terms


_X_RE = re.compile(r"x(?:\^(\d+))?")


def _parse_poly_term(algebra: Algebra, term: str) -> tuple[int, Multivector]:
    pieces: list[tuple[str, str]] = []  # (kind, payload) in textual order
    pos = 0
    while pos < len(term):
        ch = term[pos]
        if ch.isspace() or ch == "*":
            pos += 1
            continue
        if ch == "(":
            end = term.index(")", pos)
            pieces.append(("paren", term[pos + 1 : end]))
            pos = end + 1
        elif ch == "x":
            match = _X_RE.match(term, pos)
            pieces.append(("x", match.group(1) or "1"))
            pos = match.end()
        else:
            chunk = []
            while pos < len(term) and not term[pos].isspace() and term[pos] not in "(*x":
                chunk.append(term[pos])
                pos += 1
            pieces.append(("raw", "".join(chunk)))

    x_positions = [i for i, (kind, _) in enumerate(pieces) if kind == "x"]
    if len(x_positions) > 1:
        raise ValueError(f"more than one power of x in term {term.strip()!r}")
    if x_positions:
        xi = x_positions[0]
        n = int(pieces[xi][1])
        before, after = pieces[:xi], pieces[xi + 1 :]
        if before and after:
            raise ValueError(f"coefficient on both sides of x in term {term.strip()!r}")
        coeff_pieces = before or after
    else:
        n = 0
        coeff_pieces = pieces
        if not coeff_pieces:
            raise ValueError("empty term in polynomial text")

    if not coeff_pieces:
        return n, algebra.scalar(1)
    if any(kind == "paren" for kind, _ in coeff_pieces):
        if len(coeff_pieces) != 1:
            raise ValueError(f"malformed coefficient in term {term.strip()!r}")
        return n, Multivector.parse(algebra, coeff_pieces[0][1])
    return n, Multivector.parse(algebra, " ".join(payload for _, payload in coeff_pieces))


def stem_components(poly: SlicePoly) -> StemPair:
    """Expand (alpha + i beta)^n against each coefficient, split by parity.

    F0 collects the even-in-beta part and F1 the odd part; the right
    coefficients a_n scale each binomial term.
    """
    algebra = poly.algebra
    f0: dict[tuple[int, int], Multivector] = {}
    f1: dict[tuple[int, int], Multivector] = {}
    for n, a in enumerate(poly.coefficients):
        if not a:
            continue
        for j in range(n + 1):
            key = (n - j, j)
            if j % 2 == 0:
                c = comb(n, j) * (-1 if (j // 2) % 2 else 1)
                _accumulate(f0, key, a * c)
            else:
                c = comb(n, j) * (-1 if ((j - 1) // 2) % 2 else 1)
                _accumulate(f1, key, a * c)
    return StemPair(
        BiPoly(algebra, f0, Parity.EVEN), BiPoly(algebra, f1, Parity.ODD)
    )


def spherical_derivative(poly_or_stem) -> BiPoly:
    """Even stem F1/beta of the spherical derivative."""
    stem = poly_or_stem if isinstance(poly_or_stem, StemPair) else stem_components(poly_or_stem)
    return stem.spherical_derivative()


def _accumulate(table: dict, key, value: Multivector):
    prev = table.get(key)
    table[key] = value if prev is None else prev + value

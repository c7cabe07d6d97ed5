"""Sparse multivariate polynomial arithmetic over exact rationals.

A polynomial is a finite map from monomials to nonzero rational
coefficients.  Monomials are dense exponent tuples, one entry per
variable of the ambient ring; the ring itself is fixed by an ordered
tuple of variable names.  Coefficients are `fractions.Fraction`
values, so every operation here is exact and no rounding ever happens.

Monomials are compared in the degree-lexicographic order ("deg-lex"):
first by total degree, ties broken lexicographically with the *last*
declared variable most significant.  The declared variable tuple thus
reads as an ascending chain v1 < v2 < ... < vr, the constant monomial
1 is the least monomial, and the order refines divisibility.

All values are immutable after construction and safe to share across
threads; arithmetic returns new objects.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Rational = Fraction
Mono = tuple[int, ...]


class PolyParseError(ValueError):
    """Raised on malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# monomial helpers
# ---------------------------------------------------------------------------

def deglex_key(mono: Mono) -> tuple:
    """Sort key realizing the deg-lex order (ascending)."""
    return (sum(mono), tuple(reversed(mono)))


def deglex_compare(a: Mono, b: Mono) -> int:
    """Compare two monomials in deg-lex order: -1, 0, or 1."""
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    ka, kb = deglex_key(a), deglex_key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True iff monomial a divides monomial b."""
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    return all(x <= y for x, y in zip(a, b))


def mono_degree(mono: Mono) -> int:
    return sum(mono)


def mono_factorial(mono: Mono) -> int:
    """Product of factorials of the exponents (e1! * e2! * ... * er!)."""
    out = 1
    for e in mono:
        out *= math.factorial(e)
    return out


def mono_str(mono: Mono, var_names: tuple[str, ...]) -> str:
    """Render a bare monomial, e.g. (1, 0, 2) -> 'x1*x3^2'; () exponents -> '1'."""
    factors = []
    for name, e in zip(var_names, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def monomials_of_degree(arity: int, degree: int) -> list[Mono]:
    """All monomials of the given total degree, ascending deg-lex."""
    if arity == 0:
        return [()] if degree == 0 else []
    out: list[Mono] = []

    def rec(prefix: list[int], remaining: int, slot: int) -> None:
        if slot == arity - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slot + 1)

    rec([], degree, 0)
    out.sort(key=deglex_key)
    return out


def monomials_upto(arity: int, degree: int) -> Iterator[Mono]:
    """All monomials of total degree <= degree, ascending deg-lex."""
    for d in range(degree + 1):
        yield from monomials_of_degree(arity, d)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Immutable sparse polynomial over Fraction coefficients.

    `vars` fixes both the arity and the deg-lex variable chain.  The
    term map never stores zero coefficients, and every exponent tuple
    has length equal to the arity.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str], terms: Mapping[Mono, Fraction | int] = ()):
        self.vars: tuple[str, ...] = tuple(vars)
        arity = len(self.vars)
        clean: dict[Mono, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, coeff in items:
            mono = tuple(mono)
            if len(mono) != arity:
                raise ValueError(f"monomial {mono} has arity {len(mono)}, expected {arity}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in monomial {mono}")
            coeff = Fraction(coeff)
            if coeff:
                acc = clean.get(mono, Fraction(0)) + coeff
                if acc:
                    clean[mono] = acc
                else:
                    clean.pop(mono, None)
        self.terms: dict[Mono, Fraction] = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars: Iterable[str]) -> Poly:
        return cls(vars)

    @classmethod
    def constant(cls, vars: Iterable[str], value: Fraction | int) -> Poly:
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): Fraction(value)})

    @classmethod
    def variable(cls, vars: Iterable[str], index: int) -> Poly:
        vars = tuple(vars)
        mono = [0] * len(vars)
        mono[index] = 1
        return cls(vars, {tuple(mono): Fraction(1)})

    @classmethod
    def monomial(cls, vars: Iterable[str], mono: Mono, coeff: Fraction | int = 1) -> Poly:
        return cls(vars, {tuple(mono): Fraction(coeff)})

    # -- basic queries -------------------------------------------------------

    @property
    def arity(self) -> int:
        return len(self.vars)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def individual_degree(self, index: int) -> int:
        """Largest exponent of the index-th variable; 0 for the zero polynomial."""
        return max((m[index] for m in self.terms), default=0)

    def max_individual_degree(self) -> int:
        return max((max(m) for m in self.terms if m), default=0)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def support(self) -> list[Mono]:
        """Monomials with nonzero coefficient, ascending deg-lex."""
        return sorted(self.terms, key=deglex_key)

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other: Poly) -> None:
        if self.vars != other.vars:
            raise ValueError(f"arity/variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: Poly) -> Poly:
        self._check_ring(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return Poly(self.vars, out)

    def __sub__(self, other: Poly) -> Poly:
        self._check_ring(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) - coeff
        return Poly(self.vars, out)

    def __neg__(self) -> Poly:
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: Poly | Fraction | int) -> Poly:
        if isinstance(other, (Fraction, int)):
            return self.scale(other)
        self._check_ring(other)
        out: dict[Mono, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                out[mono] = out.get(mono, Fraction(0)) + ca * cb
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power")
        out = Poly.constant(self.vars, 1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, factor: Fraction | int) -> Poly:
        factor = Fraction(factor)
        return Poly(self.vars, {m: c * factor for m, c in self.terms.items()})

    # -- calculus and evaluation ---------------------------------------------

    def derive(self, mono: Mono) -> Poly:
        """Iterated exact partial derivative with respect to x^mono.

        derive(f, (0,...,0)) is f itself; the result may be zero.
        """
        mono = tuple(mono)
        if len(mono) != self.arity:
            raise ValueError(f"arity mismatch: {len(mono)} vs {self.arity}")
        out: dict[Mono, Fraction] = {}
        for e, c in self.terms.items():
            if all(ei >= mi for ei, mi in zip(e, mono)):
                # falling factorial e_i * (e_i - 1) * ... * (e_i - m_i + 1)
                fall = 1
                for ei, mi in zip(e, mono):
                    fall *= math.perm(ei, mi)
                ne = tuple(ei - mi for ei, mi in zip(e, mono))
                out[ne] = out.get(ne, Fraction(0)) + c * fall
        return Poly(self.vars, out)

    def eval(self, point: Iterable[Fraction | int]) -> Fraction:
        point = [Fraction(p) for p in point]
        if len(point) != self.arity:
            raise ValueError(f"arity mismatch: point has {len(point)} coordinates, expected {self.arity}")
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for p, e in zip(point, mono):
                if e:
                    value *= p ** e
            total += value
        return total

    def homogeneous_components(self) -> list[Poly]:
        """Degree-k slices, indexed 0..deg; empty list for the zero polynomial."""
        if not self.terms:
            return []
        buckets: dict[int, dict[Mono, Fraction]] = {}
        for mono, coeff in self.terms.items():
            buckets.setdefault(sum(mono), {})[mono] = coeff
        return [Poly(self.vars, buckets.get(d, {})) for d in range(self.total_degree() + 1)]

    # -- comparison and rendering ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    __hash__ = None  # mutable-looking container; equality only

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for mono in sorted(self.terms, key=deglex_key, reverse=True):
            coeff = self.terms[mono]
            sign = "-" if coeff < 0 else "+"
            mag = -coeff if coeff < 0 else coeff
            body = mono_str(mono, self.vars)
            if body == "1":
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not pieces:
                pieces.append(text if sign == "+" else f"-{text}")
            else:
                pieces.append(f" {sign} {text}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({self.vars!r}, {self})"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9_]*)|([+\-*/^])|(\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN_RE.finditer(text):
        pos = m.start()
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), pos))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), pos))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), pos))
        else:
            raise PolyParseError(f"unexpected character {m.group(4)!r}", pos)
    tokens.append(("end", "", len(text)))
    return tokens


def parse_poly(text: str, var_order: Iterable[str]) -> Poly:
    """Parse polynomial text against an explicit variable order.

    Grammar: terms joined by '+'/'-'; each term is an optional rational
    coefficient and '*'-separated factors `var` or `var^nat`.  A leading
    sign on the first term is accepted.
    """
    vars = tuple(var_order)
    index = {name: i for i, name in enumerate(vars)}
    tokens = _tokenize(text)
    pos = 0

    def peek() -> tuple[str, str, int]:
        return tokens[pos]

    def take() -> tuple[str, str, int]:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_nat(what: str) -> int:
        kind, value, at = take()
        if kind != "num":
            raise PolyParseError(f"expected {what}", at)
        return int(value)

    def parse_factor(mono: list[int]) -> None:
        kind, value, at = take()
        if kind != "ident":
            raise PolyParseError("expected a variable", at)
        if value not in index:
            raise PolyParseError(f"unknown variable {value!r}", at)
        exp = 1
        if peek()[:2] == ("op", "^"):
            take()
            exp = parse_nat("an exponent")
        mono[index[value]] += exp

    def parse_term() -> tuple[Mono, Fraction]:
        coeff = Fraction(1)
        mono = [0] * len(vars)
        kind, value, at = peek()
        if kind == "num":
            take()
            coeff = Fraction(int(value))
            if peek()[:2] == ("op", "/"):
                take()
                dkind, dvalue, dat = take()
                if dkind != "num" or int(dvalue) == 0:
                    raise PolyParseError("expected a positive denominator", dat)
                coeff /= int(dvalue)
            while peek()[:2] == ("op", "*"):
                take()
                parse_factor(mono)
        elif kind == "ident":
            parse_factor(mono)
            while peek()[:2] == ("op", "*"):
                take()
                parse_factor(mono)
        else:
            raise PolyParseError("expected a term", at)
        return tuple(mono), coeff

    terms: dict[Mono, Fraction] = {}
    sign = 1
    if peek()[0] == "op" and peek()[1] in "+-":
        sign = -1 if take()[1] == "-" else 1
    while True:
        mono, coeff = parse_term()
        coeff *= sign
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
        kind, value, at = take()
        if kind == "end":
            break
        if kind != "op" or value not in "+-":
            raise PolyParseError(f"expected '+', '-' or end of input, got {value!r}", at)
        sign = -1 if value == "-" else 1
    return Poly(vars, terms)


def print_poly(p: Poly) -> str:
    """Canonical text form; round-trips through parse_poly."""
    return str(p)

"""Rational symbols s/q: parsing, normalization, evaluation, factorization.

The expression grammar (whitespace-insensitive, no implicit multiplication):

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := 'z' | number | 'i' | '(' expr ')'
    number := decimal, optional exponent part, optional imaginary suffix 'i'

A leading sign and exponent notation ("1.5e-3") are accepted on top of the
core grammar so that command-line complex literals and printed symbols parse
back losslessly.  A parsed symbol is normalized: numerator and denominator
are made coprime (common factors are cancelled, with a flag recording that
this happened) and the denominator is made monic.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .poly import ONE, Polynomial, Z, divide, gcd_numeric
from .roots import (DEFAULT_CONFIG, CircleLocation, RootConfig, RootSet,
                    find_roots)


class SymbolParseError(ValueError):
    """Syntax error in a symbol expression, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ZeroDenominatorError(ValueError):
    """The expression's denominator is identically zero."""


@dataclass(frozen=True)
class PoleAt:
    """Marker returned when a symbol is evaluated (numerically) at a pole."""

    z: complex


# ---------------------------------------------------------------------------
# Tokenizer / recursive-descent parser over rational-function values
# ---------------------------------------------------------------------------

class _Frac:
    """Unreduced fraction of polynomials used while parsing."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial = ONE):
        self.num = num
        self.den = den

    def __add__(self, o):
        return _Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _Frac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return _Frac(self.num * o.num, self.den * o.den)

    def divided_by(self, o, pos: int):
        if o.num.is_zero:
            raise ZeroDenominatorError(
                f"division by an identically zero expression (at position {pos})")
        return _Frac(self.num * o.den, self.den * o.num)

    def pow(self, k: int):
        out = _Frac(ONE)
        for _ in range(k):
            out = out * self
        return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> SymbolParseError:
        return SymbolParseError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        c = self.peek()
        self.pos += 1
        return c

    def parse(self) -> _Frac:
        value = self.parse_expr()
        if self.peek():
            raise self.error(f"unexpected character {self.peek()!r}")
        return value

    def parse_expr(self) -> _Frac:
        c = self.peek()
        if c in ("+", "-"):
            self.take()
            value = self.parse_term()
            if c == "-":
                value = _Frac(Polynomial()) - value
        else:
            value = self.parse_term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.parse_term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def parse_term(self) -> _Frac:
        value = self.parse_factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            at = self.pos
            rhs = self.parse_factor()
            value = value * rhs if op == "*" else value.divided_by(rhs, at)
        return value

    def parse_factor(self) -> _Frac:
        value = self.parse_base()
        if self.peek() == "^":
            self.take()
            value = value.pow(self.parse_uint())
        return value

    def parse_base(self) -> _Frac:
        c = self.peek()
        if c == "z":
            self.take()
            return _Frac(Z)
        if c == "i":
            self.take()
            return _Frac(Polynomial([1j]))
        if c == "(":
            self.take()
            value = self.parse_expr()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.take()
            return value
        if c.isdigit() or c == ".":
            return _Frac(Polynomial([self.parse_number()]))
        if c:
            raise self.error(f"unexpected character {c!r}")
        raise self.error("unexpected end of input")

    def parse_number(self) -> complex:
        self.skip_ws()
        start = self.pos
        text = self.text
        while self.pos < len(text) and text[self.pos].isdigit():
            self.pos += 1
        if self.pos < len(text) and text[self.pos] == ".":
            self.pos += 1
            while self.pos < len(text) and text[self.pos].isdigit():
                self.pos += 1
        digits = text[start:self.pos]
        if not digits.strip("."):
            raise self.error("expected a number")
        if self.pos < len(text) and text[self.pos] in ("e", "E"):
            mark = self.pos
            self.pos += 1
            if self.pos < len(text) and text[self.pos] in ("+", "-"):
                self.pos += 1
            if self.pos < len(text) and text[self.pos].isdigit():
                while self.pos < len(text) and text[self.pos].isdigit():
                    self.pos += 1
            else:
                self.pos = mark  # not an exponent after all
        value = float(text[start:self.pos])
        if self.pos < len(text) and text[self.pos] == "i":
            self.pos += 1
            return complex(0.0, value)
        return complex(value)

    def parse_uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a nonnegative integer exponent")
        return int(self.text[start:self.pos])


# ---------------------------------------------------------------------------
# Printing (inverse of the parser, up to float formatting)
# ---------------------------------------------------------------------------

def format_complex(c: complex) -> str:
    """Render a complex number as a grammar-conformant 'a+bi' literal."""
    re, im = c.real, c.imag
    if im == 0:
        return repr(re)
    if re == 0:
        return f"{im!r}i"
    sign = "+" if im >= 0 else "-"
    return f"{re!r}{sign}{abs(im)!r}i"


def _coeff_text(c: complex) -> str:
    if c.imag == 0 and c.real >= 0:
        return repr(c.real)
    return f"({format_complex(c)})"


def poly_to_text(p: Polynomial) -> str:
    """Polynomial as parseable text, highest power first."""
    if p.is_zero:
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if c == 0:
            continue
        if k == 0:
            terms.append(_coeff_text(c))
        elif k == 1:
            terms.append(f"{_coeff_text(c)}*z")
        else:
            terms.append(f"{_coeff_text(c)}*z^{k}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# RationalSymbol
# ---------------------------------------------------------------------------

class RationalSymbol:
    """A rational function s/q with s, q coprime and q monic.

    Construction normalizes: an approximate common factor of the given
    numerator and denominator is cancelled (setting ``cancelled``) and both
    are divided by the denominator's leading coefficient.  The denominator's
    roots double as the symbol's poles and are cached per root configuration.
    """

    __slots__ = ("s", "q", "cancelled", "_pole_cache")

    def __init__(self, s: Polynomial, q: Polynomial, gcd_tol: float = 1e-8):
        if q.is_zero:
            raise ZeroDenominatorError("denominator is the zero polynomial")
        cancelled = False
        if not s.is_zero:
            g = gcd_numeric(s, q, gcd_tol)
            if g.degree > 0:
                s, _ = divide(s, g)
                q, _ = divide(q, g)
                cancelled = True
        lead = q.leading
        object.__setattr__(self, "s", s.scale(1.0 / lead))
        object.__setattr__(self, "q", q.monic())
        object.__setattr__(self, "cancelled", cancelled)
        object.__setattr__(self, "_pole_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("RationalSymbol is immutable")

    def __reduce__(self):
        return (_restore_symbol, (self.s, self.q, self.cancelled))

    def pole_roots(self, cfg: RootConfig = DEFAULT_CONFIG) -> RootSet:
        """Roots of the denominator (= poles of the symbol), cached."""
        cached = self._pole_cache.get(cfg)
        if cached is None:
            cached = find_roots(self.q, cfg)
            self._pole_cache[cfg] = cached
        return cached

    @property
    def proper(self) -> bool:
        """deg s <= deg q."""
        return self.s.degree <= self.q.degree

    @property
    def strictly_proper(self) -> bool:
        return self.s.degree < self.q.degree

    @property
    def denominator_lead(self) -> complex:
        """Leading coefficient of q (1 after normalization)."""
        return self.q.leading

    @property
    def numerator_lead_at_q_degree(self) -> complex:
        """Coefficient of z**deg(q) in s; 0 when the symbol is strictly proper."""
        return self.s.coeff(self.q.degree)

    def is_rat_t(self, cfg: RootConfig = DEFAULT_CONFIG) -> bool:
        """True when every pole sits on the unit circle."""
        return all(r.location == CircleLocation.ON_CIRCLE
                   for r in self.pole_roots(cfg).roots)

    def to_text(self) -> str:
        return f"({poly_to_text(self.s)})/({poly_to_text(self.q)})"

    def __repr__(self) -> str:
        return f"RationalSymbol({self.to_text()!r})"

    def __call__(self, z: complex, tol_pole: float = 1e-9):
        return evaluate_symbol(self, z, tol_pole)


def _restore_symbol(s: Polynomial, q: Polynomial, cancelled: bool) -> RationalSymbol:
    w = RationalSymbol(s, q)
    object.__setattr__(w, "cancelled", cancelled)
    return w


def parse_symbol(text: str, gcd_tol: float = 1e-8) -> RationalSymbol:
    """Parse an expression into a normalized rational symbol."""
    frac = _Parser(text).parse()
    return RationalSymbol(frac.num, frac.den, gcd_tol)


def parse_complex(text: str) -> complex:
    """Parse a constant expression ('1.5-0.25i', '(1+2i)/4', ...)."""
    frac = _Parser(text).parse()
    if frac.den.degree != 0 or frac.num.degree > 0:
        raise SymbolParseError("expected a constant complex expression", 0)
    num = frac.num.coeff(0)
    return num / frac.den.coeff(0)


def evaluate_symbol(w: RationalSymbol, z: complex, tol_pole: float = 1e-9):
    """s(z)/q(z), or a PoleAt marker when the denominator (nearly) vanishes."""
    sz = w.s(z)
    qz = w.q(z)
    if abs(qz) <= tol_pole * (1.0 + abs(sz)):
        return PoleAt(z)
    return sz / qz


# ---------------------------------------------------------------------------
# Circle factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CircleFactorization:
    """p = unit * s_minus * s_zero * s_plus split by root location."""

    s_minus: Polynomial
    s_zero: Polynomial
    s_plus: Polynomial
    unit: complex

    def reconstruct(self) -> Polynomial:
        return (self.s_minus * self.s_zero * self.s_plus).scale(self.unit)


def circle_factor(p: Polynomial,
                  cfg: RootConfig = DEFAULT_CONFIG) -> CircleFactorization:
    """Split a polynomial into factors with roots inside/on/outside the circle."""
    if p.is_zero:
        raise ValueError("cannot circle-factor the zero polynomial")
    if p.degree == 0:
        return CircleFactorization(ONE, ONE, ONE, p.coeff(0))
    parts = {loc: ONE for loc in CircleLocation}
    for r in find_roots(p, cfg).roots:
        factor = ONE
        for _ in range(r.multiplicity):
            factor = factor * Polynomial([-r.value, 1.0])
        parts[r.location] = parts[r.location] * factor
    return CircleFactorization(parts[CircleLocation.INSIDE],
                               parts[CircleLocation.ON_CIRCLE],
                               parts[CircleLocation.OUTSIDE],
                               p.leading)


def pole_arguments(w: RationalSymbol,
                   cfg: RootConfig = DEFAULT_CONFIG) -> list[float]:
    """Arguments (in [0, 2pi)) of the symbol's poles on the unit circle."""
    args = []
    for r in w.pole_roots(cfg).roots:
        if r.location == CircleLocation.ON_CIRCLE:
            args.append(cmath.phase(r.value) % (2.0 * cmath.pi))
    return sorted(args)

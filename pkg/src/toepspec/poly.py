"""Dense complex polynomials in ascending coefficient order.

Everything downstream (symbols, spectral counts, curve sampling) is built on
top of this module.  Polynomials are immutable; coefficient ``coeffs[k]``
multiplies ``z**k``.  Exactly-zero leading coefficients are dropped at
construction; tolerance-based trimming only happens through :meth:`Polynomial.trim`
(or :func:`axpy_lambda`, which applies the pencil deflation rule).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


class Polynomial:
    """A dense polynomial with complex coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex] = ()):
        cs = [complex(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.coeffs,))

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> complex:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0j

    @property
    def norm_inf(self) -> float:
        """Largest coefficient modulus (0 for the zero polynomial)."""
        return max((abs(c) for c in self.coeffs), default=0.0)

    def coeff(self, k: int) -> complex:
        """Coefficient of z**k (0 beyond the degree)."""
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0j

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Polynomial(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial()
            a, b = self.coeffs, other.coeffs
            out = [0j] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
            return Polynomial(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c: complex) -> "Polynomial":
        return Polynomial(c * a for a in self.coeffs)

    def deriv(self) -> "Polynomial":
        """Formal derivative."""
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def __call__(self, z):
        """Horner evaluation; accepts scalars or numpy arrays."""
        if isinstance(z, np.ndarray):
            acc = np.zeros(z.shape, dtype=complex)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def abs_eval(self, r: float) -> float:
        """Evaluate sum |c_k| r^k, an upper envelope used for noise floors."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * r + abs(c)
        return acc

    def trim(self, tol: float, scale: float | None = None) -> "Polynomial":
        """Drop leading coefficients with modulus <= tol * scale.

        ``scale`` defaults to the polynomial's own max coefficient modulus.
        """
        if self.is_zero:
            return self
        if scale is None:
            scale = self.norm_inf
        bound = tol * scale
        cs = list(self.coeffs)
        while cs and abs(cs[-1]) <= bound:
            cs.pop()
        return Polynomial(cs)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise ZeroDivisionError("zero polynomial has no monic form")
        lead = self.coeffs[-1]
        return Polynomial(c / lead for c in self.coeffs)

    # -- plumbing -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


ZERO = Polynomial()
ONE = Polynomial([1.0])
Z = Polynomial([0.0, 1.0])


def from_roots(roots: Sequence[complex], lead: complex = 1.0) -> Polynomial:
    """Monic-from-roots construction, scaled by ``lead``."""
    p = Polynomial([lead])
    for r in roots:
        p = p * Polynomial([-r, 1.0])
    return p


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def derivative(p: Polynomial) -> Polynomial:
    return p.deriv()


def eval_poly(p: Polynomial, z: complex) -> complex:
    return p(z)


def axpy_lambda(q: Polynomial, s: Polynomial, lam: complex,
                tol_deflate: float = 1e-10) -> Polynomial:
    """Form the pencil polynomial lam*q - s, then deflate its degree.

    Leading coefficients with modulus <= tol_deflate * max(1, |lam|*||q||_inf,
    ||s||_inf) are trimmed.  The deflation is what makes the "zero at
    infinity" of a proper symbol visible: at the critical lam the pencil
    degree genuinely drops.
    """
    pencil = q.scale(lam) - s
    scale = max(1.0, abs(lam) * q.norm_inf, s.norm_inf)
    return pencil.trim(tol_deflate, scale)


def divide(p: Polynomial, d: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Long division: returns (quotient, remainder) with deg rem < deg d."""
    if d.is_zero:
        raise ZeroDivisionError("polynomial division by zero polynomial")
    if p.degree < d.degree:
        return ZERO, p
    rem = list(p.coeffs)
    dc = d.coeffs
    dn = len(dc) - 1
    lead = dc[-1]
    quot = [0j] * (len(rem) - dn)
    for k in range(len(rem) - dn - 1, -1, -1):
        c = rem[k + dn] / lead
        quot[k] = c
        if c != 0:
            for j, dj in enumerate(dc):
                rem[k + j] -= c * dj
    return Polynomial(quot), Polynomial(rem[:dn])


def gcd_numeric(p: Polynomial, q: Polynomial, tol: float = 1e-8) -> Polynomial:
    """Approximate monic GCD by Euclidean remainders.

    A remainder whose coefficients are small relative to the dividend
    (|rem|_inf <= tol * |dividend|_inf) is treated as zero, which terminates
    the recursion.  Coprime inputs yield the constant polynomial 1.
    """
    if p.is_zero and q.is_zero:
        raise ZeroDivisionError("gcd of two zero polynomials")
    a, b = p, q
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero and b.degree > 0:
        _, r = divide(a, b)
        r = r.trim(tol, max(a.norm_inf, b.norm_inf))
        a, b = b, r
    if b.is_zero:
        return a.monic()
    return ONE

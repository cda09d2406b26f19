"""Spectral classification of T_w, the Toeplitz-like operator with symbol w.

For a rational symbol w = s/q (coprime, q monic) and a spectral parameter
lam, everything reduces to locating polynomial roots relative to the unit
circle:

    k_q             roots of q in the CLOSED unit disk (poles of lam - w),
    k_lambda_minus  roots of lam*q - s strictly INSIDE the open disk,
    k_lambda_zero   roots of lam*q - s ON the circle,

all with multiplicity.  The spectral parts partition the plane:

    resolvent   k_lambda_zero = 0 and k_q = k_lambda_minus
    point       k_q > k_lambda_minus + k_lambda_zero
    residual    k_q < k_lambda_minus
    continuous  k_lambda_zero > 0 and k_lambda_minus <= k_q
                                  <= k_lambda_minus + k_lambda_zero

and off the essential curve (k_lambda_zero = 0) the operator is Fredholm
with index k_q - k_lambda_minus, whose sign decides point / resolvent /
residual.  Note the closed/open asymmetry between k_q and k_lambda_minus;
it is deliberate and load-bearing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .poly import Polynomial, axpy_lambda
from .roots import (DEFAULT_CONFIG, CircleLocation, NonConvergenceError,
                    RootConfig, RootSet, find_roots)
from .symbol import RationalSymbol, circle_factor


class Verdict(Enum):
    RESOLVENT = "resolvent"
    POINT = "point"
    RESIDUAL = "residual"
    CONTINUOUS = "continuous"
    UNKNOWN = "unknown"  # only ever produced by grid classification


@dataclass(frozen=True)
class SpectralCounts:
    k_q: int
    k_lambda_minus: int
    k_lambda_zero: int


@dataclass(frozen=True)
class Classification:
    """Verdict for one lam, with the Fredholm index when it exists."""

    verdict: Verdict
    essential: bool
    index: int | None

    def __post_init__(self):
        assert (self.index is None) == self.essential


@dataclass(frozen=True)
class RatTDiagnostics:
    """Kernel/range structure of T_w for symbols with all poles on the circle."""

    kernel_dim: int
    range_closure_codim: int
    injective: bool
    dense_range: bool
    sigma_r_empty_hint: bool


class NotRatTError(ValueError):
    """The symbol has a pole off the unit circle."""


class NotProperRatTError(ValueError):
    """The symbol is not a proper member of Rat(T)."""


class _NotFredholm:
    """Sentinel: lam sits on the essential curve, no index exists."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotFredholm"


NOT_FREDHOLM = _NotFredholm()


def pencil(w: RationalSymbol, lam: complex,
           cfg: RootConfig = DEFAULT_CONFIG) -> Polynomial:
    """The deflated pencil polynomial lam*q - s."""
    return axpy_lambda(w.q, w.s, lam, cfg.tol_deflate)


def counts_from_rootsets(q_roots: RootSet, pencil_roots: RootSet) -> SpectralCounts:
    return SpectralCounts(
        k_q=q_roots.count(CircleLocation.INSIDE, CircleLocation.ON_CIRCLE),
        k_lambda_minus=pencil_roots.count(CircleLocation.INSIDE),
        k_lambda_zero=pencil_roots.count(CircleLocation.ON_CIRCLE))


def counts(w: RationalSymbol, lam: complex,
           cfg: RootConfig = DEFAULT_CONFIG) -> SpectralCounts:
    """The count triple (k_q, k_lambda_minus, k_lambda_zero) at lam."""
    pen = pencil(w, lam, cfg)
    if pen.is_zero:
        raise ValueError("lam*q - s vanishes identically; the symbol is the "
                         "constant lam and the counts are undefined")
    return counts_from_rootsets(w.pole_roots(cfg), find_roots(pen, cfg))


def classification_from_counts(c: SpectralCounts) -> Classification:
    kq, km, k0 = c.k_q, c.k_lambda_minus, c.k_lambda_zero
    resolvent = k0 == 0 and kq == km
    point = kq > km + k0
    residual = kq < km
    continuous = k0 > 0 and km <= kq <= km + k0
    assert [resolvent, point, residual, continuous].count(True) == 1
    if resolvent:
        verdict = Verdict.RESOLVENT
    elif point:
        verdict = Verdict.POINT
    elif residual:
        verdict = Verdict.RESIDUAL
    else:
        verdict = Verdict.CONTINUOUS
    essential = k0 > 0
    return Classification(verdict, essential, kq - km if not essential else None)


def classify(w: RationalSymbol, lam: complex,
             cfg: RootConfig = DEFAULT_CONFIG) -> Classification:
    """Place lam in the resolvent set or the point/residual/continuous spectrum."""
    pen = pencil(w, lam, cfg)
    if pen.is_zero:
        # Constant symbol evaluated at its own value: T_{lam-w} is the zero
        # operator, an eigenvalue with no Fredholm index.
        return Classification(Verdict.POINT, True, None)
    return classification_from_counts(
        counts_from_rootsets(w.pole_roots(cfg), find_roots(pen, cfg)))


def fredholm_index(w: RationalSymbol, lam: complex,
                   cfg: RootConfig = DEFAULT_CONFIG):
    """k_q - k_lambda_minus when lam is off the essential curve, else NOT_FREDHOLM."""
    pen = pencil(w, lam, cfg)
    if pen.is_zero:
        return NOT_FREDHOLM
    c = counts_from_rootsets(w.pole_roots(cfg), find_roots(pen, cfg))
    if c.k_lambda_zero > 0:
        return NOT_FREDHOLM
    return c.k_q - c.k_lambda_minus


def _zero_counts(w: RationalSymbol, cfg: RootConfig):
    """Multiplicity-weighted zero counts of w itself: (closed disk, open disk)."""
    if w.s.is_zero:
        raise ValueError("the zero symbol has no zero counts")
    if w.s.degree == 0:
        return 0, 0
    zeros = find_roots(w.s, cfg)
    closed = zeros.count(CircleLocation.INSIDE, CircleLocation.ON_CIRCLE)
    inside = zeros.count(CircleLocation.INSIDE)
    return closed, inside


def injective_predicate(w: RationalSymbol,
                        cfg: RootConfig = DEFAULT_CONFIG) -> bool:
    """T_w is injective iff #poles in the closed disk <= #zeros in the closed disk."""
    poles = w.pole_roots(cfg).count(CircleLocation.INSIDE,
                                    CircleLocation.ON_CIRCLE)
    closed, _ = _zero_counts(w, cfg)
    return poles <= closed


def dense_range_predicate(w: RationalSymbol,
                          cfg: RootConfig = DEFAULT_CONFIG) -> bool:
    """T_w has dense range iff #poles in the closed disk >= #zeros in the open disk."""
    poles = w.pole_roots(cfg).count(CircleLocation.INSIDE,
                                    CircleLocation.ON_CIRCLE)
    _, inside = _zero_counts(w, cfg)
    return poles >= inside


def rat_t_diagnostics(w: RationalSymbol,
                      cfg: RootConfig = DEFAULT_CONFIG) -> RatTDiagnostics:
    """Kernel dimension and range-closure codimension for Rat(T) symbols.

    Requires every pole of w on the unit circle.  Writing s = s_minus *
    s_zero * s_plus for the circle factorization of the numerator,

        dim ker(T_w)                 = max(deg q - deg s_minus - deg s_zero, 0)
        codim of the closed range    = max(deg s_minus - deg q, 0)

    and at most one of the two is positive (the operator is injective or has
    dense range).
    """
    if not w.is_rat_t(cfg):
        raise NotRatTError("symbol has a pole off the unit circle")
    fac = circle_factor(w.s, cfg) if not w.s.is_zero else None
    d_minus = fac.s_minus.degree if fac else 0
    d_zero = fac.s_zero.degree if fac else 0
    dq = w.q.degree
    return RatTDiagnostics(
        kernel_dim=max(dq - d_minus - d_zero, 0),
        range_closure_codim=max(d_minus - dq, 0),
        injective=injective_predicate(w, cfg),
        dense_range=dense_range_predicate(w, cfg),
        sigma_r_empty_hint=w.proper)


def proper_rat_t_parts(w: RationalSymbol, lam: complex,
                       cfg: RootConfig = DEFAULT_CONFIG) -> Classification:
    """Sharper classification for proper Rat(T) symbols.

    Independent route to the same verdicts as :func:`classify`: the residual
    spectrum is empty; lam is an eigenvalue exactly when the pencil degree
    drops (the symbol's value at infinity) or the pencil has a root outside
    the closed disk; the continuous spectrum is where the pencil keeps a
    root on the circle with all roots in the closed disk.
    """
    if not w.is_rat_t(cfg):
        raise NotProperRatTError("symbol has a pole off the unit circle")
    if not w.proper:
        raise NotProperRatTError("deg s > deg q")
    pen = pencil(w, lam, cfg)
    if pen.is_zero:
        return Classification(Verdict.POINT, True, None)
    dq = w.q.degree
    pen_roots = find_roots(pen, cfg)
    k0 = pen_roots.count(CircleLocation.ON_CIRCLE)
    km = pen_roots.count(CircleLocation.INSIDE)
    outside = pen_roots.count(CircleLocation.OUTSIDE)
    essential = k0 > 0
    if pen.degree < dq or outside > 0:
        verdict = Verdict.POINT
    elif k0 > 0:
        verdict = Verdict.CONTINUOUS
    else:
        verdict = Verdict.RESOLVENT
    return Classification(verdict, essential, dq - km if not essential else None)

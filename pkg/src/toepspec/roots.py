"""Polynomial root finding with multiplicities and unit-circle classification.

The workhorse is a simultaneous Aberth-Ehrlich iteration started from a
slightly inflated circle of initial guesses.  Converged estimates are Newton
polished and then clustered: estimates closer than ``cluster_radius`` are
merged into a single root whose value is the cluster mean and whose
multiplicity is the cluster size.  The mean of a symmetric cluster around a
multiple root is far more accurate than its members, which is what makes the
tight on-circle tolerance workable for double roots.

Everything is deterministic: fixed initial guesses, no randomness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .poly import Polynomial

# Golden angle, used to rotate the initial guesses off any axis of symmetry
# of the root pattern (real-coefficient inputs are the common offender).
GOLDEN_ANGLE = 2.399963229728653


@dataclass(frozen=True)
class RootConfig:
    """Tolerances shared by the root finder and everything built on it."""

    tol_circle: float = 1e-9
    cluster_radius: float = 1e-7
    max_iters: int = 200
    tol_deflate: float = 1e-10
    tol_pole: float = 1e-9


DEFAULT_CONFIG = RootConfig()


class CircleLocation(Enum):
    INSIDE = "inside"
    ON_CIRCLE = "on_circle"
    OUTSIDE = "outside"


class ZeroPolynomialError(ValueError):
    """Root finding was asked for the zero polynomial."""


class NonConvergenceError(RuntimeError):
    """The Aberth iteration failed to reach the residual floor."""

    def __init__(self, message: str, residuals=None):
        super().__init__(message)
        self.residuals = tuple(residuals or ())


class ContourTooCloseToRootError(RuntimeError):
    """Argument-principle contour integral is not trustworthy."""


def classify_location(z: complex, tol_circle: float) -> CircleLocation:
    """Trichotomy of a point against the unit circle with a tolerance band."""
    if tol_circle <= 0:
        raise ValueError("tol_circle must be positive")
    d = abs(z) - 1.0
    if abs(d) <= tol_circle:
        return CircleLocation.ON_CIRCLE
    return CircleLocation.INSIDE if d < 0 else CircleLocation.OUTSIDE


@dataclass(frozen=True)
class RootRecord:
    value: complex
    multiplicity: int
    location: CircleLocation


@dataclass(frozen=True)
class RootSet:
    """All roots of one polynomial, with multiplicities and circle labels."""

    roots: tuple[RootRecord, ...]
    source_degree: int

    def count(self, *locations: CircleLocation) -> int:
        """Multiplicity-weighted number of roots at the given locations."""
        want = set(locations)
        return sum(r.multiplicity for r in self.roots if r.location in want)

    def values(self) -> list[complex]:
        """Root values repeated according to multiplicity."""
        out: list[complex] = []
        for r in self.roots:
            out.extend([r.value] * r.multiplicity)
        return out

    def min_circle_distance(self) -> float:
        """min | |z| - 1 | over the roots; inf when there are none."""
        return min((abs(abs(r.value) - 1.0) for r in self.roots),
                   default=math.inf)


# ---------------------------------------------------------------------------
# Aberth-Ehrlich core (batched over rows of a coefficient matrix)
# ---------------------------------------------------------------------------

_EPS = float(np.finfo(float).eps)


def _initial_guesses(deg: int) -> np.ndarray:
    k = np.arange(deg)
    return (1.0 + 1.0 / deg) * np.exp(1j * (GOLDEN_ANGLE + 2.0 * np.pi * k / deg))


def _polyval_rows(coeffs: np.ndarray, z: np.ndarray) -> np.ndarray:
    # coeffs: (n, d+1) ascending; z: (n, d) -> values (n, d)
    acc = np.zeros_like(z)
    for j in range(coeffs.shape[1] - 1, -1, -1):
        acc = acc * z + coeffs[:, j:j + 1]
    return acc


def _aberth_rows(coeffs: np.ndarray, max_iters: int):
    """Run Aberth-Ehrlich on every row of an ascending coefficient matrix.

    Returns (roots, ok, residuals) where ``ok`` flags rows whose estimates
    all reached the evaluation-noise floor.
    """
    n, width = coeffs.shape
    deg = width - 1
    monic = coeffs / coeffs[:, -1:]
    dcoeffs = monic[:, 1:] * np.arange(1, deg + 1)
    abs_coeffs = np.abs(monic)

    z = np.tile(_initial_guesses(deg), (n, 1))
    eye = np.eye(deg, dtype=bool)
    floor_scale = 4.0 * (deg + 1) * _EPS

    pz = _polyval_rows(monic, z)
    for _ in range(max_iters):
        floor = floor_scale * _polyval_rows(abs_coeffs, np.abs(z)).real + 1e-300
        settled = np.abs(pz) <= floor
        if settled.all():
            break
        dpz = _polyval_rows(dcoeffs, z)
        dpz = np.where(dpz == 0, _EPS, dpz)
        w = pz / dpz
        diff = z[:, :, None] - z[:, None, :]
        diff[:, eye] = np.inf
        repulse = (1.0 / diff).sum(axis=2)
        denom = 1.0 - w * repulse
        denom = np.where(denom == 0, 1.0, denom)
        step = np.where(settled, 0.0, w / denom)
        z = z - step
        pz = _polyval_rows(monic, z)
        if np.abs(step).max() <= _EPS * max(1.0, np.abs(z).max()):
            break

    floor = floor_scale * _polyval_rows(abs_coeffs, np.abs(z)).real + 1e-300
    # Newton polish: accept steps that reduce the residual.
    for _ in range(2):
        settled = np.abs(pz) <= floor
        if settled.all():
            break
        dpz = _polyval_rows(dcoeffs, z)
        dpz = np.where(dpz == 0, _EPS, dpz)
        z_try = z - pz / dpz
        pz_try = _polyval_rows(monic, z_try)
        better = np.abs(pz_try) < np.abs(pz)
        z = np.where(better, z_try, z)
        pz = np.where(better, pz_try, pz)
        floor = floor_scale * _polyval_rows(abs_coeffs, np.abs(z)).real + 1e-300

    residuals = np.abs(pz)
    # Acceptance floor: evaluation noise at max(|z|, 1).  The pointwise floor
    # collapses for (multiple) roots at the origin even when the estimates
    # are as good as floating point allows; failed iterations sit a factor
    # ~1/eps above this envelope, so the margin stays decisive.
    env = _polyval_rows(abs_coeffs, np.maximum(np.abs(z), 1.0)).real
    ok = (residuals <= 1e6 * floor_scale * env).all(axis=1)
    return z, ok, residuals


def _cluster(values: Sequence[complex], radius: float) -> list[tuple[complex, int]]:
    """Merge values closer than ``radius`` (transitively) into means."""
    groups = [(v, 1) for v in values]
    merged = True
    while merged:
        merged = False
        out: list[tuple[complex, int]] = []
        for v, m in groups:
            for i, (u, k) in enumerate(out):
                if abs(u - v) <= radius:
                    total = k + m
                    out[i] = ((u * k + v * m) / total, total)
                    merged = True
                    break
            else:
                out.append((v, m))
        groups = out
    return groups


def _rootset_from_estimates(values, deg: int, cfg: RootConfig) -> RootSet:
    clusters = _cluster(values, cfg.cluster_radius)
    records = [RootRecord(v, m, classify_location(v, cfg.tol_circle))
               for v, m in clusters]
    records.sort(key=lambda r: (r.value.real, r.value.imag))
    return RootSet(tuple(records), deg)


def find_roots(p: Polynomial, cfg: RootConfig = DEFAULT_CONFIG) -> RootSet:
    """All roots of ``p`` with multiplicities and circle locations.

    Raises ZeroPolynomialError for the zero polynomial and
    NonConvergenceError (with residuals attached) if the iteration stalls
    before reaching the noise floor.
    """
    if p.is_zero:
        raise ZeroPolynomialError("cannot find roots of the zero polynomial")
    deg = p.degree
    if deg == 0:
        return RootSet((), 0)
    coeffs = np.array([p.coeffs], dtype=complex)
    z, ok, residuals = _aberth_rows(coeffs, cfg.max_iters)
    if not ok[0]:
        raise NonConvergenceError(
            f"root iteration did not converge after {cfg.max_iters} iterations "
            f"(degree {deg}, worst residual {residuals[0].max():.3e})",
            residuals=residuals[0].tolist())
    return _rootset_from_estimates([complex(v) for v in z[0]], deg, cfg)


def find_roots_batch(ps: Sequence[Polynomial],
                     cfg: RootConfig = DEFAULT_CONFIG) -> list[RootSet | None]:
    """Vectorized :func:`find_roots` over many polynomials.

    Rows are grouped by degree and solved together; a ``None`` entry marks a
    polynomial whose iteration failed to converge (callers decide whether
    that is an error).  Degree-0 entries yield empty root sets; zero
    polynomials are not allowed.
    """
    results: list[RootSet | None] = [None] * len(ps)
    by_degree: dict[int, list[int]] = {}
    for i, p in enumerate(ps):
        if p.is_zero:
            raise ZeroPolynomialError("cannot find roots of the zero polynomial")
        if p.degree == 0:
            results[i] = RootSet((), 0)
        else:
            by_degree.setdefault(p.degree, []).append(i)
    for deg, idxs in by_degree.items():
        coeffs = np.array([ps[i].coeffs for i in idxs], dtype=complex)
        z, ok, _ = _aberth_rows(coeffs, cfg.max_iters)
        for row, i in enumerate(idxs):
            if ok[row]:
                results[i] = _rootset_from_estimates(
                    [complex(v) for v in z[row]], deg, cfg)
    return results


# ---------------------------------------------------------------------------
# Argument-principle oracle
# ---------------------------------------------------------------------------

def count_roots_in_disk(p: Polynomial, radius: float, n_samples: int) -> int:
    """Number of roots of ``p`` inside |z| < radius, via the argument principle.

    Integrates Re[z p'(z)/p(z)] / (2 pi) over the circle |z| = radius with the
    trapezoidal rule (exact averaging on a periodic integrand), and rounds to
    the nearest integer.  Independent of the iterative root finder, which is
    the point: it serves as a cross-check oracle for the disk counts.

    Raises ContourTooCloseToRootError when a root (nearly) touches the
    contour, detected either by a collapsing sample residual or by the
    integral landing further than 0.25 from an integer.
    """
    if p.is_zero:
        raise ZeroPolynomialError("argument principle needs a nonzero polynomial")
    if p.degree == 0:
        return 0
    theta = 2.0 * np.pi * np.arange(n_samples) / n_samples
    z = radius * np.exp(1j * theta)
    pz = p(z)
    mags = np.abs(pz)
    if mags.min() <= 1e-8 * mags.max():
        raise ContourTooCloseToRootError(
            f"|p| collapses to {mags.min():.3e} on the contour |z|={radius}")
    integrand = np.real(z * p.deriv()(z) / pz)
    integral = float(integrand.mean())
    nearest = round(integral)
    if abs(integral - nearest) > 0.25:
        raise ContourTooCloseToRootError(
            f"winding integral {integral:.6f} is not close to an integer")
    return int(nearest)

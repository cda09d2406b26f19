"""Sampling the essential-spectrum curve w(T) and distance-to-curve tests.

The essential spectrum of T_w is the image of the unit circle under w.
Poles of w on the circle make that image unbounded, so the sampler splits
the circle at pole arguments (with a guard band), refines adaptively where
the image moves fast, and clips samples whose modulus explodes.  Membership
of a point lam in the curve is tested through the pencil lam*q - s: lam is
on the curve exactly when the pencil has a root on the unit circle, and

    essential_distance(lam) = min over pencil roots z of | |z| - 1 |

is the quantitative version of that test (infinite when the pencil deflates
to a nonzero constant).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from .poly import axpy_lambda
from .roots import DEFAULT_CONFIG, RootConfig, find_roots
from .symbol import PoleAt, RationalSymbol, evaluate_symbol, pole_arguments

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CurveSample:
    theta: float
    value: complex
    clipped: bool


@dataclass(frozen=True)
class CurvePolyline:
    """Curve samples grouped into segments split at poles and clip events."""

    segments: tuple[tuple[CurveSample, ...], ...]

    def all_samples(self) -> Iterable[CurveSample]:
        for seg in self.segments:
            yield from seg

    def unclipped_values(self) -> list[complex]:
        return [s.value for s in self.all_samples() if not s.clipped]


def _arc_points(a: float, b: float, n: int) -> list[float]:
    step = (b - a) / (n - 1)
    return [a + k * step for k in range(n)]


def sample_curve(w: RationalSymbol,
                 n_base: int = 512,
                 clip_modulus: float = 1e6,
                 cfg: RootConfig = DEFAULT_CONFIG,
                 theta_guard: float = 1e-8,
                 theta_min: float = 1e-10,
                 refine_rel: float = 1e-2,
                 max_samples: int = 200_000) -> CurvePolyline:
    """Adaptively sample theta -> w(e^{i theta}) over [0, 2pi).

    ``n_base`` points are spread uniformly (at least 16), arcs around poles
    on the circle are excluded by ``theta_guard``, and neighbouring samples
    further apart (in image space) than ``refine_rel`` of the initial
    bounding-box diagonal are bisected until the angular gap reaches
    ``theta_min``.  Samples with modulus above ``clip_modulus`` are flagged
    and break the polyline.
    """
    if n_base < 16:
        raise ValueError("n_base must be at least 16")
    poles = pole_arguments(w, cfg)
    if poles:
        arcs = []
        for i, start in enumerate(poles):
            end = poles[(i + 1) % len(poles)]
            if i + 1 == len(poles):
                end += TWO_PI
            a, b = start + theta_guard, end - theta_guard
            if b > a:
                arcs.append((a, b))
    else:
        arcs = [(0.0, TWO_PI)]

    tol_pole = cfg.tol_pole

    def value_at(theta: float) -> complex | None:
        v = evaluate_symbol(w, complex(math.cos(theta), math.sin(theta)),
                            tol_pole)
        return None if isinstance(v, PoleAt) else v

    # Base pass over all arcs; the image-space refinement scale comes from
    # the bounding box of the unclipped base samples.
    arc_nodes: list[list[tuple[float, complex]]] = []
    finite: list[complex] = []
    for a, b in arcs:
        n = max(16, round(n_base * (b - a) / TWO_PI) + 1)
        nodes = []
        for theta in _arc_points(a, b, n):
            v = value_at(theta)
            if v is None:
                continue
            nodes.append((theta, v))
            if abs(v) <= clip_modulus:
                finite.append(v)
        arc_nodes.append(nodes)

    # Image-space refinement scale.  Unbounded branches pollute a plain
    # bounding box, so the box is taken over the samples within the 98th
    # percentile of distance from the (componentwise) median; refinement is
    # also suppressed for pairs far outside that region, where the curve is
    # just running off along its asymptote.
    if finite:
        arr = np.array(finite)
        center = complex(np.median(arr.real), np.median(arr.imag))
        dist = np.abs(arr - center)
        core = arr[dist <= np.quantile(dist, 0.98)]
        diag = math.hypot(core.real.max() - core.real.min(),
                          core.imag.max() - core.imag.min())
    else:
        center = 0j
        diag = 0.0
    refine_dist = refine_rel * diag if diag > 0 else math.inf
    tail_cap = 4.0 * diag if diag > 0 else math.inf

    budget = [max_samples - sum(len(nodes) for nodes in arc_nodes)]

    def refine_into(t1, v1, t2, v2, out):
        # Appends the refined chain strictly right of (t1, v1), ending at t2.
        both_clipped = abs(v1) > clip_modulus and abs(v2) > clip_modulus
        off_window = (abs(v1 - center) > tail_cap
                      and abs(v2 - center) > tail_cap)
        if (t2 - t1 <= theta_min or both_clipped or off_window
                or budget[0] <= 0 or abs(v2 - v1) <= refine_dist):
            out.append((t2, v2))
            return
        tm = 0.5 * (t1 + t2)
        vm = value_at(tm)
        budget[0] -= 1
        if vm is None:
            out.append((t2, v2))
            return
        refine_into(t1, v1, tm, vm, out)
        refine_into(tm, vm, t2, v2, out)

    segments: list[tuple[CurveSample, ...]] = []
    for nodes in arc_nodes:
        if not nodes:
            continue
        refined = [nodes[0]]
        for i in range(len(nodes) - 1):
            refine_into(*nodes[i], *nodes[i + 1], refined)
        segments.extend(_split_segments(refined, clip_modulus))
    return CurvePolyline(tuple(segments))


def _split_segments(nodes: list[tuple[float, complex]],
                    clip_modulus: float) -> list[tuple[CurveSample, ...]]:
    """Turn an ordered node list into segments broken at clipped samples.

    A clipped sample is kept only when it borders an unclipped one, where it
    marks the escape of the curve past the clipping radius.
    """
    samples = [CurveSample(t, v, abs(v) > clip_modulus) for t, v in nodes]
    keep = []
    for i, s in enumerate(samples):
        if not s.clipped:
            keep.append(s)
            continue
        prev_ok = i > 0 and not samples[i - 1].clipped
        next_ok = i + 1 < len(samples) and not samples[i + 1].clipped
        if prev_ok or next_ok:
            keep.append(s)
    segments = []
    current: list[CurveSample] = []
    for s in keep:
        current.append(s)
        if s.clipped and len(current) > 1:
            segments.append(tuple(current))
            current = []
    if current:
        segments.append(tuple(current))
    return [seg for seg in segments if seg]


def essential_distance(w: RationalSymbol, lam: complex,
                       cfg: RootConfig = DEFAULT_CONFIG) -> float:
    """min | |z| - 1 | over the roots of the pencil lam*q - s.

    Zero (within tol_circle) exactly when lam lies on the essential curve.
    Returns inf when the pencil deflates to a nonzero constant and 0 when it
    vanishes identically (constant symbol at its own value).
    """
    pen = axpy_lambda(w.q, w.s, lam, cfg.tol_deflate)
    if pen.is_zero:
        return 0.0
    if pen.degree == 0:
        return math.inf
    return find_roots(pen, cfg).min_circle_distance()


def implicit_system_residual(w: RationalSymbol, u: float, v: float,
                             x: float, y: float) -> tuple[float, float, float]:
    """Residuals of the algebraic system cutting out the essential curve.

    Writing q(x+iy) = q1 + i q2 and s(x+iy) = s1 + i s2, the curve is the
    set of (u, v) for which some (x, y) satisfies

        q1*u - q2*v = s1,    q2*u + q1*v = s2,    x^2 + y^2 = 1.

    All three residuals vanish when u+iv = w(x+iy) with x+iy on the circle.
    """
    z = complex(x, y)
    qz = w.q(z)
    sz = w.s(z)
    r1 = qz.real * u - qz.imag * v - sz.real
    r2 = qz.imag * u + qz.real * v - sz.imag
    r3 = x * x + y * y - 1.0
    return (r1, r2, r3)


def write_curve_csv(polyline: CurvePolyline, out: IO[str]) -> None:
    """Write samples as CSV (theta, re, im, clipped); blank line per break."""
    out.write("theta,re,im,clipped\n")
    for i, seg in enumerate(polyline.segments):
        if i > 0:
            out.write("\n")
        for s in seg:
            out.write(f"{s.theta!r},{s.value.real!r},{s.value.imag!r},"
                      f"{int(s.clipped)}\n")

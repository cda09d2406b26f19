"""Built-in acceptance checks, runnable via the CLI selftest subcommand.

Each check exercises one verifiable claim about a concrete symbol family:
region structure of the classified plane, closed-form curves, count
identities against the argument-principle oracle, kernel/codimension
formulas, partition exhaustiveness, and the figure color conventions.
All randomness is seeded, so the suite is reproducible.

Two checks tagged "(as recorded)" assert historical expected values for the
symbol z/(z^2+1) that direct evaluation contradicts: the curve of that
symbol attains omega(1) = 1/2, so its modulus is not bounded below by 1 and
the point 0.5 sits on the curve (a double pencil root at z = 1) rather than
in the spectral gap.  They are kept exactly as recorded and fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curve import essential_distance, sample_curve
from .poly import Polynomial, from_roots
from .raster import (ClassifiedGrid, GridCell, GridSpec, classify_grid,
                     index_color, render_ppm)
from .roots import count_roots_in_disk, find_roots
from .spectral import (Verdict, classify, counts, fredholm_index, pencil,
                       rat_t_diagnostics)
from .symbol import RationalSymbol, parse_symbol


@dataclass(frozen=True)
class CheckResult:
    criterion: int
    name: str
    passed: bool
    detail: str


def _result(criterion: int, name: str, failures: list[str],
            detail_ok: str = "") -> CheckResult:
    if failures:
        return CheckResult(criterion, name, False, "; ".join(failures[:4]))
    return CheckResult(criterion, name, True, detail_ok)


# -- criterion 1: line-symbol spectrum --------------------------------------

def check_line_symbol() -> CheckResult:
    w = parse_symbol("(z+0.5i)/(z-1)")
    # half planes of 2x + y - 3/4 = 0; omega(0) = -i/2 sits below, 1 above
    offline = []
    for x in np.linspace(-2.0, 2.0, 20):
        for y in np.linspace(-2.0, 2.0, 12):
            if abs(2 * x + y - 0.75) / math.sqrt(5.0) > 1e-2:
                offline.append(complex(x, y))
    offline = offline[:180]
    online = [complex(x, 0.75 - 2 * x) for x in np.linspace(-2.0, 2.0, 20)]
    failures = []
    for lam in offline:
        c = classify(w, lam)
        above = 2 * lam.real + lam.imag - 0.75 > 0
        want = Verdict.POINT if above else Verdict.RESOLVENT
        if c.verdict != want or (above and c.index != 1):
            failures.append(f"lam={lam}: got {c.verdict.value} index {c.index}")
    for lam in online:
        c = classify(w, lam)
        if c.verdict != Verdict.CONTINUOUS:
            failures.append(f"on-line lam={lam}: got {c.verdict.value}")
    return _result(1, "line symbol: half planes and line verdicts", failures,
                   f"{len(offline)} off-line + {len(online)} on-line points")


# -- criterion 2: parabola curve, point spectrum everywhere ------------------

def check_parabola() -> CheckResult:
    w = parse_symbol("1/(z-1)^2")
    polyline = sample_curve(w, n_base=4096, clip_modulus=1e3)
    vals = polyline.unclipped_values()
    failures = []
    if len(vals) < 2000:
        failures.append(f"only {len(vals)} unclipped samples")
    worst = max(abs(v.real - (0.25 - v.imag ** 2)) for v in vals)
    if worst > 1e-8:
        failures.append(f"parabola residual {worst:.3e} > 1e-8")
    rng = np.random.default_rng(2025)
    resolvent = 0
    for _ in range(100):
        lam = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        c = classify(w, lam)
        if c.verdict == Verdict.RESOLVENT:
            resolvent += 1
        elif c.verdict != Verdict.POINT:
            failures.append(f"lam={lam}: got {c.verdict.value}")
    if resolvent:
        failures.append(f"{resolvent} resolvent verdicts")
    return _result(2, "parabola: curve identity and all-point plane", failures,
                   f"{len(vals)} samples, residual {worst:.2e}")


# -- criterion 3: disconnected essential spectrum ----------------------------

def check_disconnected_verdicts() -> CheckResult:
    w = parse_symbol("z/(z^2+1)")
    failures = []
    for lam in (0.0, 2j, -1 + 1j):
        c = classify(w, lam)
        if c.verdict != Verdict.POINT or c.index != 1:
            failures.append(f"lam={lam}: got {c.verdict.value} index {c.index}")
    for lam in (1.5, -2.0):
        c = classify(w, lam)
        if c.verdict != Verdict.CONTINUOUS:
            failures.append(f"lam={lam}: got {c.verdict.value}")
    vals = sample_curve(w, n_base=1024).unclipped_values()
    worst_im = max(abs(v.imag) / max(1.0, abs(v)) for v in vals)
    if worst_im > 1e-9:
        failures.append(f"curve not real: relative Im up to {worst_im:.3e}")
    return _result(3, "disconnected spectrum: verdicts and real curve",
                   failures, "3 point, 2 continuous, curve real")


def check_disconnected_curve_bound_as_recorded() -> CheckResult:
    w = parse_symbol("z/(z^2+1)")
    vals = sample_curve(w, n_base=1024).unclipped_values()
    low = min(abs(v) for v in vals)
    failures = []
    if low < 1.0 - 1e-9:
        failures.append(
            f"min sample modulus {low:.6f} < 1 - 1e-9 (the curve attains "
            f"omega(1) = {complex(w(1.0)):.3} at z = 1)")
    return _result(3, "disconnected spectrum: |curve| >= 1 (as recorded)",
                   failures, f"min modulus {low:.6f}")


def check_disconnected_gap_verdict_as_recorded() -> CheckResult:
    w = parse_symbol("z/(z^2+1)")
    c = classify(w, 0.5)
    failures = []
    if c.verdict != Verdict.POINT or c.index != 1:
        pen_roots = find_roots(pencil(w, 0.5))
        failures.append(
            f"lam=0.5: got {c.verdict.value} (pencil 0.5*q - s has roots "
            f"{[r.value for r in pen_roots.roots]} with multiplicities "
            f"{[r.multiplicity for r in pen_roots.roots]} on the circle)")
    return _result(3, "disconnected spectrum: 0.5 -> point (as recorded)",
                   failures, "point with index 1")


# -- criterion 4: parametric trichotomy --------------------------------------

def check_trichotomy() -> CheckResult:
    failures = []
    w_in = parse_symbol("(z-0.5+0.125i)/(z-1)^2")   # alpha = -1/2 + i/8
    c = classify(w_in, -0.5)
    if c.verdict != Verdict.RESOLVENT:
        failures.append(f"case i: lam=-1/2 got {c.verdict.value}")

    w_on = parse_symbol("z/(z-1)^2")                # alpha = 0
    c = classify(w_on, -0.5)
    k = counts(w_on, -0.5)
    if c.verdict != Verdict.CONTINUOUS or k.k_lambda_zero != 2:
        failures.append(f"case ii: lam=-1/2 got {c.verdict.value}, "
                        f"k0={k.k_lambda_zero}")
    rng = np.random.default_rng(61)
    drawn = 0
    while drawn < 100:
        lam = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        # reject the half line (-inf, -1/4] that is the curve for alpha = 0
        if abs(lam.imag) < 1e-3 and lam.real < -0.25 + 1e-3:
            continue
        drawn += 1
        c = classify(w_on, lam)
        if c.verdict != Verdict.POINT:
            failures.append(f"case ii: lam={lam} got {c.verdict.value}")

    w_out = parse_symbol("(z+1)/(z-1)^2")           # alpha = 1
    resolvent = 0
    for _ in range(100):
        lam = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
        c = classify(w_out, lam)
        if c.verdict == Verdict.RESOLVENT:
            resolvent += 1
        elif c.verdict != Verdict.POINT:
            failures.append(f"case iii: lam={lam} got {c.verdict.value}")
    if resolvent:
        failures.append(f"case iii: {resolvent} resolvent verdicts")
    return _result(4, "parametric trichotomy (inside/on/outside)", failures,
                   "resolvent at -1/2; continuous with k0=2; all-point plane")


# -- criterion 5: half line vs parabola ---------------------------------------

def check_halfline_and_parabola() -> CheckResult:
    failures = []
    vals = sample_curve(parse_symbol("z/(z-1)^2"),
                        n_base=2048, clip_modulus=1e4).unclipped_values()
    worst_lat = max(abs(v.imag) for v in vals)
    overshoot = max(v.real for v in vals) + 0.25
    if worst_lat > 1e-6:
        failures.append(f"half line: lateral deviation {worst_lat:.3e}")
    if overshoot > 1e-6:
        failures.append(f"half line: starts {overshoot:.3e} past -1/4")
    vals2 = sample_curve(parse_symbol("(z+1)/(z-1)^2"),
                         n_base=2048, clip_modulus=1e4).unclipped_values()
    # curve is -(alpha+1)(x(y) + iy) with x(y) = 4y^2 for alpha = 1
    worst par = 0.0
    return _result(5, "half line and explicit parabola", failures, "")


def _unused():
    pass


# -- criterion 6: index oracle equivalence ------------------------------------

def check_index_oracle() -> CheckResult:
    rng = np.random.default_rng(66)
    failures = []
    checked = 0
    while checked < 500 and len(failures) < 4:
        dq = int(rng.integers(1, 6))
        ds = int(rng.integers(0, 6))
        q = Polynomial(rng.normal(size=dq + 1) + 1j * rng.normal(size=dq + 1))
        s = Polynomial(rng.normal(size=ds + 1) + 1j * rng.normal(size=ds + 1))
        w = RationalSymbol(s, q)
        lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if essential_distance(w, lam) <= 1e-2:
            continue
        idx = fredholm_index(w, lam)
        k_q = counts(w, lam).k_q
        pen = pencil(w, lam)
        oracle = 0 if pen.degree == 0 else count_roots_in_disk(pen, 1.0, 4096)
        if idx != k_q - oracle:
            failures.append(f"{w.to_text()} at {lam}: index {idx}, "
                            f"oracle {k_q - oracle}")
        checked += 1
    return _result(6, "Fredholm index vs argument-principle oracle", failures,
                   f"{checked} random symbol/parameter pairs")


# -- criterion 7: kernel and codimension formulas -----------------------------

def check_kernel_codim() -> CheckResult:
    failures = []
    cases = [("1/(z-1)^2", 2, 0), ("(z-2)/(z-1)", 1, 0), ("(z-0.5)/(z-1)", 0, 0)]
    for text, want_ker, want_codim in cases:
        d = rat_t_diagnostics(parse_symbol(text))
        if d.kernel_dim != want_ker or d.range_closure_codim != want_codim:
            failures.append(f"{text}: kernel {d.kernel_dim}, "
                            f"codim {d.range_closure_codim}")
    c = classify(parse_symbol("(z-0.5)/(z-1)"), 0.0)
    if c.verdict != Verdict.RESOLVENT:
        failures.append(f"(z-0.5)/(z-1) at 0: got {c.verdict.value}")
    rng = np.random.default_rng(77)
    for _ in range(1000):
        dq = int(rng.integers(1, 5))
        angles = rng.uniform(0.0, 2.0 * math.pi, dq)
        q = from_roots(np.exp(1j * angles))
        ds = int(rng.integers(0, dq + 3))
        s = Polynomial(rng.normal(size=ds + 1) + 1j * rng.normal(size=ds + 1))
        d = rat_t_diagnostics(RationalSymbol(s, q))
        if d.kernel_dim > 0 and d.range_closure_codim > 0:
            failures.append(f"dichotomy broken for s={s.coeffs} q={q.coeffs}")
            break
    return _result(7, "kernel/codimension formulas and dichotomy", failures,
                   "3 fixed cases + 1000 random symbols with circle poles")


# -- criterion 8: partition exhaustiveness ------------------------------------

def check_partition() -> CheckResult:
    rng = np.random.default_rng(88)
    failures = []
    total = 0
    for _ in range(1000):
        dq = int(rng.integers(1, 7))
        ds = int(rng.integers(0, 7))
        q = Polynomial(rng.normal(size=dq + 1) + 1j * rng.normal(size=dq + 1))
        s = Polynomial(rng.normal(size=ds + 1) + 1j * rng.normal(size=ds + 1))
        w = RationalSymbol(s, q)
        for _ in range(10):
            lam = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            c = counts(w, lam)
            kq, km, k0 = c.k_q, c.k_lambda_minus, c.k_lambda_zero
            conditions = [k0 == 0 and kq == km,
                          kq > km + k0,
                          kq < km,
                          k0 > 0 and km <= kq <= km + k0]
            if conditions.count(True) != 1:
                failures.append(f"partition: {w.to_text()} at {lam}: {c}")
                break
            cls = classify(w, lam)
            if k0 == 0:
                idx = kq - km
                sign_ok = ((cls.verdict == Verdict.POINT) == (idx > 0)
                           and (cls.verdict == Verdict.RESIDUAL) == (idx < 0)
                           and (cls.verdict == Verdict.RESOLVENT) == (idx == 0))
                if not sign_ok or cls.index != idx:
                    failures.append(f"index sign: {w.to_text()} at {lam}")
                    break
            total += 1
        if failures:
            break
    return _result(8, "partition exhaustiveness and index signs", failures,
                   f"{total} (symbol, lambda) pairs")


# -- criterion 9: bounded resolvent regression --------------------------------

def check_bounded_resolvent() -> CheckResult:
    w = parse_symbol("(z^4+3*z+1)/(z^2-1)")
    failures = []
    inner = classify_grid(w, GridSpec(-6, 6, -6, 6, 128, 128))
    n_inner = inner.count(Verdict.RESOLVENT)
    if n_inner == 0:
        failures.append("no resolvent cells in [-6,6]^2")
    outer = classify_grid(w, GridSpec(-60, 60, -60, 60, 128, 128))
    ring = 0
    for i in range(128):
        for j in range(128):
            if i in (0, 127) or j in (0, 127):
                if outer.cell(i, j).verdict == Verdict.RESOLVENT:
                    ring += 1
    if ring:
        failures.append(f"{ring} resolvent cells on the [-60,60]^2 boundary")
    return _result(9, "bounded resolvent set", failures,
                   f"{n_inner} resolvent cells inside, 0 on the far ring")


# -- criterion 10: figure color conventions -----------------------------------

_GOLDEN_PIXELS = {
    2: b"\xff\x00\x00",   # red
    1: b"\x00\x00\xff",   # blue
    -1: b"\x00\xff\xff",  # cyan
    -2: b"\xff\x00\xff",  # magenta
    -3: b"\xff\xff\x00",  # yellow
    -4: b"\x00\xff\x00",  # green
}


def check_palette_goldens() -> CheckResult:
    spec = GridSpec(0.0, 1.0, 0.0, 1.0, 1, 1)
    failures = []
    for index, rgb in _GOLDEN_PIXELS.items():
        verdict = Verdict.POINT if index > 0 else Verdict.RESIDUAL
        grid = ClassifiedGrid(spec, (GridCell(verdict, index, math.inf),))
        golden = b"P6\n1 1\n255\n" + rgb
        image = render_ppm(grid)
        if image != golden:
            failures.append(f"index {index}: {image[-3:]!r} != {rgb!r}")
        if image != render_ppm(grid):
            failures.append(f"index {index}: render not deterministic")
    return _result(10, "index palette golden pixels", failures,
                   "red/blue/cyan/magenta/yellow/green")


ALL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_line_symbol,
    check_parabola,
    check_disconnected_verdicts,
    check_disconnected_curve_bound_as_recorded,
    check_disconnected_gap_verdict_as_recorded,
    check_trichotomy,
    check_halfline_and_parabola,
    check_index_oracle,
    check_kernel_codim,
    check_partition,
    check_bounded_resolvent,
    check_palette_goldens,
)


def run_all() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]

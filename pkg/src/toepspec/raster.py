"""Grid classification of the spectral plane and PPM rendering.

Every pixel center lam of a rectangular window is classified through the
pencil lam*q - s, and the grid is rendered with the color scheme

    white     resolvent set (index 0)
    black     essential curve (pencil root on the circle, or within the
              curve-thickness band around it), drawn over everything
    blue/red  index +1 / +2
    cyan/magenta/yellow/green/dark gray   index -1 / -2 / -3 / -4 / -5
    orange    pixels whose root iteration failed to converge
    hue ramp  any other index (deterministic)

Pixels are row-major with the top row at im_max, matching the PPM layout.
"""

from __future__ import annotations

import colorsys
import math
from dataclasses import dataclass

from .poly import axpy_lambda
from .roots import DEFAULT_CONFIG, RootConfig, find_roots_batch
from .spectral import (Classification, Verdict, classification_from_counts,
                       counts_from_rootsets)
from .symbol import PoleAt, RationalSymbol, evaluate_symbol


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("empty window")
        if self.width < 1 or self.height < 1:
            raise ValueError("grid must have at least one pixel")

    def pixel_size(self) -> tuple[float, float]:
        return ((self.re_max - self.re_min) / self.width,
                (self.im_max - self.im_min) / self.height)

    def centers(self) -> list[complex]:
        """Pixel-center lambdas, row-major, top row at im_max."""
        dx, dy = self.pixel_size()
        out = []
        for i in range(self.height):
            y = self.im_max - (i + 0.5) * dy
            for j in range(self.width):
                out.append(complex(self.re_min + (j + 0.5) * dx, y))
        return out


@dataclass(frozen=True)
class GridCell:
    """One pixel: verdict, Fredholm index (when off the curve), and the
    estimated distance from the pixel center to the essential curve in
    lambda units (nearest pencil root's circle distance scaled by the local
    derivative of the symbol, so it is comparable to pixel sizes)."""

    verdict: Verdict
    index: int | None
    essential_distance: float


@dataclass(frozen=True)
class ClassifiedGrid:
    spec: GridSpec
    cells: tuple[GridCell, ...]

    def cell(self, row: int, col: int) -> GridCell:
        return self.cells[row * self.spec.width + col]

    def count(self, verdict: Verdict) -> int:
        return sum(1 for c in self.cells if c.verdict == verdict)


def _cell_from_classification(c: Classification, dist: float) -> GridCell:
    return GridCell(c.verdict, c.index, dist)


_UNKNOWN_CELL = GridCell(Verdict.UNKNOWN, None, math.inf)


def classify_grid(w: RationalSymbol, spec: GridSpec,
                  cfg: RootConfig = DEFAULT_CONFIG,
                  threads: int = 1) -> ClassifiedGrid:
    """Classify every pixel center of the window.

    Pencil root finding is batched across pixels (grouped by pencil degree),
    which is what makes per-pixel classification cheap.  Pixels whose
    iteration fails are marked Verdict.UNKNOWN instead of failing the grid.
    """
    if threads > 1:
        return _classify_grid_parallel(w, spec, cfg, threads)
    centers = spec.centers()
    q_roots = w.pole_roots(cfg)
    pencils = []
    degenerate = {}
    for i, lam in enumerate(centers):
        pen = axpy_lambda(w.q, w.s, lam, cfg.tol_deflate)
        if pen.is_zero:
            # constant symbol at its own value: eigenvalue, whole circle
            degenerate[i] = GridCell(Verdict.POINT, None, 0.0)
            pen = None
        pencils.append(pen)
    live = [i for i, p in enumerate(pencils) if p is not None]
    rootsets = find_roots_batch([pencils[i] for i in live], cfg)
    cells: list[GridCell] = [_UNKNOWN_CELL] * len(centers)
    for i, rs in zip(live, rootsets):
        if rs is None:
            continue
        cls = classification_from_counts(counts_from_rootsets(q_roots, rs))
        cells[i] = _cell_from_classification(
            cls, _lambda_distance(rs, w, centers[i], cfg))
    for i, cell in degenerate.items():
        cells[i] = cell
    return ClassifiedGrid(spec, tuple(cells))


def _lambda_distance(rootset, w: RationalSymbol, lam: complex,
                     cfg: RootConfig) -> float:
    """Distance from lam to the essential curve, estimated in lambda units.

    Each pencil root is projected radially onto the unit circle and the
    symbol is evaluated there; the result is an actual curve point, so the
    minimum of |lam - value| upper-bounds the true distance and matches it
    to first order near the curve (a root on the circle gives 0 exactly).
    """
    best = math.inf
    for rec in rootset.roots:
        az = abs(rec.value)
        if az == 0.0:
            continue
        v = evaluate_symbol(w, rec.value / az, cfg.tol_pole)
        if isinstance(v, PoleAt):
            continue
        d = abs(lam - v)
        if d < best:
            best = d
    return best


def _classify_band(args):
    w, spec, cfg = args
    return classify_grid(w, spec, cfg, threads=1).cells


def _classify_grid_parallel(w: RationalSymbol, spec: GridSpec,
                            cfg: RootConfig, threads: int) -> ClassifiedGrid:
    import multiprocessing as mp

    bands = []
    dy = (spec.im_max - spec.im_min) / spec.height
    rows_per = max(1, math.ceil(spec.height / threads))
    row = 0
    while row < spec.height:
        n = min(rows_per, spec.height - row)
        # band window chosen so its pixel centers match the parent grid's
        band = GridSpec(spec.re_min, spec.re_max,
                        spec.im_max - (row + n) * dy,
                        spec.im_max - row * dy,
                        spec.width, n)
        bands.append((w, band, cfg))
        row += n
    with mp.get_context("fork").Pool(processes=min(threads, len(bands))) as pool:
        parts = pool.map(_classify_band, bands)
    cells: list[GridCell] = []
    for part in parts:
        cells.extend(part)
    return ClassifiedGrid(spec, tuple(cells))


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

WHITE = (255, 255, 255)
BLACK = (0, 0, 0)
ORANGE = (255, 165, 0)

INDEX_COLORS: dict[int, tuple[int, int, int]] = {
    0: WHITE,
    1: (0, 0, 255),       # blue
    2: (255, 0, 0),       # red
    -1: (0, 255, 255),    # cyan
    -2: (255, 0, 255),    # magenta
    -3: (255, 255, 0),    # yellow
    -4: (0, 255, 0),      # green
    -5: (64, 64, 64),     # dark gray
}

_HUE_STEP = 0.3819660112501051  # golden-ratio conjugate


def index_color(index: int) -> tuple[int, int, int]:
    """Color for a Fredholm index; fixed palette, hue ramp beyond it."""
    if index in INDEX_COLORS:
        return INDEX_COLORS[index]
    hue = (index * _HUE_STEP) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 0.85, 0.95)
    return (round(255 * r), round(255 * g), round(255 * b))


def default_curve_thickness(spec: GridSpec) -> float:
    dx, dy = spec.pixel_size()
    return 1.5 * math.hypot(dx, dy)


def render_ppm(grid: ClassifiedGrid, curve_thickness: float | None = None) -> bytes:
    """Render to a binary PPM (P6) image; a pure function of its inputs.

    The essential curve (cells with a pencil root on the circle, plus the
    band essential_distance <= curve_thickness) is painted black on top of
    the index colors so the measure-zero curve stays visible.
    """
    spec = grid.spec
    if curve_thickness is None:
        curve_thickness = default_curve_thickness(spec)
    out = bytearray(f"P6\n{spec.width} {spec.height}\n255\n".encode("ascii"))
    for cell in grid.cells:
        if cell.verdict == Verdict.UNKNOWN:
            rgb = ORANGE
        elif cell.index is None or cell.essential_distance <= curve_thickness:
            rgb = BLACK
        else:
            rgb = index_color(cell.index)
        out.extend(rgb)
    return bytes(out)


def write_ppm(grid: ClassifiedGrid, path,
              curve_thickness: float | None = None) -> None:
    with open(path, "wb") as fh:
        fh.write(render_ppm(grid, curve_thickness))

"""Piecewise-analytic probability densities and the mod 1 map.

A density of X = log10(Y) is a ``PiecewiseDensity``; its projection onto
[0, 1) (the sum of g(x + k) over all integers k) is a ``Mod1Density``. All
masses are tracked through piece weights, so projection and translation
conserve probability exactly instead of through quadrature.
"""

import json
import logging
import math
from bisect import bisect_right
from pathlib import Path

import numpy as np
import numpy.typing as npt
from pydantic import ValidationError

from benford.config import get_settings
from benford.schemas import (
    BOUNDARY_SLACK,
    ConstantShape,
    FloatArray,
    LinearShape,
    Mod1Density,
    Piece,
    PiecewiseDensity,
    TabulatedShape,
)

logger = logging.getLogger(__name__)

Density = PiecewiseDensity | Mod1Density


class DensityError(Exception):
    """Raised when a density cannot be built or read."""

    pass


class InvalidIntervalError(DensityError):
    """Raised when an integration interval has lo > hi."""

    pass


class InvalidBaseError(DensityError):
    """Raised when a logarithm base is below 2."""

    pass


def _as_density(d: Density) -> PiecewiseDensity:
    return d.inner if isinstance(d, Mod1Density) else d


def uniform(lo: float = 0.0, hi: float = 1.0) -> PiecewiseDensity:
    """Uniform density on [lo, hi)."""
    return PiecewiseDensity(
        pieces=(Piece(lo=lo, hi=hi, shape=ConstantShape(level=1.0), weight=1.0),)
    )


def evaluate(d: Density, x: float) -> float:
    """Density height at x.

    Pieces are left-closed and right-open, so at a boundary the value of the
    piece starting there is returned.

    Args:
        d: Density to evaluate.
        x: Point on the real line.

    Returns:
        Density height, 0 outside every piece.
    """
    pieces = _as_density(d).pieces
    index = bisect_right([p.lo for p in pieces], x) - 1
    if index < 0 or x >= pieces[index].hi:
        return 0.0
    return max(0.0, float(pieces[index].density(x)))


def evaluate_many(d: Density, xs: npt.ArrayLike) -> FloatArray:
    """Vectorized ``evaluate`` over an array of points."""
    pieces = _as_density(d).pieces
    xs = np.asarray(xs, dtype=np.float64)
    los = np.array([p.lo for p in pieces])
    his = np.array([p.hi for p in pieces])
    index = np.searchsorted(los, xs, side="right") - 1
    inside = (index >= 0) & (xs < his[np.clip(index, 0, None)])
    out = np.zeros_like(xs)
    for i in np.unique(index[inside]):
        mask = inside & (index == i)
        out[mask] = pieces[i].density(xs[mask])
    return np.maximum(out, 0.0)


def integrate(d: Density, lo: float, hi: float) -> float:
    """Exact probability mass of d over [lo, hi).

    Args:
        d: Density to integrate.
        lo: Left end of the interval.
        hi: Right end of the interval.

    Returns:
        Closed-form integral (trapezoid sums for tabulated pieces).

    Raises:
        InvalidIntervalError: If lo > hi.
    """
    if lo > hi:
        raise InvalidIntervalError(f"Invalid interval [{lo}, {hi}): lo exceeds hi")
    if lo == hi:
        return 0.0
    pieces = _as_density(d).pieces
    start = max(0, bisect_right([p.lo for p in pieces], lo) - 1)
    masses = []
    for piece in pieces[start:]:
        if piece.lo >= hi:
            break
        masses.append(piece.mass_between(lo, hi))
    return math.fsum(masses)


def cdf_many(d: Density, xs: npt.ArrayLike) -> FloatArray:
    """Cumulative distribution function at each point of xs."""
    pieces = _as_density(d).pieces
    xs = np.asarray(xs, dtype=np.float64)
    los = np.array([p.lo for p in pieces])
    weights = np.array([p.weight for p in pieces])
    before = np.concatenate(([0.0], np.cumsum(weights)))
    index = np.searchsorted(los, xs, side="right") - 1
    out = np.where(index >= 0, before[np.clip(index, 0, None)], 0.0)
    for i in np.unique(index[index >= 0]):
        piece = pieces[i]
        mask = index == i
        u0, u1 = piece.bounds
        clipped = np.minimum(xs[mask], piece.hi)
        inside = piece.shape.cdf(piece.local(clipped)) - piece.shape.cdf(u0)
        partial = np.where(
            xs[mask] >= piece.hi, piece.weight, piece.weight * inside / piece.window_mass()
        )
        out[mask] += partial
    return out


def _restrict(piece: Piece, a: float, b: float, shift: float = 0.0) -> Piece | None:
    """The part of ``piece`` on [a, b), translated by ``shift``."""
    weight = piece.mass_between(a, b)
    if weight <= 0.0:
        return None
    u0, u1 = piece.bounds
    lo_u = u0 if a <= piece.lo else float(piece.local(a))
    hi_u = u1 if b >= piece.hi else float(piece.local(b))
    if isinstance(piece.shape, ConstantShape) or (lo_u == 0.0 and hi_u == 1.0):
        window = None
    elif lo_u < hi_u:
        window = (lo_u, hi_u)
    else:
        return None
    return Piece(lo=a + shift, hi=b + shift, shape=piece.shape, weight=weight, window=window)


def _unit_fragments(g: PiecewiseDensity) -> list[Piece]:
    """Split every piece at the integers and translate the parts into [0, 1)."""
    fragments = []
    for piece in g.pieces:
        if piece.weight == 0.0:
            continue
        for k in range(math.floor(piece.lo), math.ceil(piece.hi)):
            fragment = _restrict(piece, max(piece.lo, k), min(piece.hi, k + 1), shift=-k)
            if fragment is not None:
                fragments.append(fragment)
    return fragments


def _cell_edges(fragments: list[Piece]) -> list[float]:
    raw = sorted({f.lo for f in fragments} | {f.hi for f in fragments})
    edges = [raw[0]]
    for edge in raw[1:]:
        if edge - edges[-1] > BOUNDARY_SLACK:
            edges.append(edge)
    edges[0], edges[-1] = max(edges[0], 0.0), min(edges[-1], 1.0)
    return edges


def _combine(parts: list[Piece], lo: float, hi: float, grid: int) -> Piece | None:
    """Sum of overlapping parts on the common cell [lo, hi)."""
    weight = math.fsum(p.weight for p in parts)
    if weight <= 0.0:
        return None
    if len(parts) == 1:
        only = parts[0]
        return Piece(lo=lo, hi=hi, shape=only.shape, weight=weight, window=only.window)
    if all(isinstance(p.shape, ConstantShape) for p in parts):
        return Piece(lo=lo, hi=hi, shape=ConstantShape(level=1.0), weight=weight)
    if all(isinstance(p.shape, ConstantShape | LinearShape) for p in parts):
        left = max(0.0, math.fsum(float(p.density(lo)) for p in parts))
        right = max(0.0, math.fsum(float(p.density(hi)) for p in parts))
        return Piece(lo=lo, hi=hi, shape=LinearShape(left=left, right=right), weight=weight)
    points = max(2, math.ceil(grid * (hi - lo))) + 1
    xs = np.linspace(lo, hi, points)
    heights = np.maximum(sum((p.density(xs) for p in parts), np.zeros_like(xs)), 0.0)
    if not np.any(heights > 0.0):
        return Piece(lo=lo, hi=hi, shape=ConstantShape(level=1.0), weight=weight)
    shape = TabulatedShape(ordinates=tuple(float(h) for h in heights))
    return Piece(lo=lo, hi=hi, shape=shape, weight=weight)


def _merge_flat(pieces: list[Piece]) -> list[Piece]:
    """Join touching constant pieces of equal height."""
    merged: list[Piece] = []
    for piece in pieces:
        if merged:
            prev = merged[-1]
            if (
                isinstance(prev.shape, ConstantShape)
                and isinstance(piece.shape, ConstantShape)
                and abs(piece.lo - prev.hi) <= BOUNDARY_SLACK
            ):
                h_prev, h_cur = prev.weight / prev.width, piece.weight / piece.width
                if abs(h_prev - h_cur) <= 1e-12 * max(h_prev, h_cur):
                    merged[-1] = Piece(
                        lo=prev.lo,
                        hi=piece.hi,
                        shape=prev.shape,
                        weight=prev.weight + piece.weight,
                    )
                    continue
        merged.append(piece)
    return merged


def mod1_project(g: Density, grid: int | None = None) -> Mod1Density:
    """Fold a density onto [0, 1): g_dag(x) = sum over k of g(x + k).

    Overlapping parts stay exact when they are all constant or linear; any
    other overlap is tabulated on ``grid`` ordinates per unit interval.

    Args:
        g: Density with finitely many pieces.
        grid: Tabulation grid; defaults to the configured tabulation_grid.

    Returns:
        The mod-1 density, carrying exactly the mass of g.
    """
    grid = grid if grid is not None else get_settings().tabulation_grid
    fragments = sorted(_unit_fragments(_as_density(g)), key=lambda f: (f.lo, f.hi))
    edges = _cell_edges(fragments)

    pieces: list[Piece] = []
    active: list[Piece] = []
    upcoming = 0
    for lo, hi in zip(edges, edges[1:], strict=False):
        middle = 0.5 * (lo + hi)
        while upcoming < len(fragments) and fragments[upcoming].lo <= middle:
            active.append(fragments[upcoming])
            upcoming += 1
        active = [f for f in active if f.hi > middle]
        parts = []
        for fragment in active:
            part = _restrict(fragment, max(lo, fragment.lo), min(hi, fragment.hi))
            if part is not None:
                parts.append(part)
        combined = _combine(parts, lo, hi, grid)
        if combined is not None:
            pieces.append(combined)

    pieces = _merge_flat(pieces)
    logger.debug(f"Projected {len(fragments)} fragments into {len(pieces)} pieces")
    return Mod1Density(inner=PiecewiseDensity(pieces=tuple(pieces)))


def translate_mod1(g_dag: Mod1Density, t: float) -> Mod1Density:
    """Wrap-around of g_dag under the translation x -> x + t.

    Args:
        g_dag: Mod-1 density.
        t: Translation; only t mod 1 matters.

    Returns:
        Mod-1 projection of x -> g_dag(x - t).
    """
    shift = t - math.floor(t)
    if shift == 0.0 or shift >= 1.0:
        return g_dag
    shifted = tuple(
        Piece(lo=p.lo + shift, hi=p.hi + shift, shape=p.shape, weight=p.weight, window=p.window)
        for p in g_dag.pieces
    )
    return mod1_project(PiecewiseDensity(pieces=shifted))


def rebase_log_density(g: PiecewiseDensity, base: int) -> PiecewiseDensity:
    """Density of log_b(Y) given the density g of log10(Y).

    Args:
        g: Density of X = log10(Y).
        base: Integer base b >= 2.

    Returns:
        Density of X / log10(b); masses are unchanged.

    Raises:
        InvalidBaseError: If base < 2.
    """
    if base < 2:
        raise InvalidBaseError(f"Base must be an integer >= 2, got {base}")
    if base == 10:
        return g
    scale = math.log10(base)
    pieces = tuple(
        Piece(lo=p.lo / scale, hi=p.hi / scale, shape=p.shape, weight=p.weight, window=p.window)
        for p in g.pieces
    )
    return PiecewiseDensity(pieces=pieces)


def density_of_Y_from_g(g: PiecewiseDensity, grid: int | None = None) -> PiecewiseDensity:  # noqa: N802
    """Density f(y) = g(log10 y) / (y ln 10) of Y = 10**X.

    The change of variables does not preserve piece shapes, so every piece
    becomes a tabulated piece on [10**lo, 10**hi) with the same weight.

    Args:
        g: Density of X with finite support.
        grid: Ordinates per piece; defaults to the configured transform_grid.

    Returns:
        Density of Y, supported away from 0.
    """
    grid = grid if grid is not None else get_settings().transform_grid
    pieces = []
    for piece in g.pieces:
        if piece.weight == 0.0:
            continue
        y_lo, y_hi = 10.0**piece.lo, 10.0**piece.hi
        ys = np.linspace(y_lo, y_hi, grid)
        heights = np.maximum(piece.density(np.log10(ys)), 0.0) / (ys * math.log(10.0))
        shape = TabulatedShape(ordinates=tuple(float(h) for h in heights))
        pieces.append(Piece(lo=y_lo, hi=y_hi, shape=shape, weight=piece.weight))
    return PiecewiseDensity(pieces=tuple(pieces))


def dump_density_spec(d: Density) -> str:
    """Serialize a density to the density-spec JSON format."""
    return _as_density(d).model_dump_json(indent=2, exclude_none=True) + "\n"


def load_density_spec(path: str | Path) -> PiecewiseDensity:
    """Read a density-spec JSON file.

    Raises:
        DensityError: If the file is unreadable or does not describe a density.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DensityError(f"Cannot read density spec {path}: {e}") from e
    return parse_density_spec(text, source=str(path))


def parse_density_spec(text: str, source: str = "<string>") -> PiecewiseDensity:
    """Parse density-spec JSON text."""
    try:
        return PiecewiseDensity.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise DensityError(f"Malformed JSON in {source}: {e}") from e
    except ValidationError as e:
        raise DensityError(f"Invalid density spec in {source}: {e}") from e

"""Named densities of X = log10(Y) used by the CLI, the HTTP service and the tests."""

import math
from collections.abc import Callable

from benford.construct import benford_partition, construct_n_digit, named_bump
from benford.density import uniform
from benford.schemas import ConstantShape, LinearShape, Piece, PiecewiseDensity


class UnknownPresetError(ValueError):
    """Raised when a preset name is not registered."""

    pass


def sine1() -> PiecewiseDensity:
    """The 1-digit Benford density: one sine bump on each [log d, log(d+1))."""
    return construct_n_digit(benford_partition(1), named_bump("sine")).inner


def geometric_steps(terms: int = 60, ratio: float = 0.5) -> PiecewiseDensity:
    """Unit steps on [k, k+1), k = 1..terms, with masses proportional to ratio**k.

    Truncated and renormalized, so every fold onto [0, 1) is exactly uniform.
    """
    if terms < 1 or not 0.0 < ratio < 1.0:
        raise ValueError(f"Need terms >= 1 and 0 < ratio < 1, got {terms}, {ratio}")
    raw = [ratio**k for k in range(1, terms + 1)]
    total = math.fsum(raw)
    return PiecewiseDensity(
        pieces=tuple(
            Piece(lo=float(k), hi=float(k + 1), shape=ConstantShape(level=1.0), weight=w / total)
            for k, w in zip(range(1, terms + 1), raw, strict=True)
        )
    )


def triangle(a: float = 0.0, c: float = 1.5, b: float = 3.0) -> PiecewiseDensity:
    """Triangle(a, c, b): rises linearly from a to a peak at c, falls to b."""
    if not a < c < b:
        raise ValueError(f"Triangle needs a < c < b, got {a}, {c}, {b}")
    peak = 2.0 / (b - a)
    return PiecewiseDensity(
        pieces=(
            Piece(lo=a, hi=c, shape=LinearShape(left=0.0, right=peak), weight=(c - a) / (b - a)),
            Piece(lo=c, hi=b, shape=LinearShape(left=peak, right=0.0), weight=(b - c) / (b - a)),
        )
    )


PRESETS: dict[str, Callable[[], PiecewiseDensity]] = {
    "uniform": uniform,
    "sine1": sine1,
    "geom60": geometric_steps,
    "triangle": triangle,
}


def get_preset(name: str) -> PiecewiseDensity:
    """Density registered under ``name``.

    Raises:
        UnknownPresetError: If no preset has that name.
    """
    try:
        factory = PRESETS[name]
    except KeyError as e:
        known = ", ".join(PRESETS)
        raise UnknownPresetError(f"Unknown preset '{name}'. Choose one of: {known}") from e
    return factory()

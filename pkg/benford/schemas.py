"""Data models for the digit toolkit.

Every domain value is an immutable pydantic model. The shape models also carry
their closed-form local profile, CDF and inverse CDF on the unit coordinate
u in [0, 1]; the piecewise algebra built on them lives in ``benford.density``.
"""

import math
from typing import Annotated, Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

FloatArray = npt.NDArray[np.float64]

MASS_TOLERANCE = 1e-12
DISTRIBUTION_TOLERANCE = 1e-9
BOUNDARY_SLACK = 1e-12


def _as_array(u: npt.ArrayLike) -> FloatArray:
    return np.asarray(u, dtype=np.float64)


def _solve_linear_ramp(start: FloatArray, slope: FloatArray, area: FloatArray) -> FloatArray:
    """Solve ``start*t + slope*t**2/2 = area`` for the smallest t >= 0."""
    root = np.sqrt(np.maximum(start * start + 2.0 * slope * area, 0.0))
    denominator = start + root
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(denominator > 0.0, 2.0 * area / denominator, 0.0)
    return t


class ConstantShape(BaseModel):
    """Flat profile."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["constant"] = "constant"
    level: float = Field(..., gt=0, description="Density height before rescaling")

    def mass(self) -> float:
        return self.level

    def profile(self, u: npt.ArrayLike) -> FloatArray:
        return np.ones_like(_as_array(u))

    def cdf(self, u: npt.ArrayLike) -> FloatArray:
        return np.clip(_as_array(u), 0.0, 1.0)

    def inverse_cdf(self, q: npt.ArrayLike) -> FloatArray:
        return np.clip(_as_array(q), 0.0, 1.0)


class LinearShape(BaseModel):
    """Straight line between two end heights."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["linear"] = "linear"
    left: float = Field(..., ge=0, description="Height at the left end")
    right: float = Field(..., ge=0, description="Height at the right end")

    @model_validator(mode="after")
    def _check_area(self) -> "LinearShape":
        if self.left + self.right <= 0:
            raise ValueError("linear shape must enclose positive area")
        return self

    def mass(self) -> float:
        return 0.5 * (self.left + self.right)

    def profile(self, u: npt.ArrayLike) -> FloatArray:
        u = _as_array(u)
        return (self.left + (self.right - self.left) * u) / self.mass()

    def cdf(self, u: npt.ArrayLike) -> FloatArray:
        u = np.clip(_as_array(u), 0.0, 1.0)
        area = self.left * u + 0.5 * (self.right - self.left) * u * u
        return area / self.mass()

    def inverse_cdf(self, q: npt.ArrayLike) -> FloatArray:
        area = np.clip(_as_array(q), 0.0, 1.0) * self.mass()
        start = np.full_like(area, self.left)
        slope = np.full_like(area, self.right - self.left)
        return np.clip(_solve_linear_ramp(start, slope, area), 0.0, 1.0)


class SineBumpShape(BaseModel):
    """The unit bump (pi/2)*sin(pi*u); its mass on [0, 1] is exactly 1."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["sine_bump"] = "sine_bump"

    def mass(self) -> float:
        return 1.0

    def profile(self, u: npt.ArrayLike) -> FloatArray:
        return 0.5 * math.pi * np.sin(math.pi * _as_array(u))

    def cdf(self, u: npt.ArrayLike) -> FloatArray:
        u = np.clip(_as_array(u), 0.0, 1.0)
        return 0.5 * (1.0 - np.cos(math.pi * u))

    def inverse_cdf(self, q: npt.ArrayLike) -> FloatArray:
        q = np.clip(_as_array(q), 0.0, 1.0)
        return np.arccos(1.0 - 2.0 * q) / math.pi


class TabulatedShape(BaseModel):
    """Heights at equally spaced local coordinates, joined linearly."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["tabulated"] = "tabulated"
    ordinates: tuple[float, ...] = Field(
        ..., min_length=2, description="Heights at u = i/(len-1)"
    )

    @field_validator("ordinates")
    @classmethod
    def _check_ordinates(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if any(not math.isfinite(y) or y < 0 for y in v):
            raise ValueError("ordinates must be finite and non-negative")
        if sum(v) <= 0:
            raise ValueError("tabulated shape must enclose positive area")
        return v

    @property
    def step(self) -> float:
        return 1.0 / (len(self.ordinates) - 1)

    def _nodes(self) -> tuple[FloatArray, FloatArray]:
        heights = np.asarray(self.ordinates, dtype=np.float64)
        cells = 0.5 * self.step * (heights[:-1] + heights[1:])
        cumulative = np.concatenate(([0.0], np.cumsum(cells)))
        return heights, cumulative

    def mass(self) -> float:
        _, cumulative = self._nodes()
        return float(cumulative[-1])

    def _cell(self, u: FloatArray) -> tuple[npt.NDArray[np.intp], FloatArray]:
        last = len(self.ordinates) - 2
        index = np.clip(np.floor(u / self.step).astype(np.intp), 0, last)
        return index, u - index * self.step

    def profile(self, u: npt.ArrayLike) -> FloatArray:
        heights, cumulative = self._nodes()
        u = np.clip(_as_array(u), 0.0, 1.0)
        index, offset = self._cell(u)
        slope = (heights[index + 1] - heights[index]) / self.step
        return (heights[index] + slope * offset) / cumulative[-1]

    def cdf(self, u: npt.ArrayLike) -> FloatArray:
        heights, cumulative = self._nodes()
        u = np.clip(_as_array(u), 0.0, 1.0)
        index, offset = self._cell(u)
        slope = (heights[index + 1] - heights[index]) / self.step
        area = cumulative[index] + heights[index] * offset + 0.5 * slope * offset * offset
        return np.clip(area / cumulative[-1], 0.0, 1.0)

    def inverse_cdf(self, q: npt.ArrayLike) -> FloatArray:
        heights, cumulative = self._nodes()
        area = np.clip(_as_array(q), 0.0, 1.0) * cumulative[-1]
        last = len(self.ordinates) - 2
        index = np.clip(np.searchsorted(cumulative, area, side="right") - 1, 0, last)
        slope = (heights[index + 1] - heights[index]) / self.step
        offset = _solve_linear_ramp(heights[index], slope, area - cumulative[index])
        return np.clip(index * self.step + np.minimum(offset, self.step), 0.0, 1.0)


AnyShape = ConstantShape | LinearShape | SineBumpShape | TabulatedShape

PieceShape = Annotated[
    AnyShape,
    Field(discriminator="kind"),
]


class Piece(BaseModel):
    """One analytic piece of a density on [lo, hi).

    The shape's local coordinate runs over ``window`` (the whole [0, 1] unless
    the piece is a restriction of a larger piece) and is rescaled so that the
    piece carries exactly ``weight`` of probability mass.
    """

    model_config = ConfigDict(frozen=True)

    lo: float = Field(..., description="Inclusive left endpoint")
    hi: float = Field(..., description="Exclusive right endpoint")
    shape: PieceShape
    weight: float = Field(..., ge=0, description="Probability mass of the piece")
    window: tuple[float, float] | None = Field(
        None, description="Sub-range of the shape's local coordinate; None means [0, 1]"
    )

    @model_validator(mode="after")
    def _check_piece(self) -> "Piece":
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.lo >= self.hi:
            raise ValueError(f"piece needs lo < hi, got [{self.lo}, {self.hi})")
        if self.window is not None:
            u0, u1 = self.window
            if not 0.0 <= u0 < u1 <= 1.0:
                raise ValueError(f"window must satisfy 0 <= u0 < u1 <= 1, got {self.window}")
        if self.weight > 0 and self.window_mass() <= 0:
            raise ValueError("piece window encloses no area of its shape")
        return self

    @property
    def bounds(self) -> tuple[float, float]:
        return self.window if self.window is not None else (0.0, 1.0)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def window_mass(self) -> float:
        """Normalized shape mass inside the window."""
        u0, u1 = self.bounds
        if self.window is None:
            return 1.0
        return float(self.shape.cdf(u1) - self.shape.cdf(u0))

    def local(self, x: npt.ArrayLike) -> FloatArray:
        """Map x in [lo, hi) to the shape's local coordinate."""
        u0, u1 = self.bounds
        return u0 + (_as_array(x) - self.lo) / self.width * (u1 - u0)

    def density(self, x: npt.ArrayLike) -> FloatArray:
        """Density formula of the piece, without any support check."""
        u0, u1 = self.bounds
        scale = self.weight * (u1 - u0) / (self.width * self.window_mass())
        return scale * self.shape.profile(self.local(x))

    def mass_between(self, a: float, b: float) -> float:
        """Mass of the piece over [a, b) intersected with [lo, hi)."""
        a, b = max(a, self.lo), min(b, self.hi)
        if a >= b or self.weight == 0:
            return 0.0
        if a == self.lo and b == self.hi:
            return self.weight
        u0, u1 = self.bounds
        start = float(self.shape.cdf(self.local(a))) if a > self.lo else float(self.shape.cdf(u0))
        end = float(self.shape.cdf(self.local(b))) if b < self.hi else float(self.shape.cdf(u1))
        return self.weight * (end - start) / self.window_mass()


class PiecewiseDensity(BaseModel):
    """A probability density on the real line as ordered, disjoint pieces."""

    model_config = ConfigDict(frozen=True)

    pieces: tuple[Piece, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _check_density(self) -> "PiecewiseDensity":
        for left, right in zip(self.pieces, self.pieces[1:], strict=False):
            if right.lo < left.hi - BOUNDARY_SLACK:
                raise ValueError(
                    f"pieces must be sorted and disjoint: [{left.lo}, {left.hi}) "
                    f"overlaps [{right.lo}, {right.hi})"
                )
        total = self.total_mass
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"piece weights must sum to 1, got {total!r}")
        return self

    @property
    def total_mass(self) -> float:
        return math.fsum(piece.weight for piece in self.pieces)

    @property
    def support(self) -> tuple[float, float]:
        return self.pieces[0].lo, self.pieces[-1].hi


class Mod1Density(BaseModel):
    """A density supported inside [0, 1): the mod-1 projection of some g."""

    model_config = ConfigDict(frozen=True)

    inner: PiecewiseDensity

    @model_validator(mode="after")
    def _check_unit_support(self) -> "Mod1Density":
        lo, hi = self.inner.support
        if lo < 0.0 or hi > 1.0:
            raise ValueError(f"mod-1 density must live in [0, 1), got [{lo}, {hi})")
        return self

    @property
    def pieces(self) -> tuple[Piece, ...]:
        return self.inner.pieces


class DigitBlock(BaseModel):
    """A prescribed run of leading significant digits."""

    model_config = ConfigDict(frozen=True)

    digits: tuple[int, ...] = Field(..., min_length=1)
    base: int = Field(10, ge=2)

    @model_validator(mode="after")
    def _check_digits(self) -> "DigitBlock":
        first, rest = self.digits[0], self.digits[1:]
        if not 1 <= first < self.base:
            raise ValueError(f"leading digit must be in 1..{self.base - 1}, got {first}")
        if any(not 0 <= d < self.base for d in rest):
            raise ValueError(f"digits must be in 0..{self.base - 1}, got {self.digits}")
        return self

    @classmethod
    def from_value(cls, value: int, length: int, base: int = 10) -> "DigitBlock":
        """Build the block whose digits spell ``value`` in ``base``."""
        if not base ** (length - 1) <= value < base**length:
            raise ValueError(f"{value} does not have exactly {length} base-{base} digits")
        digits = []
        for _ in range(length):
            value, d = divmod(value, base)
            digits.append(d)
        return cls(digits=tuple(reversed(digits)), base=base)

    @property
    def length(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.base + d
        return v

    @property
    def label(self) -> str:
        if self.base <= 10:
            return "".join(str(d) for d in self.digits)
        return ".".join(str(d) for d in self.digits)

    def __str__(self) -> str:
        return self.label


class DigitDistribution(BaseModel):
    """Probabilities or frequencies of every block of one length, in lexicographic order."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Block length")
    base: int = Field(10, ge=2)
    blocks: tuple[DigitBlock, ...]
    probabilities: tuple[float, ...]
    total_count: int | None = Field(None, ge=0, description="Sample size for frequencies")

    @model_validator(mode="after")
    def _check_distribution(self) -> "DigitDistribution":
        if len(self.blocks) != len(self.probabilities):
            raise ValueError("blocks and probabilities differ in length")
        if any(p < -MASS_TOLERANCE for p in self.probabilities):
            raise ValueError("probabilities must be non-negative")
        total = math.fsum(self.probabilities)
        if abs(total - 1.0) > DISTRIBUTION_TOLERANCE:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")
        return self

    def as_mapping(self) -> dict[DigitBlock, float]:
        return dict(zip(self.blocks, self.probabilities, strict=True))

    def probability(self, block: DigitBlock) -> float:
        return self.as_mapping()[block]

    def counts(self) -> list[int]:
        """Observed counts, recovered from frequencies and total_count."""
        if self.total_count is None:
            raise ValueError("distribution carries no sample size")
        return [round(p * self.total_count) for p in self.probabilities]


class RejectedRow(BaseModel):
    """An input row left out of a dataset."""

    model_config = ConfigDict(frozen=True)

    row: int = Field(..., ge=1, description="1-based line number in the source file")
    raw: str
    reason: Literal["nonpositive", "non_numeric"]


class SampleSet(BaseModel):
    """Draws of a random variable with their provenance."""

    model_config = ConfigDict(frozen=True)

    values: tuple[float, ...]
    seed: int | None = Field(None, description="Generator seed; None for ingested data")
    count: int = Field(..., ge=0)
    source: str = Field(..., description="Preset name, spec path or dataset path")
    rejected: tuple[RejectedRow, ...] = Field(
        (), description="Rows excluded during ingestion"
    )

    @model_validator(mode="after")
    def _check_count(self) -> "SampleSet":
        if len(self.values) != self.count:
            raise ValueError(f"count {self.count} does not match {len(self.values)} values")
        return self

    @property
    def exclusion_count(self) -> int:
        return len(self.rejected)


class FitReport(BaseModel):
    """Goodness of fit of an empirical digit distribution."""

    model_config = ConfigDict(frozen=True)

    n: int
    empirical: DigitDistribution
    theoretical: DigitDistribution
    chi_square: float = Field(..., ge=0)
    degrees_of_freedom: int = Field(..., ge=1)
    p_value: float = Field(..., ge=0, le=1)
    mad: float = Field(..., ge=0, description="Mean absolute deviation")
    max_abs_dev: float = Field(..., ge=0)


class InvarianceReport(BaseModel):
    """Digit distributions across a grid of scales or translations."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["scale", "translation"]
    n: int
    parameters: tuple[float, ...]
    shifts: tuple[float, ...] = Field(..., description="Translation mod 1 for each parameter")
    distributions: tuple[DigitDistribution, ...]
    deviations: tuple[float, ...] = Field(
        ..., description="Total variation from the unshifted distribution"
    )
    max_deviation: float = Field(..., ge=0)

    @field_validator("deviations")
    @classmethod
    def _check_deviations(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if any(d < 0 for d in v):
            raise ValueError("deviations must be non-negative")
        return v


class VerificationReport(BaseModel):
    """How closely a mod-1 density reproduces the n-digit Benford law."""

    model_config = ConfigDict(frozen=True)

    n: int
    max_abs_error: float = Field(..., ge=0)
    is_n_digit: bool
    tolerance: float
    worst_block: DigitBlock | None = None


class Histogram(BaseModel):
    """Equal-width bin counts."""

    model_config = ConfigDict(frozen=True)

    edges: tuple[float, ...]
    counts: tuple[int, ...]
    underflow: int = 0
    overflow: int = 0


class CommandConfig(BaseModel):
    """Everything that determines one CLI run."""

    model_config = ConfigDict(frozen=True)

    subcommand: Literal[
        "construct", "verify", "table", "sample", "analyze", "invariance", "rebase"
    ]
    input_path: str | None = None
    output_path: str | None = None
    spec_path: str | None = None
    preset: str | None = None
    bump: str | None = None
    bump_path: str | None = None
    histogram_path: str | None = None
    column: str | None = None
    seed: int = 42
    count: int = Field(100_000, ge=1)
    n: int = Field(1, ge=1)
    base: int = Field(10, ge=2)
    scales: tuple[float, ...] = ()
    shifts: tuple[float, ...] = ()
    bins: int = Field(100, ge=1)
    workers: int = Field(1, ge=1)
    tolerance: float = Field(0.005, gt=0, description="Largest per-block deviation accepted by table")
    min_p_value: float | None = Field(None, ge=0, le=1)
    skip_invalid: bool = False
    sample_x: bool = Field(False, description="Emit X = log10(Y) instead of Y")
    output_format: Literal["json", "csv", "text"] = "text"


class Partition(BaseModel):
    """Breakpoints 0 = a_0 < a_1 < ... < a_m = 1 of the unit interval."""

    model_config = ConfigDict(frozen=True)

    points: tuple[float, ...] = Field(..., min_length=2)

    @field_validator("points")
    @classmethod
    def _check_points(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if v[0] != 0.0 or v[-1] != 1.0:
            raise ValueError("partition must start at exactly 0 and end at exactly 1")
        if any(b <= a for a, b in zip(v, v[1:], strict=False)):
            raise ValueError("partition points must be strictly increasing")
        return v

    @property
    def intervals(self) -> list[tuple[float, float]]:
        return list(zip(self.points, self.points[1:], strict=False))

    @property
    def widths(self) -> list[float]:
        return [b - a for a, b in self.intervals]


class BumpFamily(BaseModel):
    """Unit densities h_j on [0, 1], one per partition cell or one shared by all."""

    model_config = ConfigDict(frozen=True)

    shapes: tuple[PieceShape, ...] = Field(..., min_length=1)

    @field_validator("shapes")
    @classmethod
    def _check_unit_mass(cls, v: tuple[AnyShape, ...]) -> tuple[AnyShape, ...]:
        for shape in v:
            if abs(shape.mass() - 1.0) > MASS_TOLERANCE:
                raise ValueError(f"bump {shape.kind} has mass {shape.mass()!r}, expected 1")
        return v

    @classmethod
    def normalized(cls, shapes: list[AnyShape]) -> "BumpFamily":
        """Rescale arbitrary shapes to unit mass."""
        scaled: list[AnyShape] = []
        for shape in shapes:
            m = shape.mass()
            match shape:
                case ConstantShape():
                    scaled.append(ConstantShape(level=1.0))
                case LinearShape(left=left, right=right):
                    scaled.append(LinearShape(left=left / m, right=right / m))
                case TabulatedShape(ordinates=ordinates):
                    scaled.append(TabulatedShape(ordinates=tuple(y / m for y in ordinates)))
                case _:
                    scaled.append(shape)
        return cls(shapes=tuple(scaled))

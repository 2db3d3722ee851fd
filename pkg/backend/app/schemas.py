"""Request and response models for the digit-law API.

Results reuse the models of ``benford.schemas``; this module only adds the
request bodies and the ``data`` envelopes every endpoint returns.
"""

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from benford.schemas import (
    DigitDistribution,
    InvarianceReport,
    PiecewiseDensity,
    PieceShape,
    VerificationReport,
)


class BlockProbability(BaseModel):
    """Benford probability of one digit block."""

    digits: str = Field(..., description="Block as written in its base, e.g. '847'")
    base: int = Field(..., ge=2, le=10)
    probability: float = Field(..., ge=0, le=1)


class BlockProbabilityResponse(BaseModel):
    """Response for GET /api/benford."""

    data: BlockProbability


class ConstructRequest(BaseModel):
    """Request payload for an n-digit construction."""

    n: int = Field(1, ge=1, le=4, description="Block length")
    bump: Literal["uniform", "sine", "linear-ramp"] = Field(
        "sine", description="Named bump placed on every partition cell"
    )
    shapes: list[PieceShape] | None = Field(
        None, description="Custom bumps: one shared shape or one per cell; rescaled to unit mass"
    )


class ConstructResult(BaseModel):
    """A constructed mod-1 density and its verification."""

    density: PiecewiseDensity
    verification: VerificationReport


class ConstructResponse(BaseModel):
    """Response for POST /api/construct."""

    data: ConstructResult


class DensitySource(BaseModel):
    """Either a named preset or an inline density spec."""

    preset: str | None = Field(None, description="Preset name, e.g. 'sine1'")
    density: PiecewiseDensity | None = Field(None, description="Density of X = log10(Y)")

    @model_validator(mode="after")
    def _check_one_source(self) -> "DensitySource":
        if (self.preset is None) == (self.density is None):
            raise ValueError("give exactly one of preset or density")
        return self


class VerifyRequest(DensitySource):
    """Request payload for n-digit verification."""

    n: int = Field(1, ge=1, le=4)


class VerifyResponse(BaseModel):
    """Response for POST /api/verify."""

    data: VerificationReport


class DistributionRequest(DensitySource):
    """Request payload for the digit law of a density."""

    n: int = Field(1, ge=1, le=4)
    base: int = Field(10, ge=2)


class DistributionResponse(BaseModel):
    """Response for POST /api/distribution."""

    data: DigitDistribution


class InvarianceRequest(DensitySource):
    """Request payload for a scale or translation experiment."""

    scales: list[float] | None = Field(None, min_length=1, description="Multipliers c > 0")
    shifts: list[float] | None = Field(None, min_length=1, description="Translations of log10(Y)")
    n: int = Field(1, ge=1, le=4)

    @model_validator(mode="after")
    def _check_one_grid(self) -> "InvarianceRequest":
        if (self.scales is None) == (self.shifts is None):
            raise ValueError("give exactly one of scales or shifts")
        return self


class InvarianceResponse(BaseModel):
    """Response for POST /api/invariance."""

    data: InvarianceReport

"""Digit-law and invariance endpoints."""

from fastapi import APIRouter, HTTPException

from benford.analyze import (
    base_digit_distribution,
    scale_invariance_report,
    translation_invariance_report,
)
from benford.density import DensityError, mod1_project
from benford.digits import BlockLimitError

from ..schemas import (
    DistributionRequest,
    DistributionResponse,
    InvarianceRequest,
    InvarianceResponse,
)
from .construct import resolve_density

router = APIRouter(prefix="/api", tags=["analysis"])


@router.post("/distribution", response_model=DistributionResponse)
async def distribution(request: DistributionRequest) -> DistributionResponse:
    """Base-b digit law of Y, where the request gives the density of log10(Y).

    Raises:
        HTTPException: If the block enumeration exceeds the configured limit.
    """
    g = resolve_density(request)
    try:
        dist = base_digit_distribution(g, request.base, request.n)
    except (BlockLimitError, DensityError) as e:
        raise HTTPException(status_code=400, detail=str(e)) from e
    return DistributionResponse(data=dist)


@router.post("/invariance", response_model=InvarianceResponse)
async def invariance(request: InvarianceRequest) -> InvarianceResponse:
    """Digit-law deviations over a grid of scales or translations."""
    g = resolve_density(request)
    try:
        if request.scales is not None:
            report = scale_invariance_report(g, request.scales, request.n)
        else:
            report = translation_invariance_report(mod1_project(g), request.shifts or [], request.n)
    except (BlockLimitError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e)) from e
    return InvarianceResponse(data=report)

"""Construction and verification endpoints.

This module provides POST /api/construct, which builds an n-digit Benford
mod-1 density from bumps, and POST /api/verify, which checks any density
against the n-digit law.
"""

import logging

from fastapi import APIRouter, HTTPException

from benford.construct import (
    ConstructionError,
    benford_partition,
    construct_n_digit,
    named_bump,
    verify_n_digit,
)
from benford.density import mod1_project
from benford.digits import BlockLimitError
from benford.presets import UnknownPresetError, get_preset
from benford.schemas import BumpFamily, PiecewiseDensity

from ..schemas import (
    ConstructRequest,
    ConstructResponse,
    ConstructResult,
    DensitySource,
    VerifyRequest,
    VerifyResponse,
)

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api", tags=["construct"])


def resolve_density(source: DensitySource) -> PiecewiseDensity:
    """Density named by a request.

    Raises:
        HTTPException: If the preset is unknown.
    """
    if source.density is not None:
        return source.density
    try:
        return get_preset(source.preset or "")
    except UnknownPresetError as e:
        raise HTTPException(status_code=400, detail=str(e)) from e


@router.post("/construct", response_model=ConstructResponse)
async def construct(request: ConstructRequest) -> ConstructResponse:
    """Build an n-digit Benford mod-1 density.

    Args:
        request: Block length and bumps.

    Returns:
        ConstructResponse with the density spec and its verification.

    Raises:
        HTTPException: If the bumps do not fit the partition.
    """
    try:
        if request.shapes:
            bumps = BumpFamily.normalized(list(request.shapes))
        else:
            bumps = named_bump(request.bump)
        g_dag = construct_n_digit(benford_partition(request.n), bumps)
    except (ConstructionError, BlockLimitError, ValueError) as e:
        raise HTTPException(status_code=400, detail=str(e)) from e

    report = verify_n_digit(g_dag, request.n)
    logger.info(f"Constructed n={request.n} density with {len(g_dag.pieces)} pieces")
    return ConstructResponse(data=ConstructResult(density=g_dag.inner, verification=report))


@router.post("/verify", response_model=VerifyResponse)
async def verify(request: VerifyRequest) -> VerifyResponse:
    """Check whether a density satisfies the n-digit Benford law."""
    g = resolve_density(request)
    try:
        report = verify_n_digit(mod1_project(g), request.n)
    except BlockLimitError as e:
        raise HTTPException(status_code=400, detail=str(e)) from e
    return VerifyResponse(data=report)

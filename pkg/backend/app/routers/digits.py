"""Benford block probability endpoint.

This module provides GET /api/benford for the exact probability of a
prescribed block of leading digits.
"""

from fastapi import APIRouter, HTTPException, Query

from benford.digits import benford_block_prob
from benford.schemas import DigitBlock

from ..schemas import BlockProbability, BlockProbabilityResponse

router = APIRouter(prefix="/api", tags=["digits"])


@router.get("/benford", response_model=BlockProbabilityResponse)
async def get_block_probability(
    digits: str = Query(..., min_length=1, max_length=18, description="Leading digits, e.g. 847"),
    base: int = Query(10, ge=2, le=10, description="Base the digits are written in"),
) -> BlockProbabilityResponse:
    """Benford probability that Y starts with the given digits.

    Args:
        digits: Digit string with a nonzero leading digit.
        base: Base of the digit string.

    Returns:
        BlockProbabilityResponse with log_b(1 + 1/v) for block value v.

    Raises:
        HTTPException: If the string is not a valid block in that base.
    """
    try:
        block = DigitBlock.from_value(int(digits, base), len(digits), base)
    except ValueError as err:
        raise HTTPException(
            status_code=400,
            detail=f"Invalid base-{base} digit block: {digits}",
        ) from err

    return BlockProbabilityResponse(
        data=BlockProbability(digits=digits, base=base, probability=benford_block_prob(block))
    )

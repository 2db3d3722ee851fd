"""Main FastAPI application for the digit-law service.

This module sets up the FastAPI application with CORS configuration
and includes all API routers.
"""

import logging
import os
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from dotenv import load_dotenv
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from benford.config import env_path, get_settings

from .routers import analysis, construct, digits

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncIterator[None]:
    """Application lifespan context manager.

    Loads settings once at startup so a bad BENFORD_* variable fails fast.

    Args:
        app: FastAPI application instance.

    Yields:
        None during application runtime.
    """
    settings = get_settings()
    logger.info(f"Starting digit-law API (max block length {settings.max_block_length})")

    yield

    logger.info("Shutting down digit-law API")


app = FastAPI(
    title="Benford Digit-Law API",
    description="Significant-digit distributions via the mod 1 map",
    version="0.1.0",
    lifespan=lifespan,
)


def cors_origins(raw: str | None = None) -> list[str]:
    """Allowed CORS origins from a comma-separated list.

    Args:
        raw: Origin list; defaults to BENFORD_CORS_ORIGINS.

    Returns:
        Non-empty origins in the order given.
    """
    if raw is None:
        load_dotenv(dotenv_path=env_path)
        raw = os.getenv("BENFORD_CORS_ORIGINS", "")
    return [origin.strip() for origin in raw.split(",") if origin.strip()]


app.add_middleware(
    CORSMiddleware,
    allow_origins=cors_origins(),
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(digits.router)
app.include_router(construct.router)
app.include_router(analysis.router)


@app.get("/")
async def root() -> dict[str, str]:
    """Root endpoint.

    Returns:
        Service name and docs location.
    """
    return {
        "message": "Benford Digit-Law API",
        "docs": "/docs",
        "version": "0.1.0",
    }


@app.get("/health")
async def health_check() -> dict[str, str]:
    """Health check endpoint."""
    return {"status": "healthy"}

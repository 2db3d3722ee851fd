"""API routers for the digit-law service."""

"""Tests for the digit-law API."""

"""Intensity measures and the expectation morphism."""

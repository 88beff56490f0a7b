"""Sampler-based point processes and their constructors."""

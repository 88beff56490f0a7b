"""Shared value types and plumbing: spaces, bags, seeds, errors, config and check state."""

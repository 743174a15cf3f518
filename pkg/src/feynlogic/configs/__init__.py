"""Bundled experiment descriptions."""

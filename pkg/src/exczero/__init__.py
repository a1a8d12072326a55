"""Exceptional-zero toolkit for big Heegner points at a split multiplicative prime."""

__version__ = "0.1.0"

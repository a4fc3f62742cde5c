"""Triangle presentations on finite projective planes."""

__version__ = "0.1.0"

"""Mixed verbal wreath products of Lie algebra representations, truncated and exact."""

__version__ = "0.1.0"

"""Gap-at-zero analysis of integral lattices under polyhedral semi-norms."""

__version__ = "0.1.0"

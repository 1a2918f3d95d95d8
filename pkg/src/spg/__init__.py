"""spg: exact tools for self-projecting point configurations and matroids."""

__version__ = "0.1.0"

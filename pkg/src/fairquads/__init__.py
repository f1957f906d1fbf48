"""Two-partite Turan problems on quadruples: constructions, checks and exact search."""
__version__ = "0.1.0"

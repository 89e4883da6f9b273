"""Exact braid-closure invariants: Alexander-Conway function, colored Jones
polynomial and the U(1)-reducible-connection series, with cross-checks."""

__version__ = "0.1.0"

"""Rees algebras of almost complete intersections: equations and invariants."""

__version__ = "0.1.0"

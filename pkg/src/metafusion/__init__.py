"""Exhaustive checks on metacyclic 2-groups, their fusion and 2-block invariants."""

__version__ = "0.1.0"

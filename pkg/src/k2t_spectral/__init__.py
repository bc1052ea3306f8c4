"""Spectral extremal graphs without K_{2,t} minors: constructions, exact and
numeric spectral radii, minor testing, small-scale search and audits."""

from .graph import Graph, parse_graph6, write_graph6

__all__ = ["Graph", "parse_graph6", "write_graph6"]

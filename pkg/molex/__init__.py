"""Molecular index explorer: degree-based topological indices of molecular graphs and their extremal bounds."""

__version__ = "0.1.0"

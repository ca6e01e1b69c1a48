"""Genus of 1-dof linkage configuration curves via their tropicalization."""

__version__ = "0.1.0"

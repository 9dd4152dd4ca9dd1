"""Collusive relations: quadrangular checks, protection, balance, modal logic and proof search."""

__version__ = "0.1.0"

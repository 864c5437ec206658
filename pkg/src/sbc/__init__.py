"""Skew braces of Heisenberg type: exact classification, oracle, and reports."""

__version__ = "0.1.0"

"""Mahonian statistics over pattern-avoiding permutations"""

__version__ = "1.0.0"

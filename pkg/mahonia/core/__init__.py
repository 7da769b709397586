"""Combinatorial core: permutations, patterns, statistics, paths and series"""

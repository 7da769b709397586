"""Literal parsers and output renderers"""

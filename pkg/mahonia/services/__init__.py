"""Verification and bijection services"""

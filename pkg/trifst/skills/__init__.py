"""
Skills package for trifst
"""

__all__ = []

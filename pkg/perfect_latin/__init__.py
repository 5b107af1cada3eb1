"""
perfect_latin - construction, extension, search and verification of perfect Latin rectangles.
"""

__version__ = "0.1.0"

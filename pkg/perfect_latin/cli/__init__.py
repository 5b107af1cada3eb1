"""
Command line interface for perfect_latin.
"""

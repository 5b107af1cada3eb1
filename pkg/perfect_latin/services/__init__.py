"""
Services package for perfect_latin.
One service per concern, each exported as a module-level singleton.
"""

from .extension_service import extension_service
from .factorization_service import factorization_service
from .generator_service import generator_service
from .perfection_service import perfection_service
from .rectangle_service import rectangle_service
from .search_service import search_service
from .theta_service import theta_service

__all__ = [
    "extension_service",
    "factorization_service",
    "generator_service",
    "perfection_service",
    "rectangle_service",
    "search_service",
    "theta_service",
]

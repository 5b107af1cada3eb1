"""
Registry Service
Bookkeeping for orders known to admit a perfect Latin square: 1, 2, every prime
(cyclic squares), and any square supplied as <order>.lrect in the registry directory.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..core.config import settings
from ..core.exceptions import LrectParseError, NotPerfectError, RegistryError
from ..models.rectangle import LatinRectangle
from .generator_service import generator_service
from .lrect_codec import read_lrect
from .perfection_service import perfection_service

logger = logging.getLogger(__name__)


class RegistryService:
    """Known perfect squares, cyclic or loaded from a directory"""

    def __init__(self, directory: Optional[Union[str, Path]] = None):
        self.directory = Path(directory) if directory else None
        self._squares: Dict[int, LatinRectangle] = {}
        self._loaded = False

    def _load(self) -> None:
        if self._loaded:
            return
        self._loaded = True
        if self.directory is None:
            return
        if not self.directory.is_dir():
            raise RegistryError(f"Registry directory {self.directory} does not exist")
        for path in sorted(self.directory.glob("*.lrect")):
            if not path.stem.isdigit():
                logger.warning(f"Skipping registry file with non-numeric name: {path.name}")
                continue
            order = int(path.stem)
            try:
                square = read_lrect(path)
            except LrectParseError as e:
                raise RegistryError(f"{path.name}: {e}") from e
            if square.shape != (order, order):
                raise RegistryError(
                    f"{path.name}: expected a square of order {order}, got {square.rows}x{square.cols}"
                )
            self._add(square, source=path.name)

    def _add(self, square: LatinRectangle, source: str) -> None:
        try:
            perfection_service.require_perfect(square, name=source)
        except NotPerfectError as e:
            raise RegistryError(str(e)) from e
        self._squares[square.rows] = square
        logger.info(f"Registered perfect square of order {square.rows} from {source}")

    def register(self, square: LatinRectangle) -> None:
        """Add a verified perfect square discovered at runtime"""
        if not square.is_square:
            raise RegistryError(f"Only squares can be registered, got {square.rows}x{square.cols}")
        self._load()
        self._add(square, source="runtime")

    def perfect_square(self, order: int) -> Optional[LatinRectangle]:
        """A perfect square of the given order, or None when none is known"""
        if order < 1:
            return None
        if order <= 2 or generator_service.is_prime(order):
            return generator_service.cyclic(order)
        self._load()
        return self._squares.get(order)

    def is_known_member(self, order: int) -> bool:
        return self.perfect_square(order) is not None

    def known_orders(self, limit: int) -> List[int]:
        self._load()
        orders = {k for k in range(1, limit + 1) if k <= 2 or generator_service.is_prime(k)}
        orders.update(k for k in self._squares if k <= limit)
        return sorted(orders)


_registry: Optional[RegistryService] = None


def get_registry() -> RegistryService:
    """Process-wide registry bound to settings.registry_dir"""
    global _registry
    if _registry is None:
        _registry = RegistryService(settings.registry_dir)
    return _registry


def set_registry(registry: Optional[RegistryService]) -> None:
    """Replace the process-wide registry; None rebuilds it from settings on next use"""
    global _registry
    _registry = registry

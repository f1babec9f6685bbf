"""Decision procedures, one per constraint language."""

from __future__ import annotations

from ..errors import LanguageMismatch
from .base import Backend
from .difference import DiffBackend, DiffConjunction, diff_model, diff_sat
from .ecl import EclBackend, ecl_sat
from .geometry import Polygon, rcc8_relation
from .pcl import PclBackend, RelSet, TclBackend, pcl_model, pcl_sat
from .rcc8 import Rcc8Network, rcc8_path_consistency
from .rcl import RclBackend, rcl_lower

_BACKENDS: dict[str, Backend] = {
    "ecl": EclBackend(),
    "dipcl": DiffBackend(integer=True),
    "depcl": DiffBackend(integer=False),
    "rcl": RclBackend(),
    "pcl": PclBackend(),
    "tcl": TclBackend(),
}


def get_backend(lang: str) -> Backend:
    try:
        return _BACKENDS[lang]
    except KeyError:
        raise LanguageMismatch(f"unknown constraint language {lang!r}") from None


__all__ = [
    "Backend", "DiffConjunction", "Polygon", "Rcc8Network", "RelSet", "diff_model",
    "diff_sat", "ecl_sat", "get_backend", "pcl_model", "pcl_sat", "rcc8_path_consistency",
    "rcc8_relation", "rcl_lower",
]

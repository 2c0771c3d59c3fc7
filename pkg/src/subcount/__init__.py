"""Counting, approximating and deciding small induced subgraph properties."""

from __future__ import annotations

__version__ = "0.1.0"

from .graph import Colouring, Graph, LabelledGraph  # noqa: E402
from .properties import PropertyFamily, get_property  # noqa: E402

__all__ = ["Colouring", "Graph", "LabelledGraph", "PropertyFamily", "get_property", "__version__"]

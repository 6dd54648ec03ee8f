"""Directed paths on finite pre-cubical sets.

Rationals are passed as :class:`fractions.Fraction` (ints and ``"p/q"``
strings are accepted as input). Cubes are addressed by their string ids.
"""

from ._hdapaths import *  # noqa: F401,F403
from ._hdapaths import DomainError, Error, FormatError

__all__ = [name for name in dir() if not name.startswith("_")]

"""Thermal decay constant and weak-value dwell time of a driven two-level system."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

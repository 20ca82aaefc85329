"""Exchangeable sequences of finite-dimensional quantum states.

Thin re-export of the compiled ``_core`` extension.
"""

from ._core import *  # noqa: F401,F403
from ._core import channels, classical, fixtures  # noqa: F401

__version__ = "0.1.0"

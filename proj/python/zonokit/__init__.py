"""Zonotope set-operation and reachability toolkit."""

from ._zonokit import *  # noqa: F401,F403
from ._zonokit import __doc__  # noqa: F401

__version__ = "0.1.0"

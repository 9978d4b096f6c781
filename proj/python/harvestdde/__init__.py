"""Delay differential equation toolkit for harvested population models."""

from ._harvestdde import *  # noqa: F401,F403
from ._harvestdde import __doc__  # noqa: F401

__version__ = "0.1.0"

"""Steady-state Gaussian correlations of a squeezed three-mode optomechanical system."""

from ._sqom import *  # noqa: F401,F403
from ._sqom import __doc__  # noqa: F401

__version__ = "0.1.0"

"""Embedded quantum simulation of two-qubit entanglement dynamics."""

from ._eqsim import *  # noqa: F401,F403
from ._eqsim import ConfigError, DimensionError, InvariantError  # noqa: F401

__version__ = "0.1.0"

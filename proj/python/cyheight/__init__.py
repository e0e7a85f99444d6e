"""Formal group heights of Fermat and Kummer Calabi-Yau varieties."""

from ._cyheight import *  # noqa: F401,F403
from ._cyheight import BudgetExceeded, InternalError, PrecisionExhausted  # noqa: F401

__version__ = "0.1.0"

"""Projection lattices of finite direct sums of matrix algebras.

Elements are passed as lists of square complex numpy arrays, one per block.
"""

from ._core import *  # noqa: F401,F403
from ._core import ProjlatError, Slot, Tolerances  # noqa: F401

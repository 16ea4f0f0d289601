"""Engine, planner and exact search for the chips/dominoes survival game."""

from ._chipgame import *  # noqa: F401,F403
from ._chipgame import ChipGameError, Exchange, PieceSet  # noqa: F401

__version__ = "0.1.0"

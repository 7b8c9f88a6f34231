"""Fair spatial hot spot selection: pareto-efficient, diverse k-subsets of a ranked hot spot list."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401

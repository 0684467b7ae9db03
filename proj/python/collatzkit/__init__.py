"""collatzkit: exact Collatz structure laws (C++ core with pybind11 bindings)."""

from _collatzkit import *  # noqa: F401,F403
from _collatzkit import __version__  # noqa: F401

"""Numerical experiments on log zeta, prime Dirichlet sums, the total
disorder process, and CUE counting statistics."""

try:
    from ._disorderlab import *  # noqa: F401,F403
    from ._disorderlab import __version__  # noqa: F401
except ImportError:  # extension built out-of-package (plain CMake builds)
    from _disorderlab import *  # noqa: F401,F403
    from _disorderlab import __version__  # noqa: F401

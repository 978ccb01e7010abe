"""Multi-qubit nonclassicality toolkit.

Pseudoprojections and pseudoprobability schemes, Bell-type inequality
builders with exact enumerated classical bounds, entanglement witnesses
on the doublet geometry, nonnegative pseudoprojection expansions of
Hermitian operators, and white-noise detection-threshold scans.
"""

try:
    from ._pseudoproj import *  # noqa: F401,F403
except ImportError:  # in-tree builds place the extension beside the package
    from _pseudoproj import *  # noqa: F401,F403

__version__ = "0.1.0"

"""Exact symbolic engine for the quantum group of type G2.

Subpackages build on each other roughly in this order: scalars (exact
arithmetic), rootdata (root system and torus points), uqg (lowering
subalgebra normal forms), repmin (the 7-dimensional representation), verma
(module slices), shapovalov (singular vectors), qoperator (R-matrix and
spectra), decomposer (tensor-decomposition verdicts), cli.
"""

from .config import Config

__all__ = ["Config"]
__version__ = "0.1.0"

"""zpreal: zero-pole realizations of rational matrix functions.

Builds rational k-by-k matrix functions with simple poles, rank-one
residues, and identity value at infinity from their zero-pole data,
evaluates them through coupling-matrix realizations, synthesizes them
from one-sided data, and splits them across circular contours.
"""

from .errors import ZprealError

__version__ = "0.1.0"

__all__ = ["ZprealError", "__version__"]

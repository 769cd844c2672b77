"""Exact rational arithmetic for compact subsets of the unit interval.

Covers are finite unions of closed rational intervals with resolution
certificates; maps are affine, piecewise-affine, or registered parametric
weak contractions; attractors come with exact geometric error bounds.  On
top of that sit the decimal-Cantor addressing scheme, distortion maps and
the inductive section construction, reductions of grid sets to compact sets,
verification suites, an HTTP service, and a CLI client.
"""

from .intervals import CompactCover, RationalInterval, hausdorff_distance, union
from .maps import AffineMap, IfsSystem, ParametricMap, PiecewiseAffineMap

__version__ = "0.1.0"

__all__ = [
    "CompactCover",
    "RationalInterval",
    "hausdorff_distance",
    "union",
    "AffineMap",
    "PiecewiseAffineMap",
    "ParametricMap",
    "IfsSystem",
    "__version__",
]

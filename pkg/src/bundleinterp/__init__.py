"""Exact interpolation calculus for vector bundles on rational curves."""
from .p1bundles import SplittingType, decide_interpolation
from .tableaux import Partition, dominates, transpose

__all__ = ["Partition", "SplittingType", "decide_interpolation", "dominates", "transpose"]
__version__ = "0.1.0"

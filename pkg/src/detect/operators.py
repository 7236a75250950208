"""
Similarity and Dominance Operators
==================================

Concrete readings of "similar" (~), "dissimilar" and "much less than" (<<):

- scalars are similar when their relative difference, with a unit floor,
  stays within eps;
- series are similar when their unit-normalized shapes lie within an L1
  distance delta (all-zero series normalize to uniform);
- y dominates x when y >= kappa * x and y - x >= floor.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from utils.exceptions import LengthMismatch


@dataclass(frozen=True)
class Similarity:
    holds: bool
    score: float

    def __bool__(self):
        return self.holds


def scalar_similar(x: float, y: float, eps: float) -> Similarity:
    if x < 0 or y < 0:
        raise ValueError("scalar_similar expects non-negative values")
    score = abs(x - y) / max(x, y, 1.0)
    return Similarity(score <= eps, float(score))


def normalize(series: Sequence[float]) -> np.ndarray:
    """Unit-sum shape of a non-negative series; all-zero becomes uniform"""
    values = np.asarray(series, dtype=float)
    total = values.sum()
    if total <= 0:
        return np.full(len(values), 1.0 / len(values))
    return values / total


def l1_distance(p: Sequence[float], q: Sequence[float]) -> float:
    if len(p) != len(q):
        raise LengthMismatch(f"series lengths differ: {len(p)} != {len(q)}")
    if len(p) == 0:
        raise LengthMismatch("series are empty")
    return float(np.abs(normalize(p) - normalize(q)).sum())


def dist_similar(
    p: Sequence[float], q: Sequence[float], delta: float, min_length: Optional[int] = None
) -> Similarity:
    if min_length is not None and min(len(p), len(q)) < min_length:
        raise LengthMismatch(f"series shorter than {min_length} windows")
    distance = l1_distance(p, q)
    return Similarity(distance <= delta, distance)


def dominates(x: float, y: float, kappa: float, floor: float) -> bool:
    if x < 0 or y < 0:
        raise ValueError("dominates expects non-negative values")
    return y >= kappa * x and y - x >= floor

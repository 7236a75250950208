"""
Lazy-instance detection.

Productivity is requests served per unit of CPU load. The sorted values are
split into two groups by the exact minimum within-group sum of squares; the
lower group is flagged when the gap between the groups exceeds the threshold
multiple of the population spread. An optional minimum gap relative to the
upper group can be demanded on top.
"""

from dataclasses import dataclass
from typing import Dict, Mapping, Sequence, Tuple, Union

import numpy as np

from utils.exceptions import TooFewInstances

TINY = 1e-9


@dataclass(frozen=True)
class LazyClusterResult:
    flagged: Tuple
    separation: float
    gap: float
    split: int
    lower: Tuple[float, ...]
    upper: Tuple[float, ...]

    def to_dict(self) -> Dict:
        return {
            "flagged": list(self.flagged),
            "separation": self.separation,
            "gap": self.gap,
            "lower": list(self.lower),
            "upper": list(self.upper),
        }


def instance_productivity(instance_windows, tiny: float = TINY) -> Dict[str, float]:
    """Sum of requests over sum of CPU load for each instance's windows"""
    requests: Dict[str, float] = {}
    load: Dict[str, float] = {}
    for iw in instance_windows:
        requests[iw.instance_id] = requests.get(iw.instance_id, 0.0) + iw.requests_served
        load[iw.instance_id] = load.get(iw.instance_id, 0.0) + iw.cpu_load
    return {iid: requests[iid] / max(load[iid], tiny) for iid in sorted(requests)}


def best_split(values: Sequence[float]) -> Tuple[int, float]:
    """Split point of sorted values minimizing the within-group sum of squares.

    Returns (i, sse) meaning groups values[:i] and values[i:].
    """
    data = np.asarray(values, dtype=float)
    best_i, best_sse = 1, np.inf
    for i in range(1, len(data)):
        left, right = data[:i], data[i:]
        sse = ((left - left.mean()) ** 2).sum() + ((right - right.mean()) ** 2).sum()
        if sse < best_sse - 1e-12:
            best_i, best_sse = i, sse
    return best_i, float(best_sse)


def cluster_productivity(
    productivities: Union[Mapping[str, float], Sequence[float]],
    threshold: float = 1.0,
    min_relative_gap: float = 0.0,
) -> LazyClusterResult:
    """Flag the low-productivity group, or nothing.

    Accepts a mapping of instance id to productivity, or a plain sequence (ids
    are then the positions).
    """
    if isinstance(productivities, Mapping):
        items = list(productivities.items())
    else:
        items = list(enumerate(productivities))
    if len(items) < 2:
        raise TooFewInstances(f"need at least 2 instances, got {len(items)}")

    items.sort(key=lambda item: (item[1], str(item[0])))
    values = [float(v) for _, v in items]
    std = float(np.std(values))
    if std <= 0.0:
        return LazyClusterResult((), 0.0, 0.0, 0, (), tuple(values))

    split, _ = best_split(values)
    lower, upper = values[:split], values[split:]
    gap = upper[0] - lower[-1]
    separation = gap / std
    flag = separation > threshold and gap >= min_relative_gap * upper[0]
    flagged = tuple(key for key, _ in items[:split]) if flag else ()
    return LazyClusterResult(flagged, separation, gap, split, tuple(lower), tuple(upper))

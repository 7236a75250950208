"""
State Summaries
===============

The "state A / state B" object: scalar totals and per-window series of nA,
nT, nC and tD for one capability over one window interval.
"""

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from utils.exceptions import IntervalOutOfRange, UnknownCapability


@dataclass(frozen=True)
class StateSummary:
    capability_id: str
    interval: Tuple[int, int]
    nA_total: float
    nT_total: float
    nC_total: float
    tD_peak: float
    nA_dist: Tuple[float, ...]
    nT_dist: Tuple[float, ...]
    nC_dist: Tuple[float, ...]
    tD_dist: Tuple[float, ...]

    @property
    def length(self) -> int:
        return len(self.nA_dist)

    @property
    def tD_sum(self) -> float:
        return float(sum(self.tD_dist))

    def tD_total(self, mode: str = "peak") -> float:
        return self.tD_peak if mode == "peak" else self.tD_sum

    def to_dict(self) -> Dict:
        return {
            "capability": self.capability_id,
            "interval": list(self.interval),
            "nA_total": self.nA_total,
            "nT_total": self.nT_total,
            "nC_total": self.nC_total,
            "tD_peak": self.tD_peak,
        }


def from_series(
    capability_id: str,
    interval: Tuple[int, int],
    nA: Sequence[float],
    nT: Sequence[float],
    nC: Sequence[float],
    tD: Sequence[float],
) -> StateSummary:
    """Build a summary whose totals are derived from its series"""
    return StateSummary(
        capability_id=capability_id,
        interval=(int(interval[0]), int(interval[1])),
        nA_total=float(sum(nA)),
        nT_total=float(sum(nT)),
        nC_total=float(sum(nC)),
        tD_peak=float(max(tD)) if len(tD) else 0.0,
        nA_dist=tuple(float(v) for v in nA),
        nT_dist=tuple(float(v) for v in nT),
        nC_dist=tuple(float(v) for v in nC),
        tD_dist=tuple(float(v) for v in tD),
    )


def summarize(
    trace, capability: str, interval: Tuple[int, int], min_windows: int = 5
) -> StateSummary:
    """Summarize windows [start, end) of one capability"""
    if capability not in trace.capabilities:
        raise UnknownCapability(capability)
    start, end = interval
    if start < 0 or end > trace.n_windows or start >= end:
        raise IntervalOutOfRange(
            f"interval [{start}, {end}) is outside the trace's {trace.n_windows} windows"
        )
    if end - start < min_windows:
        raise IntervalOutOfRange(
            f"interval [{start}, {end}) is shorter than {min_windows} windows"
        )
    by_index = {w.window_index: w for w in trace.windows_for(capability)}
    chosen = [by_index[k] for k in range(start, end)]
    return from_series(
        capability,
        (start, end),
        nA=[w.nA for w in chosen],
        nT=[w.nT for w in chosen],
        nC=[w.nC for w in chosen],
        tD=[w.tD for w in chosen],
    )

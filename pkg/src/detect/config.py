"""
Detector thresholds.

The numeric defaults are calibration choices checked against the bundled
scenario corpus, not values taken from any formal definition.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

DEFAULT_FLOORS = {"nC": 10.0, "tD": 2.0}


@dataclass(frozen=True)
class DetectorConfig:
    eps_scalar: float = 0.25
    delta_dist: float = 0.30
    kappa: float = 2.0
    floor_abs: Dict[str, float] = field(default_factory=lambda: dict(DEFAULT_FLOORS))
    min_windows: int = 5
    # [start, end) window ranges to evaluate; empty means the whole horizon
    intervals: Tuple[Tuple[int, int], ...] = ()
    td_total: str = "peak"
    combine: str = "and"
    lazy_threshold: float = 1.0
    lazy_min_relative_gap: float = 0.0
    transitive_dependents: bool = False

    def __post_init__(self):
        floors = dict(DEFAULT_FLOORS)
        floors.update(self.floor_abs or {})
        object.__setattr__(self, "floor_abs", floors)
        object.__setattr__(
            self, "intervals", tuple((int(a), int(b)) for a, b in self.intervals)
        )
        if self.eps_scalar <= 0:
            raise ValueError("eps_scalar must be > 0")
        if not 0.0 < self.delta_dist <= 2.0:
            raise ValueError("delta_dist must lie in (0, 2]")
        if self.kappa <= 1.0:
            raise ValueError("kappa must be > 1")
        if self.min_windows < 2:
            raise ValueError("min_windows must be >= 2")
        if self.td_total not in ("peak", "sum"):
            raise ValueError("td_total must be 'peak' or 'sum'")
        if self.combine not in ("and", "or"):
            raise ValueError("combine must be 'and' or 'or'")
        if any(v < 0 for v in floors.values()):
            raise ValueError("floor_abs values must be >= 0")
        for start, end in self.intervals:
            if end - start < self.min_windows or start < 0:
                raise ValueError(
                    f"interval [{start}, {end}) is shorter than min_windows={self.min_windows}"
                )

    def floor(self, metric: str) -> float:
        return self.floor_abs.get(metric, 0.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "eps_scalar": self.eps_scalar,
            "delta_dist": self.delta_dist,
            "kappa": self.kappa,
            "floor_abs": dict(self.floor_abs),
            "min_windows": self.min_windows,
            "intervals": [list(iv) for iv in self.intervals],
            "td_total": self.td_total,
            "combine": self.combine,
            "lazy_threshold": self.lazy_threshold,
            "lazy_min_relative_gap": self.lazy_min_relative_gap,
            "transitive_dependents": self.transitive_dependents,
        }

    @classmethod
    def from_dict(cls, data: Optional[Dict[str, Any]]) -> "DetectorConfig":
        data = dict(data or {})
        if "intervals" in data:
            data["intervals"] = tuple(tuple(iv) for iv in data["intervals"] or ())
        return cls(**data)

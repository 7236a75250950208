"""
Mission Timeline
================

Expands rate-based mission generators into concrete MissionActions. Fixed
actions from the scenario pass through unchanged.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from model.entities import MissionAction, Position


@dataclass(frozen=True)
class MissionGenerator:
    """Arrival process with a fixed expected number of actions per window"""

    capability: str
    rate: float
    client_pool: int
    request_count: int
    work_per_request: float
    # client origins are drawn inside the disk (x, y, r)
    area: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    start: float = 0.0
    end: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "area", tuple(float(v) for v in self.area))
        if self.rate < 0:
            raise ValueError(f"mission generator for {self.capability}: rate must be >= 0")
        if self.client_pool < 1:
            raise ValueError(
                f"mission generator for {self.capability}: client_pool must be >= 1"
            )
        if self.request_count < 1 or self.work_per_request <= 0:
            raise ValueError(
                f"mission generator for {self.capability}: "
                "request_count must be >= 1 and work_per_request > 0"
            )
        if len(self.area) != 3 or self.area[2] < 0:
            raise ValueError(
                f"mission generator for {self.capability}: area must be [x, y, r]"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "capability": self.capability,
            "rate": self.rate,
            "client_pool": self.client_pool,
            "request_count": self.request_count,
            "work_per_request": self.work_per_request,
            "area": list(self.area),
            "start": self.start,
            "end": self.end,
        }


def client_origins(generator: MissionGenerator, rng: np.random.Generator) -> List[Position]:
    x, y, r = generator.area
    origins: List[Position] = []
    for _ in range(generator.client_pool):
        angle = rng.uniform(0.0, 2.0 * math.pi)
        radius = r * math.sqrt(rng.random())
        origins.append((x + radius * math.cos(angle), y + radius * math.sin(angle)))
    return origins


def expand_generator(
    index: int,
    generator: MissionGenerator,
    duration: float,
    window_length: float,
    rng: np.random.Generator,
) -> List[MissionAction]:
    origins = client_origins(generator, rng)
    start = max(0.0, generator.start)
    end = min(duration, generator.end if generator.end is not None else duration)
    whole = int(math.floor(generator.rate))
    frac = generator.rate - whole

    actions: List[MissionAction] = []
    n_windows = int(round(duration / window_length))
    for k in range(n_windows):
        lo = max(k * window_length, start)
        hi = min((k + 1) * window_length, end)
        if hi <= lo:
            continue
        count = whole + (1 if frac > 0 and rng.random() < frac else 0)
        if count == 0:
            continue
        times = np.sort(rng.uniform(lo, hi, size=count))
        clients = rng.integers(0, generator.client_pool, size=count)
        for t, c in zip(times, clients):
            actions.append(
                MissionAction(
                    action_id=f"g{index}-{len(actions):05d}",
                    time=float(t),
                    required_capability=generator.capability,
                    client_id=f"{generator.capability}-client-{int(c):03d}",
                    request_count=generator.request_count,
                    work_per_request=generator.work_per_request,
                    origin=origins[int(c)],
                )
            )
    return actions


def expand_mission(
    generators: Sequence[MissionGenerator],
    fixed_actions: Sequence[MissionAction],
    duration: float,
    window_length: float,
    rng: np.random.Generator,
) -> List[MissionAction]:
    """Every mission action of the run, ordered by (time, action_id)"""
    actions = list(fixed_actions)
    for index, generator in enumerate(generators):
        actions.extend(expand_generator(index, generator, duration, window_length, rng))
    return sorted(actions, key=lambda a: (a.time, a.action_id))

"""
Attack Specifications
=====================

Scripted attack intervals. Each attack has a kind, a target (one capability
or a set of nodes), a half-open interval [t_start, t_end) and kind-specific
intensity parameters.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple


class AttackKind(str, Enum):
    WEDOS = "WEdos"
    IEDOS = "IEdos"
    DENIAL_OF_SLEEP = "DenialOfSleep"
    FLASH_CROWD = "FlashCrowd"
    DECOY_FIELD = "DecoyField"
    SUPPLY_CHAIN_TAINT = "SupplyChainTaint"


# kinds whose effect is a denial of sustainability; FlashCrowd is a confounder
TDOS_CAPABLE = frozenset(
    {
        AttackKind.WEDOS,
        AttackKind.IEDOS,
        AttackKind.DENIAL_OF_SLEEP,
        AttackKind.DECOY_FIELD,
        AttackKind.SUPPLY_CHAIN_TAINT,
    }
)

# kinds that act on one capability's demand or images, never on bare nodes
CAPABILITY_ONLY = frozenset(
    {AttackKind.FLASH_CROWD, AttackKind.DECOY_FIELD, AttackKind.SUPPLY_CHAIN_TAINT}
)

DEFAULT_INTENSITY: Dict[AttackKind, Dict[str, Any]] = {
    AttackKind.WEDOS: {"multiplier": 2.0},
    AttackKind.IEDOS: {"inflation": 0.85},
    AttackKind.DENIAL_OF_SLEEP: {"factor": 3.0},
    AttackKind.FLASH_CROWD: {"surge": 5.0},
    AttackKind.DECOY_FIELD: {
        "decoys": 0,
        "rate": 0.05,
        "work_per_request": 0.01,
        "area": [0.0, 0.0, 10.0],
    },
    AttackKind.SUPPLY_CHAIN_TAINT: {},
}

# the value at which each kind leaves a run untouched
NEUTRAL = {
    AttackKind.WEDOS: ("multiplier", 1.0),
    AttackKind.IEDOS: ("inflation", 0.0),
    AttackKind.DENIAL_OF_SLEEP: ("factor", 1.0),
    AttackKind.FLASH_CROWD: ("surge", 1.0),
    AttackKind.DECOY_FIELD: ("decoys", 0),
}


@dataclass(frozen=True)
class AttackSpec:
    kind: AttackKind
    t_start: float
    t_end: float
    target_capability: Optional[str] = None
    target_nodes: Tuple[str, ...] = ()
    intensity: Dict[str, Any] = field(default_factory=dict)
    # only bites while the target capability is in Adaptation
    requires_exposure: bool = False

    def __post_init__(self):
        kind = AttackKind(self.kind)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "target_nodes", tuple(self.target_nodes))
        merged = dict(DEFAULT_INTENSITY[kind])
        merged.update(self.intensity or {})
        unknown = sorted(set(merged) - set(DEFAULT_INTENSITY[kind]))
        if unknown:
            raise ValueError(f"{kind.value}: unknown intensity key(s) {', '.join(unknown)}")
        object.__setattr__(self, "intensity", merged)

        if not 0.0 <= self.t_start < self.t_end:
            raise ValueError(f"{kind.value}: attack needs 0 <= t_start < t_end")
        if self.target_capability is None and not self.target_nodes:
            raise ValueError(f"{kind.value}: attack needs a capability or node target")
        if kind in CAPABILITY_ONLY:
            if self.target_capability is None:
                raise ValueError(f"{kind.value}: attack must target a capability")
        self._check_intensity()

    def _check_intensity(self):
        kind, p = self.kind, self.intensity
        floors = {
            AttackKind.WEDOS: ("multiplier", 1.0),
            AttackKind.DENIAL_OF_SLEEP: ("factor", 1.0),
            AttackKind.FLASH_CROWD: ("surge", 1.0),
            AttackKind.IEDOS: ("inflation", 0.0),
        }
        if kind in floors:
            key, low = floors[kind]
            if float(p[key]) < low:
                raise ValueError(f"{kind.value}: {key} must be >= {low}")
        if kind is AttackKind.DECOY_FIELD:
            if int(p["decoys"]) < 0 or float(p["rate"]) <= 0:
                raise ValueError("DecoyField: decoys must be >= 0 and rate > 0")
            if float(p["work_per_request"]) <= 0:
                raise ValueError("DecoyField: work_per_request must be > 0")
            if len(p["area"]) != 3 or float(p["area"][2]) < 0:
                raise ValueError("DecoyField: area must be [x, y, radius]")

    def param(self, key: str) -> Any:
        return self.intensity[key]

    @property
    def is_inert(self) -> bool:
        """True when the intensity is neutral and the attack changes nothing"""
        if self.kind not in NEUTRAL:
            return False
        key, neutral = NEUTRAL[self.kind]
        return float(self.intensity[key]) == neutral

    @property
    def tdos_capable(self) -> bool:
        return self.kind in TDOS_CAPABLE

    def active_at(self, t: float) -> bool:
        return self.t_start <= t < self.t_end

    def overlap(self, start: float, end: float) -> float:
        """Seconds of [start, end) inside the attack interval"""
        return max(0.0, min(end, self.t_end) - max(start, self.t_start))

    def targets(self, capability: str, host_nodes=()) -> bool:
        if self.target_capability is not None:
            return self.target_capability == capability
        return any(node in self.target_nodes for node in host_nodes)

    def to_dict(self) -> Dict[str, Any]:
        target: Dict[str, Any] = {}
        if self.target_capability is not None:
            target["capability"] = self.target_capability
        if self.target_nodes:
            target["nodes"] = list(self.target_nodes)
        return {
            "kind": self.kind.value,
            "target": target,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "intensity": {
                key: list(value) if isinstance(value, tuple) else value
                for key, value in self.intensity.items()
            },
            "requires_exposure": self.requires_exposure,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "AttackSpec":
        target = data.get("target") or {}
        return cls(
            kind=AttackKind(data["kind"]),
            t_start=float(data["t_start"]),
            t_end=float(data["t_end"]),
            target_capability=target.get("capability"),
            target_nodes=tuple(target.get("nodes") or ()),
            intensity=dict(data.get("intensity") or {}),
            requires_exposure=bool(data.get("requires_exposure", False)),
        )

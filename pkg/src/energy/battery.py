"""
Battery and Power Model
=======================

Affine power model coupling instance idle time, CPU work, link distance and
instantiation events to energy, plus the all-or-nothing recharge policy of
battery-fed tactical nodes.
"""

from dataclasses import dataclass, replace
from typing import Dict, Iterable, Tuple


@dataclass(frozen=True)
class BatteryState:
    capacity: float
    soc: float
    recharge_threshold: float = 0.2
    recharge_duration: float = 30.0
    recharging: bool = False
    recharge_count: int = 0

    def __post_init__(self):
        if self.capacity <= 0:
            raise ValueError("battery capacity must be > 0")
        if not 0.0 <= self.soc <= self.capacity:
            raise ValueError("battery soc must lie in [0, capacity]")
        if not 0.0 < self.recharge_threshold < 1.0:
            raise ValueError("recharge_threshold must lie in (0, 1)")
        if self.recharge_duration < 0:
            raise ValueError("recharge_duration must be >= 0")

    @property
    def fraction(self) -> float:
        return self.soc / self.capacity

    @property
    def depleted(self) -> bool:
        return self.soc <= 0.0


@dataclass(frozen=True)
class PowerModel:
    p_idle: float = 0.1
    alpha: float = 1.0
    beta: float = 0.01
    gamma: float = 2.0
    c_inst: float = 5.0
    # idle draw multiplier of an instance with no work in a tick; 1.0 = no duty cycling
    sleep_ratio: float = 1.0

    def __post_init__(self):
        for name in ("p_idle", "alpha", "beta", "c_inst"):
            if getattr(self, name) < 0:
                raise ValueError(f"power model coefficient {name} must be >= 0")
        if self.gamma < 1:
            raise ValueError("power model gamma must be >= 1")
        if not 0.0 < self.sleep_ratio <= 1.0:
            raise ValueError("power model sleep_ratio must lie in (0, 1]")

    def link_cost(self, link_distance: float) -> float:
        return self.beta * link_distance ** self.gamma


@dataclass(frozen=True)
class InstanceActivity:
    """What one instance did on its node during one energy tick"""

    instance_id: str
    capability_id: str
    cpu_load: float
    link_distances: Tuple[float, ...] = ()

    @property
    def busy(self) -> bool:
        return self.cpu_load > 0.0 or bool(self.link_distances)


@dataclass(frozen=True)
class EnergyDraw:
    total: float
    by_instance: Dict[str, float]
    by_capability: Dict[str, float]


def energy_tick(
    activities: Iterable[InstanceActivity],
    power: PowerModel,
    dt: float,
    spawns: int = 0,
    awake: bool = False,
) -> EnergyDraw:
    """Energy drawn by one node over a tick of length dt.

    draw = dt * (p_idle * live + alpha * sum(cpu_load))
           + beta * sum(distance ** gamma) + c_inst * spawns

    Instances without work draw p_idle * sleep_ratio unless `awake` forces
    them to stay up.
    """
    if dt <= 0:
        raise ValueError("energy tick length must be > 0")

    by_instance: Dict[str, float] = {}
    by_capability: Dict[str, float] = {}
    for act in activities:
        idle = power.p_idle if (awake or act.busy) else power.p_idle * power.sleep_ratio
        draw = dt * (idle + power.alpha * act.cpu_load)
        draw += sum(power.link_cost(d) for d in act.link_distances)
        by_instance[act.instance_id] = draw
        by_capability[act.capability_id] = by_capability.get(act.capability_id, 0.0) + draw

    total = sum(by_instance[k] for k in sorted(by_instance)) + power.c_inst * spawns
    return EnergyDraw(total=total, by_instance=by_instance, by_capability=by_capability)


def instantiation_draw(power: PowerModel, spawns: int = 1) -> float:
    return power.c_inst * spawns


def apply_draw(battery: BatteryState, draw: float) -> Tuple[BatteryState, float]:
    """Decrement the state of charge, floored at zero.

    Returns the new battery and the part of the draw that the floor cut off.
    """
    if draw <= battery.soc:
        return replace(battery, soc=battery.soc - draw), 0.0
    return replace(battery, soc=0.0), draw - battery.soc


def needs_recharge(battery: BatteryState) -> bool:
    return not battery.recharging and battery.fraction < battery.recharge_threshold


def recharge_cycle(battery: BatteryState, now: float) -> Tuple[BatteryState, float, float]:
    """Take a node offline for recharging.

    Returns the recharging battery, the RechargeStart time and the
    RechargeEnd time.
    """
    if battery.recharging:
        raise ValueError("battery is already recharging")
    if not needs_recharge(battery):
        raise ValueError("battery is above its recharge threshold")
    return replace(battery, recharging=True), now, now + battery.recharge_duration


def finish_recharge(battery: BatteryState) -> Tuple[BatteryState, float]:
    """Refill the battery; returns it with the energy restored"""
    restored = battery.capacity - battery.soc
    refilled = replace(
        battery,
        soc=battery.capacity,
        recharging=False,
        recharge_count=battery.recharge_count + 1,
    )
    return refilled, restored

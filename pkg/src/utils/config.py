"""
Scenario Configuration Management
=================================

This module provides scenario saving/loading functionality. Scenario files
are versioned YAML documents (schema in scenarios/SCHEMA.md); loading fills
every default explicitly and validates all cross-references.
"""

import copy
import hashlib
import json
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from adversary.attacks import AttackKind, AttackSpec
from detect.classifier import VerdictClass
from detect.config import DetectorConfig
from energy.battery import BatteryState, PowerModel
from energy.ir import IrSignature
from engine.mission import MissionGenerator
from model.dependency import build_dependency_graph
from model.entities import MarketplaceImage, MissionAction, TacticalNode
from model.lifecycle import LifecycleEvent, LifecycleState, next_state
from orchestrator.autoscaler import AutoscalePolicy
from orchestrator.placement import Placement
from utils.exceptions import (
    CycleError,
    IllegalTransition,
    ParseError,
    UnknownCapability,
    ValidationError,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
PERSPECTIVES = ("defender", "attacker")
BASELINE_MODES = ("reference_run", "warmup")
# attacks applied while events run; the others are expanded before the run starts
RUNTIME_ATTACKS = (AttackKind.WEDOS, AttackKind.IEDOS, AttackKind.DENIAL_OF_SLEEP)


@dataclass(frozen=True)
class CapabilitySpec:
    id: str
    depends_on: Tuple[str, ...] = ()
    bootstrap_instances: int = 1
    bootstrap_nodes: Tuple[str, ...] = ()
    onboard_at: float = 0.0


@dataclass(frozen=True)
class LifecycleStep:
    time: float
    capability: str
    event: LifecycleEvent


@dataclass(frozen=True)
class ScenarioSpec:
    """Complete declarative description of one run"""

    name: str
    duration: float
    window_length: float = 60.0
    energy_tick: float = 10.0
    seed: int = 42
    description: str = ""
    version: int = SCHEMA_VERSION
    perspective: str = "defender"
    baseline: str = "reference_run"
    warmup_windows: int = 5
    nodes: Tuple[TacticalNode, ...] = ()
    capabilities: Tuple[CapabilitySpec, ...] = ()
    lifecycle: Tuple[LifecycleStep, ...] = ()
    mission: Tuple[MissionGenerator, ...] = ()
    actions: Tuple[MissionAction, ...] = ()
    power: PowerModel = field(default_factory=PowerModel)
    ir: IrSignature = field(default_factory=IrSignature)
    policy: AutoscalePolicy = field(default_factory=AutoscalePolicy)
    images: Tuple[MarketplaceImage, ...] = ()
    primary_outages: Tuple[Tuple[str, float, float], ...] = ()
    attacks: Tuple[AttackSpec, ...] = ()
    detector: DetectorConfig = field(default_factory=DetectorConfig)
    human_impact_tags: Tuple[str, ...] = ()
    expect: Optional[str] = None

    @property
    def n_windows(self) -> int:
        return int(round(self.duration / self.window_length))

    def capability_ids(self) -> List[str]:
        return [cap.id for cap in self.capabilities]

    def without_attacks(self) -> "ScenarioSpec":
        """Reference run: the same scenario and seed with every attack removed"""
        return replace(self, attacks=())

    def with_seed(self, seed: int) -> "ScenarioSpec":
        return replace(self, seed=seed)

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "version": self.version,
            "name": self.name,
            "description": self.description,
            "duration": self.duration,
            "window_length": self.window_length,
            "energy_tick": self.energy_tick,
            "seed": self.seed,
            "perspective": self.perspective,
            "baseline": {"mode": self.baseline, "warmup_windows": self.warmup_windows},
            "nodes": [_node_to_dict(node) for node in self.nodes],
            "capabilities": [
                {
                    "id": cap.id,
                    "depends_on": list(cap.depends_on),
                    "bootstrap_instances": cap.bootstrap_instances,
                    "bootstrap_nodes": list(cap.bootstrap_nodes),
                    "onboard_at": cap.onboard_at,
                }
                for cap in self.capabilities
            ],
            "lifecycle": [
                {"time": s.time, "capability": s.capability, "event": s.event.value}
                for s in self.lifecycle
            ],
            "mission": {
                "generators": [gen.to_dict() for gen in self.mission],
                "actions": [_action_to_dict(a) for a in self.actions],
            },
            "power": {
                "p_idle": self.power.p_idle,
                "alpha": self.power.alpha,
                "beta": self.power.beta,
                "gamma": self.power.gamma,
                "c_inst": self.power.c_inst,
                "sleep_ratio": self.power.sleep_ratio,
            },
            "ir": {
                "sigma0": self.ir.sigma0,
                "sigma1": self.ir.sigma1,
                "threshold": self.ir.threshold,
            },
            "policy": self.policy.to_dict(),
            "marketplace": {
                "images": [
                    {
                        "image_id": img.image_id,
                        "capability": img.capability_id,
                        "tainted": img.tainted,
                        "provisioning_delay": img.provisioning_delay,
                        "cluster": img.cluster,
                    }
                    for img in self.images
                ],
                "primary_outages": [
                    {"capability": cap, "t_start": start, "t_end": end}
                    for cap, start, end in self.primary_outages
                ],
            },
            "attacks": [attack.to_dict() for attack in self.attacks],
            "detector": self.detector.to_dict(),
            "human_impact_tags": list(self.human_impact_tags),
            "expect": self.expect,
        }


def _node_to_dict(node: TacticalNode) -> Dict[str, Any]:
    battery = None
    if node.battery is not None:
        battery = {
            "capacity": node.battery.capacity,
            "soc": node.battery.soc,
            "recharge_threshold": node.battery.recharge_threshold,
            "recharge_duration": node.battery.recharge_duration,
        }
    return {
        "id": node.id,
        "position": list(node.position),
        "radio_range": node.radio_range,
        "is_fixed": node.is_fixed,
        "max_instances": node.max_instances,
        "battery": battery,
        "waypoints": [list(wp) for wp in node.waypoints],
    }


def _action_to_dict(action: MissionAction) -> Dict[str, Any]:
    return {
        "action_id": action.action_id,
        "time": action.time,
        "capability": action.required_capability,
        "client_id": action.client_id,
        "request_count": action.request_count,
        "work_per_request": action.work_per_request,
        "origin": list(action.origin),
    }


def get_default_config() -> Dict[str, Any]:
    """Get default scenario values"""
    return {
        "version": SCHEMA_VERSION,
        "name": "scenario",
        "description": "",
        "duration": 2400.0,
        "window_length": 60.0,
        "energy_tick": 10.0,
        "seed": 42,
        "perspective": "defender",
        "baseline": {"mode": "reference_run", "warmup_windows": 5},
        "nodes": [],
        "capabilities": [],
        "lifecycle": [],
        "mission": {"generators": [], "actions": []},
        "power": {
            "p_idle": 0.1,
            "alpha": 1.0,
            "beta": 0.01,
            "gamma": 2.0,
            "c_inst": 5.0,
            "sleep_ratio": 1.0,
        },
        "ir": {"sigma0": 1.0, "sigma1": 2.0, "threshold": None},
        "policy": AutoscalePolicy().to_dict(),
        "marketplace": {"images": [], "primary_outages": []},
        "attacks": [],
        "detector": DetectorConfig().to_dict(),
        "human_impact_tags": [],
        "expect": None,
    }


# ---------------------------------------------------------------------------
# dict -> ScenarioSpec
# ---------------------------------------------------------------------------


def _merge(
    defaults: Dict[str, Any], overrides: Dict[str, Any], path: str = ""
) -> Dict[str, Any]:
    merged = copy.deepcopy(defaults)
    for key, value in overrides.items():
        if key not in defaults:
            raise ParseError("unknown field", field=f"{path}{key}")
        if isinstance(defaults[key], dict) and key not in ("floor_abs",):
            if not isinstance(value, dict):
                raise ParseError("expected a mapping", field=f"{path}{key}")
            merged[key] = _merge(defaults[key], value, f"{path}{key}.")
        else:
            merged[key] = value
    return merged


def _get(data: Dict[str, Any], key: str, path: str, default: Any = ...) -> Any:
    if key in data and data[key] is not None:
        return data[key]
    if default is ...:
        raise ParseError("missing required field", field=f"{path}{key}")
    return default


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool):
        raise ParseError("expected a number", field=path)
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ParseError("expected a number", field=path) from None
    if not math.isfinite(number):
        raise ParseError("expected a finite number", field=path)
    return number


def _integer(value: Any, path: str) -> int:
    number = _number(value, path)
    if number != int(number):
        raise ParseError("expected an integer", field=path)
    return int(number)


def _mapping_list(value: Any, path: str) -> List[Dict[str, Any]]:
    if value is None:
        return []
    if not isinstance(value, list) or not all(isinstance(v, dict) for v in value):
        raise ParseError("expected a list of mappings", field=path)
    return value


def _mapping(value: Any, path: str) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise ParseError("expected a mapping", field=path)
    return value


def _sequence(value: Any, path: str, length: Optional[int] = None) -> List[Any]:
    """A YAML list, optionally of a fixed length; strings are not sequences here"""
    if not isinstance(value, (list, tuple)):
        raise ParseError("expected a list", field=path)
    if length is not None and len(value) != length:
        raise ParseError(f"expected a list of {length} values", field=path)
    return list(value)


def _build(path: str, factory, *args, **kwargs):
    """Run a constructor, turning its ValueError into a ValidationError"""
    try:
        return factory(*args, **kwargs)
    except (ValueError, TypeError) as e:
        raise ValidationError(str(e), field=path) from None


def _parse_node(data: Dict[str, Any], path: str) -> TacticalNode:
    node_id = str(_get(data, "id", path))
    position = _sequence(_get(data, "position", path), f"{path}position", 2)
    is_fixed = bool(data.get("is_fixed", False))

    battery = None
    battery_data = data.get("battery")
    if battery_data is not None:
        bpath = f"{path}battery."
        battery_data = _mapping(battery_data, f"{path}battery")
        capacity = _number(_get(battery_data, "capacity", bpath), f"{bpath}capacity")
        battery = _build(
            f"{path}battery",
            BatteryState,
            capacity=capacity,
            soc=_number(battery_data.get("soc", capacity), f"{bpath}soc"),
            recharge_threshold=_number(
                battery_data.get("recharge_threshold", 0.2), f"{bpath}recharge_threshold"
            ),
            recharge_duration=_number(
                battery_data.get("recharge_duration", 30.0), f"{bpath}recharge_duration"
            ),
        )
    elif not is_fixed:
        raise ValidationError("mobile nodes need a battery", field=f"{path}battery")

    wpath = f"{path}waypoints"
    waypoints = tuple(
        tuple(_number(v, wpath) for v in _sequence(wp, wpath, 3))
        for wp in _sequence(data.get("waypoints") or [], wpath)
    )

    return _build(
        path.rstrip("."),
        TacticalNode,
        id=node_id,
        position=(
            _number(position[0], f"{path}position"),
            _number(position[1], f"{path}position"),
        ),
        radio_range=_number(_get(data, "radio_range", path), f"{path}radio_range"),
        is_fixed=is_fixed,
        max_instances=_integer(data.get("max_instances", 4), f"{path}max_instances"),
        battery=battery,
        waypoints=waypoints,
    )


def _parse_capability(data: Dict[str, Any], path: str) -> CapabilitySpec:
    return CapabilitySpec(
        id=str(_get(data, "id", path)),
        depends_on=tuple(
            str(d) for d in _sequence(data.get("depends_on") or [], f"{path}depends_on")
        ),
        bootstrap_instances=_integer(
            data.get("bootstrap_instances", 1), f"{path}bootstrap_instances"
        ),
        bootstrap_nodes=tuple(
            str(n)
            for n in _sequence(data.get("bootstrap_nodes") or [], f"{path}bootstrap_nodes")
        ),
        onboard_at=_number(data.get("onboard_at", 0.0), f"{path}onboard_at"),
    )


def _parse_generator(data: Dict[str, Any], path: str) -> MissionGenerator:
    end = data.get("end")
    return _build(
        path.rstrip("."),
        MissionGenerator,
        capability=str(_get(data, "capability", path)),
        rate=_number(_get(data, "rate", path), f"{path}rate"),
        client_pool=_integer(data.get("client_pool", 1), f"{path}client_pool"),
        request_count=_integer(_get(data, "request_count", path), f"{path}request_count"),
        work_per_request=_number(
            _get(data, "work_per_request", path), f"{path}work_per_request"
        ),
        area=tuple(
            _number(v, f"{path}area")
            for v in _sequence(data.get("area") or [0.0, 0.0, 0.0], f"{path}area", 3)
        ),
        start=_number(data.get("start", 0.0), f"{path}start"),
        end=None if end is None else _number(end, f"{path}end"),
    )


def _parse_action(data: Dict[str, Any], path: str, index: int) -> MissionAction:
    origin = _sequence(data.get("origin") or [0.0, 0.0], f"{path}origin", 2)
    return _build(
        path.rstrip("."),
        MissionAction,
        action_id=str(data.get("action_id", f"fixed-{index:05d}")),
        time=_number(_get(data, "time", path), f"{path}time"),
        required_capability=str(_get(data, "capability", path)),
        client_id=str(_get(data, "client_id", path)),
        request_count=_integer(_get(data, "request_count", path), f"{path}request_count"),
        work_per_request=_number(
            _get(data, "work_per_request", path), f"{path}work_per_request"
        ),
        origin=(_number(origin[0], f"{path}origin"), _number(origin[1], f"{path}origin")),
    )


def scenario_from_dict(data: Dict[str, Any]) -> "ScenarioSpec":
    """Build and validate a ScenarioSpec from a parsed scenario document"""
    if not isinstance(data, dict):
        raise ParseError("scenario must be a mapping")
    merged = _merge(get_default_config(), data)

    version = _integer(merged["version"], "version")
    if version != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema version {version}", field="version")

    nodes = tuple(
        _parse_node(n, f"nodes[{i}].")
        for i, n in enumerate(_mapping_list(merged["nodes"], "nodes"))
    )
    capabilities = tuple(
        _parse_capability(c, f"capabilities[{i}].")
        for i, c in enumerate(_mapping_list(merged["capabilities"], "capabilities"))
    )

    lifecycle = []
    for i, step in enumerate(_mapping_list(merged["lifecycle"], "lifecycle")):
        path = f"lifecycle[{i}]."
        try:
            event = LifecycleEvent(_get(step, "event", path))
        except ValueError:
            raise ParseError("unknown lifecycle event", field=f"{path}event") from None
        lifecycle.append(
            LifecycleStep(
                time=_number(_get(step, "time", path), f"{path}time"),
                capability=str(_get(step, "capability", path)),
                event=event,
            )
        )

    mission = merged["mission"]
    generators = tuple(
        _parse_generator(g, f"mission.generators[{i}].")
        for i, g in enumerate(_mapping_list(mission["generators"], "mission.generators"))
    )
    actions = tuple(
        _parse_action(a, f"mission.actions[{i}].", i)
        for i, a in enumerate(_mapping_list(mission["actions"], "mission.actions"))
    )

    power = _build(
        "power",
        PowerModel,
        **{k: _number(v, f"power.{k}") for k, v in merged["power"].items()},
    )
    ir_data = merged["ir"]
    ir = _build(
        "ir",
        IrSignature,
        sigma0=_number(ir_data["sigma0"], "ir.sigma0"),
        sigma1=_number(ir_data["sigma1"], "ir.sigma1"),
        threshold=None
        if ir_data["threshold"] is None
        else _number(ir_data["threshold"], "ir.threshold"),
    )

    policy_data = dict(merged["policy"])
    try:
        policy_data["placement"] = Placement(policy_data["placement"])
    except ValueError:
        raise ValidationError("unknown placement", field="policy.placement") from None
    policy = _build("policy", AutoscalePolicy, **policy_data)

    market = merged["marketplace"]
    images = tuple(
        _build(
            f"marketplace.images[{i}]",
            MarketplaceImage,
            image_id=str(_get(img, "image_id", f"marketplace.images[{i}].")),
            capability_id=str(_get(img, "capability", f"marketplace.images[{i}].")),
            tainted=bool(img.get("tainted", False)),
            provisioning_delay=_number(
                img.get("provisioning_delay", 0.0),
                f"marketplace.images[{i}].provisioning_delay",
            ),
            cluster=str(img.get("cluster", "primary")),
        )
        for i, img in enumerate(_mapping_list(market["images"], "marketplace.images"))
    )
    outages = tuple(
        (
            str(_get(o, "capability", f"marketplace.primary_outages[{i}].")),
            _number(_get(o, "t_start", f"marketplace.primary_outages[{i}]."), "t_start"),
            _number(_get(o, "t_end", f"marketplace.primary_outages[{i}]."), "t_end"),
        )
        for i, o in enumerate(
            _mapping_list(market["primary_outages"], "marketplace.primary_outages")
        )
    )

    attacks = []
    for i, attack in enumerate(_mapping_list(merged["attacks"], "attacks")):
        try:
            AttackKind(_get(attack, "kind", f"attacks[{i}]."))
        except ValueError:
            raise ParseError("unknown attack kind", field=f"attacks[{i}].kind") from None
        _mapping(attack.get("target") or {}, f"attacks[{i}].target")
        _mapping(attack.get("intensity") or {}, f"attacks[{i}].intensity")
        attacks.append(_build(f"attacks[{i}]", AttackSpec.from_dict, attack))

    detector_data = merged["detector"]
    detector = _build("detector", DetectorConfig.from_dict, detector_data)

    baseline = merged["baseline"]
    spec = ScenarioSpec(
        name=str(merged["name"]),
        description=str(merged["description"] or ""),
        version=version,
        duration=_number(merged["duration"], "duration"),
        window_length=_number(merged["window_length"], "window_length"),
        energy_tick=_number(merged["energy_tick"], "energy_tick"),
        seed=_integer(merged["seed"], "seed"),
        perspective=str(merged["perspective"]),
        baseline=str(baseline["mode"]),
        warmup_windows=_integer(baseline["warmup_windows"], "baseline.warmup_windows"),
        nodes=nodes,
        capabilities=capabilities,
        lifecycle=tuple(lifecycle),
        mission=generators,
        actions=actions,
        power=power,
        ir=ir,
        policy=policy,
        images=images,
        primary_outages=outages,
        attacks=tuple(attacks),
        detector=detector,
        human_impact_tags=tuple(
            str(t) for t in _sequence(merged["human_impact_tags"] or [], "human_impact_tags")
        ),
        expect=None if merged["expect"] is None else str(merged["expect"]),
    )
    validate_scenario(spec)
    return spec


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def _is_multiple(value: float, unit: float) -> bool:
    ratio = value / unit
    return abs(ratio - round(ratio)) < 1e-9 and round(ratio) >= 1


def validate_scenario(spec: ScenarioSpec) -> None:
    """Check every invariant and cross-reference; raise ValidationError on the first failure"""
    if spec.duration <= 0 or spec.window_length <= 0:
        raise ValidationError("duration and window_length must be > 0", field="duration")
    if not _is_multiple(spec.duration, spec.window_length):
        raise ValidationError(
            "duration must be an integer multiple of window_length", field="duration"
        )
    if spec.energy_tick <= 0 or not _is_multiple(spec.window_length, spec.energy_tick):
        raise ValidationError("energy_tick must divide window_length", field="energy_tick")
    if spec.seed < 0:
        raise ValidationError("seed must be >= 0", field="seed")
    if spec.perspective not in PERSPECTIVES:
        raise ValidationError(f"unknown perspective '{spec.perspective}'", field="perspective")
    if spec.baseline not in BASELINE_MODES:
        raise ValidationError(
            f"unknown baseline mode '{spec.baseline}'", field="baseline.mode"
        )
    if spec.expect is not None and spec.expect not in {v.value for v in VerdictClass}:
        raise ValidationError(f"unknown verdict '{spec.expect}'", field="expect")

    node_ids = _unique([n.id for n in spec.nodes], "node", "nodes")
    cap_ids = _unique([c.id for c in spec.capabilities], "capability", "capabilities")
    if not node_ids:
        raise ValidationError("scenario declares no nodes", field="nodes")

    for cap in spec.capabilities:
        for dep in cap.depends_on:
            if dep not in cap_ids:
                raise ValidationError(
                    f"unknown capability '{dep}' in depends_on of '{cap.id}'",
                    field="capabilities",
                )
        for node in cap.bootstrap_nodes:
            if node not in node_ids:
                raise ValidationError(
                    f"unknown node '{node}' in bootstrap_nodes of '{cap.id}'",
                    field="capabilities",
                )
        if cap.bootstrap_instances < 0:
            raise ValidationError(
                f"bootstrap_instances of '{cap.id}' must be >= 0", field="capabilities"
            )
        if not 0 <= cap.onboard_at < spec.duration:
            raise ValidationError(
                f"onboard_at of '{cap.id}' is outside the horizon", field="capabilities"
            )
    try:
        build_dependency_graph(spec.capabilities)
    except (CycleError, UnknownCapability) as e:
        raise ValidationError(str(e), field="capabilities") from None

    _validate_lifecycle(spec, cap_ids)

    for gen in spec.mission:
        _require_capability(gen.capability, cap_ids, "mission.generators")
    for action in spec.actions:
        _require_capability(action.required_capability, cap_ids, "mission.actions")
        if not 0 <= action.time < spec.duration:
            raise ValidationError(
                f"action '{action.action_id}' is outside the horizon", field="mission.actions"
            )
    _unique([a.action_id for a in spec.actions], "action", "mission.actions")

    _unique([img.image_id for img in spec.images], "image", "marketplace.images")
    for img in spec.images:
        _require_capability(img.capability_id, cap_ids, "marketplace.images")
    for cap, start, end in spec.primary_outages:
        _require_capability(cap, cap_ids, "marketplace.primary_outages")
        if not 0 <= start < end <= spec.duration:
            raise ValidationError(
                "outage interval exceeds horizon", field="marketplace.primary_outages"
            )

    for i, attack in enumerate(spec.attacks):
        _validate_attack(spec, attack, f"attacks[{i}]", cap_ids, node_ids)

    if spec.baseline == "warmup":
        if spec.warmup_windows < spec.detector.min_windows:
            raise ValidationError(
                "warmup_windows must be >= detector.min_windows",
                field="baseline.warmup_windows",
            )
        if 2 * spec.warmup_windows > spec.n_windows:
            raise ValidationError(
                "warmup baseline needs at least two blocks of windows",
                field="baseline.warmup_windows",
            )
    for start, end in spec.detector.intervals:
        if end > spec.n_windows:
            raise ValidationError(
                f"detector interval [{start}, {end}) exceeds {spec.n_windows} windows",
                field="detector.intervals",
            )


def _unique(ids: List[str], what: str, path: str) -> set:
    seen = set()
    for item in ids:
        if item in seen:
            raise ValidationError(f"duplicate {what} id '{item}'", field=path)
        seen.add(item)
    return seen


def _require_capability(cap: str, cap_ids: set, path: str):
    if cap not in cap_ids:
        raise ValidationError(f"unknown capability '{cap}'", field=path)


def _validate_lifecycle(spec: ScenarioSpec, cap_ids: set):
    onboard = {cap.id: cap.onboard_at for cap in spec.capabilities}
    for cap_id in sorted(cap_ids):
        state = LifecycleState.ONBOARDING
        steps = sorted(
            (s for s in spec.lifecycle if s.capability == cap_id), key=lambda s: s.time
        )
        timeline = [(onboard[cap_id], LifecycleEvent.ONBOARD_COMPLETE)]
        timeline += [(s.time, s.event) for s in steps]
        for time, event in sorted(timeline, key=lambda item: item[0]):
            if not 0 <= time <= spec.duration:
                raise ValidationError("lifecycle event outside the horizon", field="lifecycle")
            try:
                state = next_state(state, event)
            except IllegalTransition as e:
                raise ValidationError(
                    f"capability '{cap_id}': {e}", field="lifecycle"
                ) from None
    for step in spec.lifecycle:
        _require_capability(step.capability, cap_ids, "lifecycle")


def _validate_attack(spec, attack: AttackSpec, path: str, cap_ids: set, node_ids: set):
    if attack.t_end > spec.duration or attack.t_start < 0:
        raise ValidationError("attack interval exceeds horizon", field=path)
    if attack.target_capability is not None:
        _require_capability(attack.target_capability, cap_ids, f"{path}.target")
    for node in attack.target_nodes:
        if node not in node_ids:
            raise ValidationError(f"unknown node '{node}'", field=f"{path}.target")
    if attack.requires_exposure and attack.kind not in RUNTIME_ATTACKS:
        raise ValidationError(
            f"{attack.kind.value} does not support requires_exposure", field=path
        )
    if attack.kind is AttackKind.DECOY_FIELD and spec.perspective != "attacker":
        raise ValidationError("DecoyField requires perspective: attacker", field=path)
    if attack.kind is AttackKind.SUPPLY_CHAIN_TAINT:
        if not any(
            img.capability_id == attack.target_capability and img.cluster == "secondary"
            for img in spec.images
        ):
            raise ValidationError(
                f"no secondary cluster for '{attack.target_capability}'", field=path
            )


# ---------------------------------------------------------------------------
# files
# ---------------------------------------------------------------------------


def _top_level_lines(text: str) -> Dict[str, int]:
    try:
        root = yaml.compose(text)
    except yaml.YAMLError:
        return {}
    if not isinstance(root, yaml.MappingNode):
        return {}
    return {key.value: key.start_mark.line + 1 for key, _ in root.value}


def _attach_line(error: ParseError, lines: Dict[str, int]) -> ParseError:
    if error.line is not None or error.field is None:
        return error
    head = error.field.split(".")[0].split("[")[0]
    if head not in lines:
        return error
    message = str(error).split(": ", 1)[-1]
    return ParseError(message, line=lines[head], field=error.field)


def parse_scenario(text: str) -> ScenarioSpec:
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as e:
        line = e.problem_mark.line + 1 if e.problem_mark is not None else None
        raise ParseError(e.problem or str(e), line=line) from None
    except yaml.YAMLError as e:
        raise ParseError(str(e)) from None
    if not isinstance(data, dict):
        raise ParseError("scenario file must contain a mapping")
    try:
        return scenario_from_dict(data)
    except ParseError as e:
        raise _attach_line(e, _top_level_lines(text)) from None


def load_scenario(file_path: Union[str, Path]) -> ScenarioSpec:
    """
    Load and validate a scenario file

    Args:
        file_path: Path to the YAML scenario

    Returns:
        ScenarioSpec with every default filled in

    Raises:
        OSError: the file cannot be read
        ParseError: malformed YAML or a mistyped field
        ValidationError: a scenario invariant is violated
    """
    file_path = Path(file_path)
    text = file_path.read_text(encoding="utf-8")
    spec = parse_scenario(text)
    logger.debug(
        "loaded scenario %s from %s (digest %s)", spec.name, file_path, spec.digest()[:12]
    )
    return spec


def dump_scenario(spec: ScenarioSpec) -> str:
    return yaml.safe_dump(spec.to_dict(), sort_keys=False, allow_unicode=True)


def save_scenario(spec: ScenarioSpec, file_path: Union[str, Path]) -> Path:
    """
    Save the effective scenario to a YAML file

    Args:
        spec: Scenario to save
        file_path: Destination path; parent directories are created

    Returns:
        Path: the written file
    """
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_scenario(spec))
    return file_path

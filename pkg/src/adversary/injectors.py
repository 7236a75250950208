"""
Attack Injectors
================

Pure transformations the engine applies at event boundaries. Each one
returns new values and never touches engine state.
"""

import math
from dataclasses import replace
from typing import List, Sequence, Tuple

import numpy as np

from model.entities import MissionAction, Position
from orchestrator.marketplace import Marketplace
from orchestrator.telemetry import TelemetryReport
from energy.battery import PowerModel
from utils.exceptions import NoSecondaryCluster

IEDOS_CAP = 0.99


def apply_wedos(actions: Sequence[MissionAction], multiplier: float) -> List[MissionAction]:
    """Multiply the work each request costs; clients and requests stay the same"""
    if multiplier == 1.0:
        return list(actions)
    return [replace(a, work_per_request=a.work_per_request * multiplier) for a in actions]


def apply_iedos(reports: Sequence[TelemetryReport], inflation: float) -> List[TelemetryReport]:
    """Inflate reported CPU additively, capped at 0.99; ground truth is untouched"""
    if inflation == 0.0:
        return list(reports)
    return [
        replace(
            r,
            reported_cpu=min(IEDOS_CAP, r.reported_cpu + inflation),
            poisoned=True,
        )
        for r in reports
    ]


def apply_denial_of_sleep(power: PowerModel, factor: float) -> PowerModel:
    """Power model of a node kept awake: idle power scaled by `factor`"""
    if factor == 1.0:
        return power
    return replace(power, p_idle=power.p_idle * factor)


def apply_flash_crowd(
    actions: Sequence[MissionAction], surge: float, rng: np.random.Generator
) -> List[MissionAction]:
    """Legitimate demand surge: each action brings floor(s) - 1 companions
    plus one more with probability frac(s), each from a fresh client."""
    if surge == 1.0:
        return list(actions)
    whole = int(math.floor(surge))
    frac = surge - whole
    result: List[MissionAction] = []
    for action in actions:
        copies = whole + (1 if frac > 0 and rng.random() < frac else 0)
        result.append(action)
        for j in range(1, copies):
            result.append(
                replace(
                    action,
                    action_id=f"{action.action_id}~fc{j}",
                    client_id=f"{action.client_id}~fc{j}",
                )
            )
    return result


def decoy_positions(area: Sequence[float], decoys: int) -> List[Position]:
    """Decoys evenly spaced on a ring of radius r around (x, y)"""
    x, y, r = (float(v) for v in area)
    return [
        (
            x + r * math.cos(2.0 * math.pi * j / decoys),
            y + r * math.sin(2.0 * math.pi * j / decoys),
        )
        for j in range(decoys)
    ]


def apply_decoy_field(
    capability: str,
    area: Sequence[float],
    decoys: int,
    rate: float,
    work_per_request: float,
    window_index: int,
    window_start: float,
    window_end: float,
    attack_start: float,
    attack_end: float,
) -> List[MissionAction]:
    """Synthetic endpoint traffic for one window.

    Each decoy sends round(rate * overlap) requests, where overlap is the
    part of the window inside the attack interval. The traffic is flagged as
    decoy so it never counts as a tactical action.
    """
    lo, hi = max(window_start, attack_start), min(window_end, attack_end)
    overlap = hi - lo
    if decoys <= 0 or overlap <= 0:
        return []
    count = int(round(rate * overlap))
    if count < 1:
        return []
    when = (lo + hi) / 2.0
    return [
        MissionAction(
            action_id=f"decoy-{j:02d}-w{window_index:04d}",
            time=when,
            required_capability=capability,
            client_id=f"decoy-{j:02d}",
            request_count=count,
            work_per_request=work_per_request,
            origin=origin,
            decoy=True,
        )
        for j, origin in enumerate(decoy_positions(area, decoys))
    ]


def activate_supply_chain_taint(
    marketplace: Marketplace, capability: str
) -> Tuple[Marketplace, bool]:
    """Mark the primary cluster unavailable for `capability`.

    Returns the new marketplace state and whether the secondary cluster that
    now serves pulls holds tainted images.
    """
    if not marketplace.has_secondary(capability):
        raise NoSecondaryCluster(f"capability '{capability}' has no secondary cluster")
    tainted = any(img.tainted for img in marketplace.images_for(capability, "secondary"))
    return marketplace.with_primary_unavailable(capability), tainted

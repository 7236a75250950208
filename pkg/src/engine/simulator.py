"""
Discrete-Event Simulator
========================

Single-threaded engine loop. All scheduled event classes are inserted up
front in a fixed category order, so events at one timestamp always run as
EnergyTick, WindowClose, OrchestratorTick, LifecycleEvent, PositionUpdate,
AttackStart/AttackEnd, ActionArrival. Events produced while handling another
event are logged at once; only deferred ones (RechargeEnd, delayed
InstanceSpawn) go back into the queue.
"""

import logging
from dataclasses import replace
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from adversary.attacks import AttackKind, AttackSpec
from adversary.injectors import (
    activate_supply_chain_taint,
    apply_decoy_field,
    apply_denial_of_sleep,
    apply_flash_crowd,
    apply_iedos,
    apply_wedos,
)
from energy.battery import (
    InstanceActivity,
    apply_draw,
    energy_tick,
    finish_recharge,
    instantiation_draw,
    needs_recharge,
    recharge_cycle,
)
from model.dependency import build_dependency_graph
from model.entities import (
    Capability,
    MarketplaceImage,
    MissionAction,
    SpawnReason,
    VnfInstance,
    distance,
)
from model.lifecycle import LifecycleEvent, LifecycleState, advance_lifecycle
from orchestrator.autoscaler import (
    IN,
    OUT,
    autoscale_step,
    coverage_step,
    pick_scale_in_victim,
)
from orchestrator.marketplace import Marketplace, pull_image
from orchestrator.placement import Placement, RoundRobinCursor, place_instance
from orchestrator.telemetry import TelemetryReport, truthful_report
from utils.exceptions import (
    InternalScheduleError,
    InvariantViolation,
    NoEligibleNode,
    NoImageAvailable,
)

from .events import EventKind, EventQueue, SimEvent
from .mission import expand_mission
from .rng import RngStreams
from .trace import AttackInterval, InstanceLineage, SimTrace
from .windows import (
    CapabilityAccumulator,
    CrownWindow,
    InstanceWindow,
    LiveInstance,
    NodeWindow,
    WindowState,
    close_window,
)

if TYPE_CHECKING:
    from utils.config import ScenarioSpec

logger = logging.getLogger(__name__)


def implicit_images(capabilities: Sequence[str], images: Sequence[MarketplaceImage]):
    """Every capability without a declared image gets an untainted `<id>-img`"""
    declared = {img.capability_id for img in images}
    extra = [
        MarketplaceImage(image_id=f"{cap}-img", capability_id=cap)
        for cap in capabilities
        if cap not in declared
    ]
    return tuple(images) + tuple(extra)


class Simulator:
    """One run of one scenario; call run() once"""

    def __init__(self, scenario: "ScenarioSpec"):
        self.spec = scenario
        self.L = scenario.window_length
        self.dt = scenario.energy_tick
        self.n_windows = scenario.n_windows
        self.rng = RngStreams(scenario.seed)
        self.queue = EventQueue()
        self.log: List[SimEvent] = []

        self.cap_order = [c.id for c in scenario.capabilities]
        self.cap_specs = {c.id: c for c in scenario.capabilities}
        self.caps: Dict[str, Capability] = {
            c.id: Capability(id=c.id, depends_on=frozenset(c.depends_on))
            for c in scenario.capabilities
        }
        graph = build_dependency_graph(self.caps.values())
        transitive = scenario.detector.transitive_dependents
        self.n_t = {c: graph.n_t(c, transitive=transitive) for c in self.cap_order}

        self.nodes = {n.id: n for n in scenario.nodes}
        self.node_order = sorted(self.nodes)
        self.initial_soc = {
            n.id: n.battery.soc for n in scenario.nodes if n.battery is not None
        }
        self.restored = {n: 0.0 for n in self.node_order}

        self.marketplace = Marketplace(
            images=implicit_images(self.cap_order, scenario.images),
            outages=scenario.primary_outages,
        )
        self.attacks: List[AttackSpec] = [a for a in scenario.attacks if not a.is_inert]
        for attack in scenario.attacks:
            if attack.is_inert:
                logger.debug("dropping inert %s attack", attack.kind.value)

        self.instances: Dict[str, VnfInstance] = {}
        self.live: Dict[str, VnfInstance] = {}
        self.ordinals = {c: 0 for c in self.cap_order}
        self.pending: Dict[str, List[str]] = {c: [] for c in self.cap_order}
        self.bindings: Dict[Tuple[str, str], str] = {}
        self.bind_cursor = {c: 0 for c in self.cap_order}
        self.rr_cursor = RoundRobinCursor()
        self.lineage: Dict[str, InstanceLineage] = {}

        self.window_index = 0
        self._reset_window()
        self.tick_work: Dict[str, float] = {}
        self.tick_links: Dict[str, List[float]] = {}
        self.exposed = {c: False for c in self.cap_order}

        self.crowns: List[CrownWindow] = []
        self.instance_windows: List[InstanceWindow] = []
        self.node_windows: List[NodeWindow] = []
        self.reports: Dict[str, List[TelemetryReport]] = {c: [] for c in self.cap_order}
        self.true_reports: Dict[str, List[TelemetryReport]] = {c: [] for c in self.cap_order}
        self.last_reported: Dict[str, float] = {}
        self.uncovered_history: Dict[str, List[Dict]] = {c: [] for c in self.cap_order}
        self.last_scaled = {c: -1 for c in self.cap_order}
        self.ir_exposures: Dict[str, int] = {}
        self.totals = {
            key: {c: 0 for c in self.cap_order}
            for key in ("sinkholed", "dropped", "uncovered")
        }

        self._handlers = {
            EventKind.ENERGY_TICK: self._on_energy_tick,
            EventKind.WINDOW_CLOSE: self._on_window_close,
            EventKind.ORCHESTRATOR_TICK: self._on_orchestrator_tick,
            EventKind.LIFECYCLE_EVENT: self._on_lifecycle,
            EventKind.POSITION_UPDATE: self._on_position_update,
            EventKind.ATTACK_START: self._on_attack_start,
            EventKind.ATTACK_END: self._on_attack_end,
            EventKind.ACTION_ARRIVAL: self._on_action_arrival,
            EventKind.RECHARGE_END: self._on_recharge_end,
            EventKind.INSTANCE_SPAWN: self._on_deferred_spawn,
        }

    # ------------------------------------------------------------------
    # setup
    # ------------------------------------------------------------------

    def _reset_window(self):
        self.acc = {c: CapabilityAccumulator() for c in self.cap_order}
        self.inst_work: Dict[str, float] = {}
        self.inst_requests: Dict[str, int] = {}
        self.node_work = {n: 0.0 for n in self.node_order}
        self.node_draw = {n: 0.0 for n in self.node_order}

    def _schedule_initial(self):
        spec, q = self.spec, self.queue
        n_ticks = int(round(spec.duration / self.dt))
        for i in range(1, n_ticks + 1):
            q.schedule(i * self.dt, EventKind.ENERGY_TICK)
        for k in range(self.n_windows):
            q.schedule((k + 1) * self.L, EventKind.WINDOW_CLOSE, detail=(("window", k),))
        for k in range(self.n_windows - 1):
            q.schedule((k + 1) * self.L, EventKind.ORCHESTRATOR_TICK, detail=(("window", k),))

        steps = [
            (cap.onboard_at, 0, i, cap.id, LifecycleEvent.ONBOARD_COMPLETE)
            for i, cap in enumerate(spec.capabilities)
        ]
        steps += [
            (s.time, 1, j, s.capability, s.event) for j, s in enumerate(spec.lifecycle)
        ]
        for time, _, _, cap, event in sorted(steps, key=lambda s: s[:3]):
            q.schedule(
                time,
                EventKind.LIFECYCLE_EVENT,
                capability=cap,
                detail=(("event", event.value),),
                payload=event,
            )

        moves = sorted(
            (wp[0], node.id, wp[1], wp[2])
            for node in spec.nodes
            for wp in node.waypoints
            if 0.0 <= wp[0] <= spec.duration
        )
        for time, node_id, x, y in moves:
            q.schedule(time, EventKind.POSITION_UPDATE, node=node_id, payload=(x, y))

        marks = []
        for index, attack in enumerate(self.attacks):
            marks.append((attack.t_start, index, 0, EventKind.ATTACK_START, attack))
            marks.append((attack.t_end, index, 1, EventKind.ATTACK_END, attack))
        for time, _, _, kind, attack in sorted(marks, key=lambda m: m[:3]):
            q.schedule(
                time,
                kind,
                capability=attack.target_capability or "",
                node=",".join(attack.target_nodes),
                detail=(("attack", attack.kind.value),),
                payload=attack,
            )

        for action in self._mission_actions():
            q.schedule(
                action.time,
                EventKind.ACTION_ARRIVAL,
                capability=action.required_capability,
                payload=action,
            )

    def _mission_actions(self) -> List[MissionAction]:
        spec = self.spec
        actions = expand_mission(
            spec.mission, spec.actions, spec.duration, self.L, self.rng.mission
        )
        for attack in self.attacks:
            if attack.kind is not AttackKind.FLASH_CROWD:
                continue
            surged: List[MissionAction] = []
            for action in actions:
                if action.required_capability == attack.target_capability and attack.active_at(
                    action.time
                ):
                    surged.extend(
                        apply_flash_crowd([action], attack.param("surge"), self.rng.adversary)
                    )
                else:
                    surged.append(action)
            actions = surged

        for attack in self.attacks:
            if attack.kind is not AttackKind.DECOY_FIELD:
                continue
            for k in range(self.n_windows):
                actions.extend(
                    apply_decoy_field(
                        capability=attack.target_capability,
                        area=attack.param("area"),
                        decoys=int(attack.param("decoys")),
                        rate=float(attack.param("rate")),
                        work_per_request=float(attack.param("work_per_request")),
                        window_index=k,
                        window_start=k * self.L,
                        window_end=(k + 1) * self.L,
                        attack_start=attack.t_start,
                        attack_end=attack.t_end,
                    )
                )
        return sorted(actions, key=lambda a: (a.time, a.action_id))

    # ------------------------------------------------------------------
    # main loop
    # ------------------------------------------------------------------

    def run(self) -> SimTrace:
        spec = self.spec
        logger.info(
            "running scenario %s (seed %d, digest %s)",
            spec.name,
            spec.seed,
            spec.digest()[:12],
        )
        self._schedule_initial()
        while True:
            event = self.queue.next_event()
            if event is None:
                break
            if event.time > spec.duration:
                raise InternalScheduleError(
                    f"{event.kind.value} at t={event.time} is beyond the horizon"
                )
            self._handlers[event.kind](event)
            self._check_invariants()
        logger.info("scenario %s finished with %d events", spec.name, len(self.log))
        return self._build_trace()

    def _emit(
        self,
        time: float,
        kind: EventKind,
        capability: str = "",
        node: str = "",
        instance: str = "",
        detail: Tuple = (),
    ):
        self.log.append(
            SimEvent(time, len(self.log), kind, capability, node, instance, detail)
        )

    def _check_invariants(self):
        for inst in self.live.values():
            if self.caps[inst.capability_id].lifecycle is LifecycleState.UNDEPLOYED:
                raise InvariantViolation(
                    f"live instance {inst.id} references undeployed {inst.capability_id}"
                )
            if inst.host_node_id not in self.nodes:
                raise InvariantViolation(f"instance {inst.id} has no host node")

    # ------------------------------------------------------------------
    # helpers
    # ------------------------------------------------------------------

    def _live_on(self, node_id: str) -> List[VnfInstance]:
        return [
            self.live[i] for i in sorted(self.live) if self.live[i].host_node_id == node_id
        ]

    def _live_of(self, cap_id: str) -> List[VnfInstance]:
        return [
            self.live[i] for i in sorted(self.live) if self.live[i].capability_id == cap_id
        ]

    def _exposure_ok(self, attack: AttackSpec, capabilities: Sequence[str]) -> bool:
        if not attack.requires_exposure:
            return True
        return any(
            self.caps[c].lifecycle is LifecycleState.ADAPTATION for c in capabilities
        )

    def _drain(self, node_id: str, amount: float):
        """Draw energy from a node; returns (applied, truncated, soc)"""
        node = self.nodes[node_id]
        if node.battery is None:
            return amount, 0.0, None
        battery, truncated = apply_draw(node.battery, amount)
        self.nodes[node_id] = replace(node, battery=battery)
        return amount - truncated, truncated, battery.soc

    def _maybe_recharge(self, node_id: str, now: float):
        battery = self.nodes[node_id].battery
        if battery is None or not needs_recharge(battery):
            return
        battery, _, end = recharge_cycle(battery, now)
        self.nodes[node_id] = replace(self.nodes[node_id], battery=battery)
        self._emit(
            now,
            EventKind.RECHARGE_START,
            node=node_id,
            detail=(("soc", battery.soc), ("until", end)),
        )
        if end <= self.spec.duration:
            self.queue.schedule(end, EventKind.RECHARGE_END, node=node_id)
        else:
            logger.debug("node %s still recharging at the horizon", node_id)

    def _hosted_counts(self) -> Dict[str, int]:
        counts = {n: 0 for n in self.node_order}
        for inst in self.live.values():
            counts[inst.host_node_id] += 1
        for nodes in self.pending.values():
            for node_id in nodes:
                counts[node_id] += 1
        return counts

    def _reported_loads(self) -> Dict[str, float]:
        loads = {n: 0.0 for n in self.node_order}
        for iid in sorted(self.live):
            loads[self.live[iid].host_node_id] += self.last_reported.get(iid, 0.0)
        return loads

    # ------------------------------------------------------------------
    # instances
    # ------------------------------------------------------------------

    def _request_spawn(
        self,
        cap_id: str,
        node_id: str,
        image: MarketplaceImage,
        reason: SpawnReason,
        now: float,
        detail: Tuple = (),
    ) -> bool:
        if image.provisioning_delay <= 0:
            self._spawn(cap_id, node_id, image, reason, now, detail)
            return True
        when = now + image.provisioning_delay
        if when > self.spec.duration:
            logger.debug("spawn of %s on %s would land beyond the horizon", cap_id, node_id)
            return False
        self.pending[cap_id].append(node_id)
        self.queue.schedule(
            when,
            EventKind.INSTANCE_SPAWN,
            capability=cap_id,
            node=node_id,
            payload=(image, reason, detail),
        )
        return True

    def _on_deferred_spawn(self, event: SimEvent):
        image, reason, detail = event.payload
        self.pending[event.capability].remove(event.node)
        if not self.caps[event.capability].serving:
            logger.debug(
                "dropping delayed spawn of %s: capability not serving", event.capability
            )
            return
        self._spawn(event.capability, event.node, image, reason, event.time, detail)

    def _spawn(
        self,
        cap_id: str,
        node_id: str,
        image: MarketplaceImage,
        reason: SpawnReason,
        now: float,
        detail: Tuple = (),
    ) -> str:
        self.ordinals[cap_id] += 1
        ordinal = self.ordinals[cap_id]
        iid = f"{cap_id}-{ordinal:03d}"
        inst = VnfInstance(
            id=iid,
            capability_id=cap_id,
            host_node_id=node_id,
            spawn_reason=reason,
            image_id=image.image_id,
            ordinal=ordinal,
            tainted=image.tainted,
        )
        self.instances[iid] = inst
        self.live[iid] = inst
        cap = self.caps[cap_id]
        self.caps[cap_id] = replace(cap, instances=cap.instances | {iid})

        draw = instantiation_draw(self.spec.power)
        self.acc[cap_id].instantiation += draw
        self.node_draw[node_id] += draw
        applied, truncated, soc = self._drain(node_id, draw)
        self._emit(
            now,
            EventKind.INSTANCE_SPAWN,
            capability=cap_id,
            node=node_id,
            instance=iid,
            detail=(
                ("spawn_reason", reason.value),
                ("image", image.image_id),
                ("tainted", image.tainted),
                ("draw", draw),
                ("applied", applied),
                ("truncated", truncated),
                ("soc", soc),
            )
            + tuple(detail),
        )
        self.lineage[iid] = InstanceLineage(
            instance_id=iid,
            capability=cap_id,
            node=node_id,
            spawn_reason=reason.value,
            image_id=image.image_id,
            tainted=image.tainted,
            spawned_at=now,
        )
        self._maybe_recharge(node_id, now)
        return iid

    def _kill(self, iid: str, now: float, reason: str, detail: Tuple = ()):
        inst = replace(self.live.pop(iid), alive=False)
        self.instances[iid] = inst
        cap = self.caps[inst.capability_id]
        self.caps[inst.capability_id] = replace(cap, instances=cap.instances - {iid})
        self.lineage[iid] = replace(self.lineage[iid], killed_at=now)
        self._emit(
            now,
            EventKind.INSTANCE_KILL,
            capability=inst.capability_id,
            node=inst.host_node_id,
            instance=iid,
            detail=(("reason", reason),) + tuple(detail),
        )

    def _bootstrap(self, cap_id: str, now: float):
        cap_spec = self.cap_specs[cap_id]
        for i in range(cap_spec.bootstrap_instances):
            try:
                image = pull_image(cap_id, self.marketplace, now=now)
                if cap_spec.bootstrap_nodes:
                    node_id = cap_spec.bootstrap_nodes[i % len(cap_spec.bootstrap_nodes)]
                else:
                    hosted = self._hosted_counts()
                    # no telemetry yet: spread by instance count
                    node_id = place_instance(
                        list(self.nodes.values()),
                        Placement.LEAST_LOADED,
                        loads={n: float(c) for n, c in hosted.items()},
                        hosted=hosted,
                    )
            except (NoEligibleNode, NoImageAvailable) as e:
                logger.warning("bootstrap of %s stopped after %d instances: %s", cap_id, i, e)
                return
            reason = (
                SpawnReason.MARKETPLACE_PULL
                if image.cluster == "secondary"
                else SpawnReason.BOOTSTRAP
            )
            self._request_spawn(cap_id, node_id, image, reason, now)

    # ------------------------------------------------------------------
    # routing
    # ------------------------------------------------------------------

    def _serves(self, inst: VnfInstance, origin) -> bool:
        node = self.nodes[inst.host_node_id]
        return not node.recharging and node.in_range(origin)

    def _route(self, action: MissionAction) -> Optional[VnfInstance]:
        """Client affinity with failover; None when no active instance is in range"""
        cap_id = action.required_capability
        candidates = [i for i in self._live_of(cap_id) if self._serves(i, action.origin)]
        key = (cap_id, action.client_id)
        bound = self.live.get(self.bindings.get(key, ""))
        if bound is not None:
            if self._serves(bound, action.origin):
                return bound
            if not candidates:
                return None
            return min(
                candidates,
                key=lambda i: (
                    distance(self.nodes[i.host_node_id].position, action.origin),
                    i.id,
                ),
            )
        if not candidates:
            return None
        chosen = candidates[self.bind_cursor[cap_id] % len(candidates)]
        self.bind_cursor[cap_id] += 1
        self.bindings[key] = chosen.id
        return chosen

    def _wedos_multiplier(self, action: MissionAction, inst: VnfInstance) -> float:
        multiplier = 1.0
        for attack in self.attacks:
            if attack.kind is not AttackKind.WEDOS or not attack.active_at(action.time):
                continue
            if not attack.targets(action.required_capability, [inst.host_node_id]):
                continue
            if self._exposure_ok(attack, [action.required_capability]):
                multiplier *= float(attack.param("multiplier"))
        return multiplier

    # ------------------------------------------------------------------
    # handlers
    # ------------------------------------------------------------------

    def _on_action_arrival(self, event: SimEvent):
        action: MissionAction = event.payload
        cap_id = action.required_capability
        acc = self.acc[cap_id]
        acc.clients.add(action.client_id)
        acc.requests += action.request_count
        if action.decoy:
            acc.sinkholed += action.request_count
        else:
            acc.actions += 1

        outcome, inst = "dropped", None
        if self.caps[cap_id].serving:
            inst = self._route(action)
            if inst is None:
                outcome = "uncovered"
                acc.add_uncovered(action.origin, action.request_count)
        if inst is None:
            acc.dropped += action.request_count
            work_per_request = action.work_per_request
        else:
            outcome = "served"
            served = apply_wedos([action], self._wedos_multiplier(action, inst))[0]
            work_per_request = served.work_per_request
            work = served.total_work
            self.tick_work[inst.id] = self.tick_work.get(inst.id, 0.0) + work
            self.inst_work[inst.id] = self.inst_work.get(inst.id, 0.0) + work
            self.inst_requests[inst.id] = (
                self.inst_requests.get(inst.id, 0) + action.request_count
            )
            self.node_work[inst.host_node_id] += work
            acc.work += work
            link = distance(self.nodes[inst.host_node_id].position, action.origin)
            self.tick_links.setdefault(inst.id, []).extend([link] * action.request_count)

        self._emit(
            event.time,
            EventKind.ACTION_ARRIVAL,
            capability=cap_id,
            node=inst.host_node_id if inst else "",
            instance=inst.id if inst else "",
            detail=(
                ("action", action.action_id),
                ("client", action.client_id),
                ("requests", action.request_count),
                ("work_per_request", work_per_request),
                ("decoy", action.decoy),
                ("outcome", outcome),
            ),
        )

    def _sleep_denial(self, node_id: str, tick_start: float) -> Optional[float]:
        factor = None
        for attack in self.attacks:
            if attack.kind is not AttackKind.DENIAL_OF_SLEEP:
                continue
            if not attack.active_at(tick_start):
                continue
            hosted_caps = sorted({i.capability_id for i in self._live_on(node_id)})
            if attack.target_capability is not None:
                if attack.target_capability not in hosted_caps:
                    continue
                exposure_caps = [attack.target_capability]
            elif node_id in attack.target_nodes:
                exposure_caps = hosted_caps
            else:
                continue
            if self._exposure_ok(attack, exposure_caps):
                factor = (factor or 1.0) * float(attack.param("factor"))
        return factor

    def _on_energy_tick(self, event: SimEvent):
        now = event.time
        for node_id in self.node_order:
            node = self.nodes[node_id]
            hosted = self._live_on(node_id)
            if node.recharging:
                self._emit(
                    now,
                    EventKind.ENERGY_TICK,
                    node=node_id,
                    detail=(
                        ("draw", 0.0),
                        ("applied", 0.0),
                        ("truncated", 0.0),
                        ("soc", node.battery.soc),
                        ("suspended", len(hosted)),
                    ),
                )
                continue
            factor = self._sleep_denial(node_id, now - self.dt)
            power = self.spec.power
            if factor is not None:
                power = apply_denial_of_sleep(power, factor)
            activities = [
                InstanceActivity(
                    instance_id=inst.id,
                    capability_id=inst.capability_id,
                    cpu_load=self.tick_work.get(inst.id, 0.0) / self.dt,
                    link_distances=tuple(self.tick_links.get(inst.id, ())),
                )
                for inst in hosted
            ]
            draw = energy_tick(activities, power, self.dt, awake=factor is not None)
            for cap_id, amount in draw.by_capability.items():
                self.acc[cap_id].energy += amount
            self.node_draw[node_id] += draw.total
            applied, truncated, soc = self._drain(node_id, draw.total)
            self._emit(
                now,
                EventKind.ENERGY_TICK,
                node=node_id,
                detail=(
                    ("draw", draw.total),
                    ("applied", applied),
                    ("truncated", truncated),
                    ("soc", soc),
                    ("suspended", 0),
                ),
            )
            self._maybe_recharge(node_id, now)
        self.tick_work = {}
        self.tick_links = {}

    def _on_recharge_end(self, event: SimEvent):
        node = self.nodes[event.node]
        battery, restored = finish_recharge(node.battery)
        self.nodes[event.node] = replace(node, battery=battery)
        self.restored[event.node] += restored
        self._emit(
            event.time,
            EventKind.RECHARGE_END,
            node=event.node,
            detail=(
                ("restored", restored),
                ("soc", battery.soc),
                ("recharge_count", battery.recharge_count),
            ),
        )

    def _iedos_inflations(self, inst: VnfInstance, k: int) -> List[float]:
        start, end = k * self.L, (k + 1) * self.L
        return [
            float(attack.param("inflation"))
            for attack in self.attacks
            if attack.kind is AttackKind.IEDOS
            and attack.overlap(start, end) > 0
            and attack.targets(inst.capability_id, [inst.host_node_id])
            and (not attack.requires_exposure or self.exposed[inst.capability_id])
        ]

    def _on_window_close(self, event: SimEvent):
        k = self.window_index
        node_ir: Dict[str, float] = {}
        for node_id in self.node_order:
            node = self.nodes[node_id]
            load = self.node_work[node_id] / self.L
            ir = self.spec.ir.value(load)
            node_ir[node_id] = ir
            threshold = self.spec.ir.threshold
            if threshold is not None and ir > threshold and node_id not in self.ir_exposures:
                self.ir_exposures[node_id] = k
            self.node_windows.append(
                NodeWindow(
                    window_index=k,
                    node=node_id,
                    load=load,
                    ir=ir,
                    energy_draw=self.node_draw[node_id],
                    soc=node.battery.soc if node.battery is not None else 0.0,
                    recharging=node.recharging,
                )
            )

        live: List[LiveInstance] = []
        for iid in sorted(self.live):
            inst = self.live[iid]
            cpu = self.inst_work.get(iid, 0.0) / self.L
            requests = self.inst_requests.get(iid, 0)
            truth = truthful_report(iid, inst.capability_id, k, cpu, requests)
            reported = [truth]
            for inflation in self._iedos_inflations(inst, k):
                reported = apply_iedos(reported, inflation)
            report = reported[0]
            self.true_reports[inst.capability_id].append(truth)
            self.reports[inst.capability_id].append(report)
            seen = truth if self.spec.policy.sanitize_telemetry else report
            self.last_reported[iid] = seen.reported_cpu
            self.instance_windows.append(
                InstanceWindow(
                    window_index=k,
                    instance_id=iid,
                    capability=inst.capability_id,
                    node=inst.host_node_id,
                    requests_served=requests,
                    cpu_load=cpu,
                    reported_cpu=report.reported_cpu,
                    poisoned=report.poisoned,
                    tainted=inst.tainted,
                    spawn_reason=inst.spawn_reason.value,
                )
            )
            live.append(LiveInstance(iid, inst.capability_id, inst.host_node_id, inst.tainted))

        state = WindowState(
            capabilities=self.cap_order,
            accumulators=self.acc,
            live=live,
            n_t=self.n_t,
            node_ir=node_ir,
        )
        closed = close_window(state, k)
        for cap_id in self.cap_order:
            self.crowns.append(closed[cap_id])
            acc = self.acc[cap_id]
            self.uncovered_history[cap_id].append(dict(acc.uncovered))
            self.totals["sinkholed"][cap_id] += acc.sinkholed
            self.totals["dropped"][cap_id] += acc.dropped
            self.totals["uncovered"][cap_id] += sum(acc.uncovered.values())

        self._emit(event.time, EventKind.WINDOW_CLOSE, detail=(("window", k),))
        self._reset_window()
        self.window_index += 1
        self.exposed = {
            c: self.caps[c].lifecycle is LifecycleState.ADAPTATION for c in self.cap_order
        }

    def _on_orchestrator_tick(self, event: SimEvent):
        k = event.get("window")
        now = event.time
        self._emit(now, EventKind.ORCHESTRATOR_TICK, detail=(("window", k),))
        policy = self.spec.policy
        source = self.true_reports if policy.sanitize_telemetry else self.reports

        for cap_id in self.cap_order:
            cap = self.caps[cap_id]
            if not cap.serving:
                continue
            fresh = [r for r in source[cap_id] if r.window_index > self.last_scaled[cap_id]]
            count = len(cap.instances) + len(self.pending[cap_id])
            decision = autoscale_step(cap, fresh, policy, instance_count=count)
            if decision.is_hold:
                history = self.uncovered_history[cap_id][self.last_scaled[cap_id] + 1:]
                hosting = sorted(
                    {i.host_node_id for i in self._live_of(cap_id)} | set(self.pending[cap_id])
                )
                decision = coverage_step(
                    history,
                    [self.nodes[n] for n in self.node_order],
                    self._hosted_counts(),
                    hosting,
                    count,
                    policy,
                )
            if decision.is_hold:
                continue

            logger.debug(
                "window %d: %s %s(%d) %s",
                k,
                cap_id,
                decision.action,
                decision.n,
                decision.reason,
            )
            audit = (
                ("decision", decision.action),
                ("reason", decision.reason),
                ("means", "|".join(f"{m:.6g}" for m in decision.window_means)),
            )
            if decision.action == OUT and self._scale_out(cap_id, decision, now, audit):
                self.last_scaled[cap_id] = k
            elif decision.action == IN:
                last = {
                    iw.instance_id: (iw.requests_served, iw.cpu_load)
                    for iw in self.instance_windows
                    if iw.window_index == k and iw.instance_id in cap.instances
                }
                if not last:
                    last = {iid: (0, 0.0) for iid in cap.instances}
                ordinals = {iid: self.instances[iid].ordinal for iid in last}
                self._kill(pick_scale_in_victim(last, ordinals), now, "ScaleIn", audit)
                self.last_scaled[cap_id] = k

    def _scale_out(self, cap_id: str, decision, now: float, audit: Tuple) -> bool:
        try:
            node_id = decision.node or place_instance(
                [self.nodes[n] for n in self.node_order],
                self.spec.policy.placement,
                loads=self._reported_loads(),
                hosted=self._hosted_counts(),
                cursor=self.rr_cursor,
            )
            image = pull_image(cap_id, self.marketplace, now=now)
        except (NoEligibleNode, NoImageAvailable) as e:
            logger.debug("scale-out of %s skipped: %s", cap_id, e)
            return False
        reason = SpawnReason.AUTOSCALE_OUT
        if image.cluster == "secondary":
            reason = SpawnReason.MARKETPLACE_PULL
        return self._request_spawn(cap_id, node_id, image, reason, now, audit)

    def _on_lifecycle(self, event: SimEvent):
        cap_id = event.capability
        lifecycle_event: LifecycleEvent = event.payload
        before = self.caps[cap_id]
        after_state = advance_lifecycle(before, lifecycle_event).lifecycle
        self._emit(
            event.time,
            EventKind.LIFECYCLE_EVENT,
            capability=cap_id,
            detail=(
                ("event", lifecycle_event.value),
                ("from", before.lifecycle.value),
                ("to", after_state.value),
            ),
        )
        if after_state is LifecycleState.UNDEPLOYED:
            for iid in sorted(before.instances):
                self._kill(iid, event.time, "Undeploy")
        self.caps[cap_id] = advance_lifecycle(self.caps[cap_id], lifecycle_event)

        if lifecycle_event is LifecycleEvent.ADAPT_START:
            self.exposed[cap_id] = True
        onboarded = before.lifecycle is LifecycleState.ONBOARDING
        if onboarded and after_state is LifecycleState.DEPLOYED:
            self._bootstrap(cap_id, event.time)

    def _on_position_update(self, event: SimEvent):
        x, y = event.payload
        self.nodes[event.node] = replace(self.nodes[event.node], position=(x, y))
        self._emit(
            event.time, EventKind.POSITION_UPDATE, node=event.node, detail=(("x", x), ("y", y))
        )

    def _on_attack_start(self, event: SimEvent):
        attack: AttackSpec = event.payload
        detail = (("attack", attack.kind.value),)
        if attack.kind is AttackKind.SUPPLY_CHAIN_TAINT:
            self.marketplace, tainted = activate_supply_chain_taint(
                self.marketplace, attack.target_capability
            )
            detail += (("secondary_tainted", tainted),)
        self._emit(
            event.time,
            EventKind.ATTACK_START,
            capability=event.capability,
            node=event.node,
            detail=detail,
        )

    def _on_attack_end(self, event: SimEvent):
        attack: AttackSpec = event.payload
        if attack.kind is AttackKind.SUPPLY_CHAIN_TAINT:
            self.marketplace = self.marketplace.with_primary_restored(attack.target_capability)
        self._emit(
            event.time,
            EventKind.ATTACK_END,
            capability=event.capability,
            node=event.node,
            detail=(("attack", attack.kind.value),),
        )

    # ------------------------------------------------------------------
    # trace
    # ------------------------------------------------------------------

    def _build_trace(self) -> SimTrace:
        spec = self.spec
        nodes_state = {}
        for node_id in self.node_order:
            node = self.nodes[node_id]
            battery = node.battery
            nodes_state[node_id] = {
                "position": list(node.position),
                "capacity": battery.capacity if battery else None,
                "initial_soc": self.initial_soc.get(node_id),
                "soc": battery.soc if battery else None,
                "restored": self.restored[node_id],
                "recharge_count": battery.recharge_count if battery else 0,
                "recharging": node.recharging,
            }
        final_state = {
            "nodes": nodes_state,
            "capabilities": {
                c: {
                    "lifecycle": self.caps[c].lifecycle.value,
                    "instances": sorted(self.caps[c].instances),
                }
                for c in self.cap_order
            },
            "ir_exposures": dict(sorted(self.ir_exposures.items())),
            "sinkholed": dict(self.totals["sinkholed"]),
            "dropped": dict(self.totals["dropped"]),
            "uncovered": dict(self.totals["uncovered"]),
        }
        attacks = tuple(
            AttackInterval(
                kind=a.kind.value,
                target_capability=a.target_capability,
                target_nodes=a.target_nodes,
                t_start=a.t_start,
                t_end=a.t_end,
            )
            for a in self.attacks
        )
        return SimTrace(
            events=tuple(self.log),
            windows=tuple(self.crowns),
            seed=spec.seed,
            scenario_digest=spec.digest(),
            scenario_name=spec.name,
            window_length=self.L,
            n_windows=self.n_windows,
            capabilities=tuple(self.cap_order),
            nodes=tuple(self.node_order),
            instance_windows=tuple(self.instance_windows),
            node_windows=tuple(self.node_windows),
            lineage=tuple(self.lineage[i] for i in sorted(self.lineage)),
            attacks=attacks,
            final_state=final_state,
        )


def run(scenario: "ScenarioSpec") -> SimTrace:
    """Simulate one scenario; equal (scenario, seed) give equal traces"""
    return Simulator(scenario).run()

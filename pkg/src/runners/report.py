"""
Detection Report
================

Builds the JSON detection report from an attacked trace and its baseline:
per-capability, per-interval verdicts with their evidence, the attack
ground truth, the evaluation block, the energy and IR summaries, instance
lineage and the effective scenario config.
"""

import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from adversary.attacks import AttackKind, TDOS_CAPABLE
from detect.classifier import VerdictClass, aggregate_verdicts, classify
from detect.productivity import cluster_productivity, instance_productivity
from detect.summary import summarize
from energy.ledger import energy_ledger
from utils.exceptions import UnknownCapability

logger = logging.getLogger(__name__)

HIT = "hit"
MISS = "miss"
FALSE_ALARM = "false_alarm"
CORRECT_REJECT = "correct_reject"


@dataclass
class DetectionReport:
    """Everything a run produces besides the CSV traces"""

    scenario: str
    digest: str
    seed: int
    perspective: str
    baseline_mode: str
    verdict: str
    expect: Optional[str] = None
    verdicts: List[Dict[str, Any]] = field(default_factory=list)
    ground_truth: List[Dict[str, Any]] = field(default_factory=list)
    evaluation: List[Dict[str, Any]] = field(default_factory=list)
    attacks: List[Dict[str, Any]] = field(default_factory=list)
    energy: Dict[str, Any] = field(default_factory=dict)
    ir: Dict[str, Any] = field(default_factory=dict)
    lineage: List[Dict[str, Any]] = field(default_factory=list)
    lazy: Dict[str, Any] = field(default_factory=dict)
    sinkholed: Dict[str, int] = field(default_factory=dict)
    dropped: Dict[str, int] = field(default_factory=dict)
    uncovered: Dict[str, int] = field(default_factory=dict)
    human_impact_tags: List[str] = field(default_factory=list)
    effective_config: Dict[str, Any] = field(default_factory=dict)

    @property
    def matches_expectation(self) -> bool:
        return self.expect is None or self.expect == self.verdict

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def comparison_intervals(
    spec, n_windows: int
) -> List[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """(baseline interval, observed interval) pairs to classify.

    A reference run compares each configured interval with itself (the whole
    horizon when none are configured). A warm-up baseline compares the first
    block of warmup_windows windows with every following full block.
    """
    if spec.baseline == "warmup":
        size = spec.warmup_windows
        blocks = [(start, start + size) for start in range(size, n_windows - size + 1, size)]
        return [((0, size), block) for block in blocks]
    intervals = spec.detector.intervals or ((0, n_windows),)
    return [(interval, interval) for interval in intervals]


def hosting_nodes(trace, capability: str, interval: Tuple[int, int]) -> set:
    start, end = interval
    return {
        iw.node
        for iw in trace.instance_windows_for(capability)
        if start <= iw.window_index < end
    }


def ground_truth(trace, capability: str, interval: Tuple[int, int]) -> List[str]:
    """Kinds of TDoS-capable attacks touching the capability during the interval"""
    t0 = interval[0] * trace.window_length
    t1 = interval[1] * trace.window_length
    nodes = None
    kinds = []
    for attack in trace.attacks:
        if AttackKind(attack.kind) not in TDOS_CAPABLE:
            continue
        if attack.t_end <= t0 or attack.t_start >= t1:
            continue
        if attack.target_capability is not None:
            touched = attack.target_capability == capability
        else:
            if nodes is None:
                nodes = hosting_nodes(trace, capability, interval)
            touched = bool(nodes.intersection(attack.target_nodes))
        if touched and attack.kind not in kinds:
            kinds.append(attack.kind)
    return kinds


def evaluation_label(verdict_class: str, attacked: bool) -> str:
    detected = VerdictClass(verdict_class).is_tdos
    if attacked:
        return HIT if detected else MISS
    return FALSE_ALARM if detected else CORRECT_REJECT


def evaluate(
    verdicts: Sequence[Dict[str, Any]], truth: Sequence[Dict[str, Any]]
) -> List[Dict]:
    """Evaluation block; needs only the verdict and ground-truth blocks"""
    attacked = {(t["capability"], tuple(t["interval"])): t["attacked"] for t in truth}
    rows = []
    for verdict in verdicts:
        key = (verdict["capability"], tuple(verdict["interval"]))
        rows.append(
            {
                "capability": verdict["capability"],
                "interval": list(verdict["interval"]),
                "verdict": verdict["class"],
                "attacked": attacked[key],
                "label": evaluation_label(verdict["class"], attacked[key]),
            }
        )
    return rows


def energy_summary(trace) -> Dict[str, Any]:
    ledgers = energy_ledger(trace)
    nodes_state = trace.final_state.get("nodes", {})
    summary = {}
    for node in trace.nodes:
        state = nodes_state.get(node, {})
        entry = {
            "total_draw": sum(nw.energy_draw for nw in trace.node_series(node)),
            "recharge_count": state.get("recharge_count", 0),
            "final_soc": state.get("soc"),
        }
        ledger = ledgers.get(node)
        if ledger is not None:
            entry["ledger"] = {
                "initial_soc": ledger.initial_soc,
                "final_soc": ledger.final_soc,
                "restored": ledger.restored,
                "drawn": ledger.drawn,
                "truncated": ledger.truncated,
                "closes": ledger.closes(),
            }
        summary[node] = entry
    return summary


def ir_summary(trace) -> Dict[str, Any]:
    return {
        "series": {node: [nw.ir for nw in trace.node_series(node)] for node in trace.nodes},
        "exposures": dict(trace.final_state.get("ir_exposures", {})),
    }


def lazy_flags(trace, detector) -> Dict[str, Any]:
    """Productivity clustering per capability with at least two instances"""
    result = {}
    for cap in trace.capabilities:
        productivity = instance_productivity(trace.instance_windows_for(cap))
        if len(productivity) < 2:
            continue
        clusters = cluster_productivity(
            productivity, detector.lazy_threshold, detector.lazy_min_relative_gap
        )
        entry = clusters.to_dict()
        entry["productivity"] = productivity
        result[cap] = entry
    return result


def build_report(spec, trace, baseline_trace=None) -> DetectionReport:
    """Classify every (capability, interval) cell and assemble the report.

    Args:
        spec: the effective ScenarioSpec
        trace: the trace of the run under test
        baseline_trace: attack-free run with the same seed; required when the
            scenario uses a reference-run baseline

    Returns:
        DetectionReport
    """
    cfg = spec.detector
    if spec.baseline == "reference_run":
        if baseline_trace is None:
            raise ValueError("reference_run baseline needs a baseline trace")
        source = baseline_trace
    else:
        source = trace

    verdict_objects = []
    verdicts = []
    truth = []
    for cap in trace.capabilities:
        for a_interval, b_interval in comparison_intervals(spec, trace.n_windows):
            a = summarize(source, cap, a_interval, cfg.min_windows)
            b = summarize(trace, cap, b_interval, cfg.min_windows)
            verdict = classify(a, b, cfg)
            verdict_objects.append(verdict)
            cell = verdict.to_dict()
            cell["baseline_interval"] = list(a_interval)
            cell["baseline"] = a.to_dict()
            cell["observed"] = b.to_dict()
            verdicts.append(cell)

            kinds = ground_truth(trace, cap, b_interval)
            truth.append(
                {
                    "capability": cap,
                    "interval": list(b_interval),
                    "attacked": bool(kinds),
                    "attacks": kinds,
                }
            )
            logger.debug("%s %s: %s", cap, b_interval, verdict.verdict_class.value)

    final = trace.final_state
    return DetectionReport(
        scenario=spec.name,
        digest=trace.scenario_digest,
        seed=trace.seed,
        perspective=spec.perspective,
        baseline_mode=spec.baseline,
        verdict=aggregate_verdicts(verdict_objects).value,
        expect=spec.expect,
        verdicts=verdicts,
        ground_truth=truth,
        evaluation=evaluate(verdicts, truth),
        attacks=[
            {**asdict(a), "target_nodes": list(a.target_nodes)} for a in trace.attacks
        ],
        energy=energy_summary(trace),
        ir=ir_summary(trace),
        lineage=[asdict(entry) for entry in trace.lineage],
        lazy=lazy_flags(trace, cfg),
        sinkholed=dict(final.get("sinkholed", {})),
        dropped=dict(final.get("dropped", {})),
        uncovered=dict(final.get("uncovered", {})),
        human_impact_tags=list(spec.human_impact_tags),
        effective_config=spec.to_dict(),
    )


def _fmt(value: float) -> str:
    return format(value, ".4g")


def explain(report: Dict[str, Any], capability: str) -> List[str]:
    """Human-readable evidence behind every verdict of one capability"""
    cells = [v for v in report["verdicts"] if v["capability"] == capability]
    if not cells:
        raise UnknownCapability(capability)
    labels = {
        tuple(row["interval"]): row["label"]
        for row in report.get("evaluation", [])
        if row["capability"] == capability
    }

    lines = [f"Scenario: {report['scenario']} (seed {report['seed']})"]
    lines.append(f"Capability: {capability}")
    for cell in cells:
        start, end = cell["interval"]
        a_start, a_end = cell.get("baseline_interval", cell["interval"])
        lines.append("")
        lines.append(
            f"Windows [{start}, {end}) against baseline [{a_start}, {a_end}): {cell['class']}"
        )
        tps = cell["tps"]
        lines.append(f"  TPS holds: {tps['holds']}")
        for name in ("nA_scalar", "nA_dist", "nT_scalar", "nT_dist"):
            holds = str(tps[name]["holds"])
            lines.append(f"    {name:<10} {holds:<5} score={_fmt(tps[name]['score'])}")
        for key in ("cost_condition", "deploy_condition"):
            cond = cell[key]
            lines.append(
                f"  {cond['metric']}: holds={cond['holds']} "
                f"dominance={cond['dominance']} dissimilarity={cond['dissimilarity']}"
            )
            lines.append(
                f"    baseline={_fmt(cond['baseline_total'])} "
                f"observed={_fmt(cond['observed_total'])} "
                f"ratio={_fmt(cond['ratio'])} distance={_fmt(cond['distance'])}"
            )
        label = labels.get((start, end))
        if label is not None:
            lines.append(f"  Evaluation: {label}")

    lazy = report.get("lazy", {}).get(capability)
    if lazy is not None:
        flagged = ", ".join(str(i) for i in lazy["flagged"]) or "none"
        lines.append("")
        lines.append(f"Lazy instances: {flagged} (separation {_fmt(lazy['separation'])})")
    return lines

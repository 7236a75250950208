"""
TDoS Classifier
===============

Demand-side similarity (TPS) gates the verdict: two states with dissimilar
demand are a demand shift, never a TDoS. Under similar demand, upkeep cost
growth gives U-TDoS, node-spread growth gives D-TDoS, both give U+D-TDoS.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Optional

from utils.exceptions import LengthMismatch

from .config import DetectorConfig
from .operators import Similarity, dist_similar, dominates, scalar_similar
from .summary import StateSummary


class VerdictClass(str, Enum):
    NORMAL = "Normal"
    DEMAND_SHIFT = "NotTdosDemandShift"
    UTDOS = "UTdos"
    DTDOS = "DTdos"
    UDTDOS = "UDTdos"

    @property
    def cost_evidence(self) -> bool:
        return self in (VerdictClass.UTDOS, VerdictClass.UDTDOS)

    @property
    def deploy_evidence(self) -> bool:
        return self in (VerdictClass.DTDOS, VerdictClass.UDTDOS)

    @property
    def is_tdos(self) -> bool:
        return self.cost_evidence or self.deploy_evidence


@dataclass(frozen=True)
class TpsEvidence:
    nA_scalar: Similarity
    nA_dist: Similarity
    nT_scalar: Similarity
    nT_dist: Similarity

    @property
    def holds(self) -> bool:
        return all((self.nA_scalar, self.nA_dist, self.nT_scalar, self.nT_dist))

    def to_dict(self) -> Dict:
        return {
            "holds": self.holds,
            **{
                name: {"holds": sim.holds, "score": sim.score}
                for name, sim in (
                    ("nA_scalar", self.nA_scalar),
                    ("nA_dist", self.nA_dist),
                    ("nT_scalar", self.nT_scalar),
                    ("nT_dist", self.nT_dist),
                )
            },
        }


@dataclass(frozen=True)
class GrowthCondition:
    """Dominance of B's total over A's plus dissimilarity of their shapes"""

    metric: str
    dominance: bool
    dissimilarity: bool
    baseline_total: float
    observed_total: float
    distance: float
    combine: str = "and"

    @property
    def holds(self) -> bool:
        if self.combine == "or":
            return self.dominance or self.dissimilarity
        return self.dominance and self.dissimilarity

    @property
    def ratio(self) -> float:
        return self.observed_total / max(self.baseline_total, 1e-12)

    def to_dict(self) -> Dict:
        return {
            "metric": self.metric,
            "holds": self.holds,
            "dominance": self.dominance,
            "dissimilarity": self.dissimilarity,
            "baseline_total": self.baseline_total,
            "observed_total": self.observed_total,
            "ratio": self.ratio,
            "distance": self.distance,
        }


@dataclass(frozen=True)
class Verdict:
    verdict_class: VerdictClass
    capability_id: str
    interval: tuple
    tps: TpsEvidence
    cost_condition: GrowthCondition
    deploy_condition: GrowthCondition

    def to_dict(self) -> Dict:
        return {
            "capability": self.capability_id,
            "interval": list(self.interval),
            "class": self.verdict_class.value,
            "tps": self.tps.to_dict(),
            "cost_condition": self.cost_condition.to_dict(),
            "deploy_condition": self.deploy_condition.to_dict(),
        }


def verdict_from_conditions(tps: bool, cost: bool, deploy: bool) -> VerdictClass:
    """The full (TPS x cost x deploy) truth table"""
    if not tps:
        return VerdictClass.DEMAND_SHIFT
    if cost and deploy:
        return VerdictClass.UDTDOS
    if cost:
        return VerdictClass.UTDOS
    if deploy:
        return VerdictClass.DTDOS
    return VerdictClass.NORMAL


def _check_lengths(a: StateSummary, b: StateSummary):
    if a.length != b.length:
        raise LengthMismatch(
            f"summaries cover {a.length} and {b.length} windows; lengths must match"
        )


def tps_check(
    a: StateSummary, b: StateSummary, cfg: Optional[DetectorConfig] = None
) -> TpsEvidence:
    """Tactical provisioning similarity over nA and nT"""
    cfg = cfg or DetectorConfig()
    _check_lengths(a, b)
    return TpsEvidence(
        nA_scalar=scalar_similar(a.nA_total, b.nA_total, cfg.eps_scalar),
        nA_dist=dist_similar(a.nA_dist, b.nA_dist, cfg.delta_dist, cfg.min_windows),
        nT_scalar=scalar_similar(a.nT_total, b.nT_total, cfg.eps_scalar),
        nT_dist=dist_similar(a.nT_dist, b.nT_dist, cfg.delta_dist, cfg.min_windows),
    )


def _growth(metric, a_total, b_total, a_dist, b_dist, cfg: DetectorConfig) -> GrowthCondition:
    shape = dist_similar(a_dist, b_dist, cfg.delta_dist, cfg.min_windows)
    return GrowthCondition(
        metric=metric,
        dominance=dominates(a_total, b_total, cfg.kappa, cfg.floor(metric)),
        dissimilarity=not shape.holds,
        baseline_total=float(a_total),
        observed_total=float(b_total),
        distance=shape.score,
        combine=cfg.combine,
    )


def classify(
    a: StateSummary, b: StateSummary, cfg: Optional[DetectorConfig] = None
) -> Verdict:
    """Classify state B against baseline state A"""
    cfg = cfg or DetectorConfig()
    tps = tps_check(a, b, cfg)
    cost = _growth("nC", a.nC_total, b.nC_total, a.nC_dist, b.nC_dist, cfg)
    deploy = _growth(
        "tD", a.tD_total(cfg.td_total), b.tD_total(cfg.td_total), a.tD_dist, b.tD_dist, cfg
    )
    return Verdict(
        verdict_class=verdict_from_conditions(tps.holds, cost.holds, deploy.holds),
        capability_id=b.capability_id,
        interval=b.interval,
        tps=tps,
        cost_condition=cost,
        deploy_condition=deploy,
    )


def aggregate_verdicts(verdicts: Iterable) -> VerdictClass:
    """Scenario-level verdict over every (capability, interval) cell"""
    classes = [
        v.verdict_class if isinstance(v, Verdict) else VerdictClass(v) for v in verdicts
    ]
    cost = any(c.cost_evidence for c in classes)
    deploy = any(c.deploy_evidence for c in classes)
    if cost or deploy:
        return verdict_from_conditions(True, cost, deploy)
    if any(c is VerdictClass.DEMAND_SHIFT for c in classes):
        return VerdictClass.DEMAND_SHIFT
    return VerdictClass.NORMAL

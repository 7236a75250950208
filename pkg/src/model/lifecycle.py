"""
Capability Lifecycle
====================

Onboarding -> Deployed <-> Adaptation -> Undeployed. Surveillance is not a
state of its own: it is the monitoring flag that stays on through Deployed
and Adaptation.
"""

from dataclasses import replace
from enum import Enum
from typing import Dict, Tuple

from utils.exceptions import IllegalTransition


class LifecycleState(str, Enum):
    ONBOARDING = "Onboarding"
    DEPLOYED = "Deployed"
    ADAPTATION = "Adaptation"
    UNDEPLOYED = "Undeployed"

    @property
    def surveilled(self) -> bool:
        return self in (LifecycleState.DEPLOYED, LifecycleState.ADAPTATION)


class LifecycleEvent(str, Enum):
    ONBOARD_COMPLETE = "OnboardComplete"
    DEPLOY_COMPLETE = "DeployComplete"
    ADAPT_START = "AdaptStart"
    ADAPT_END = "AdaptEnd"
    UNDEPLOY = "Undeploy"


TRANSITIONS: Dict[Tuple[LifecycleState, LifecycleEvent], LifecycleState] = {
    (LifecycleState.ONBOARDING, LifecycleEvent.ONBOARD_COMPLETE): LifecycleState.DEPLOYED,
    (LifecycleState.ONBOARDING, LifecycleEvent.DEPLOY_COMPLETE): LifecycleState.DEPLOYED,
    (LifecycleState.DEPLOYED, LifecycleEvent.ADAPT_START): LifecycleState.ADAPTATION,
    (LifecycleState.ADAPTATION, LifecycleEvent.ADAPT_END): LifecycleState.DEPLOYED,
    (LifecycleState.DEPLOYED, LifecycleEvent.UNDEPLOY): LifecycleState.UNDEPLOYED,
    (LifecycleState.ADAPTATION, LifecycleEvent.UNDEPLOY): LifecycleState.UNDEPLOYED,
}


def next_state(state: LifecycleState, event: LifecycleEvent) -> LifecycleState:
    try:
        return TRANSITIONS[(state, event)]
    except KeyError:
        raise IllegalTransition(state, event) from None


def advance_lifecycle(capability, event: LifecycleEvent):
    """Return the capability after applying a lifecycle event.

    Undeploy drops every instance reference; the engine kills the instances
    themselves.
    """
    target = next_state(capability.lifecycle, LifecycleEvent(event))
    if target is LifecycleState.UNDEPLOYED:
        return replace(capability, lifecycle=target, instances=frozenset())
    return replace(capability, lifecycle=target)

"""
Exception Hierarchy
===================

Every error raised by the simulator derives from TdosSimError so the CLI
can turn library failures into exit codes in one place.
"""

from typing import Optional


class TdosSimError(Exception):
    """Base class for simulator errors"""


class CycleError(TdosSimError):
    """Capability dependency graph contains a cycle"""

    def __init__(self, cycle):
        self.cycle = list(cycle)
        path = " -> ".join(str(edge[0]) for edge in self.cycle)
        super().__init__(f"dependency cycle: {path} -> {self.cycle[0][0]}")


class UnknownCapability(TdosSimError, KeyError):
    """A capability id does not resolve"""

    def __init__(self, capability_id: str):
        self.capability_id = capability_id
        super().__init__(f"unknown capability '{capability_id}'")

    def __str__(self):
        return self.args[0]


class IllegalTransition(TdosSimError):
    """Lifecycle event not valid in the current state"""

    def __init__(self, state, event):
        self.state = state
        self.event = event
        super().__init__(f"event {event.value} is not valid in state {state.value}")


class InternalScheduleError(TdosSimError):
    """An event was scheduled before the current simulated time"""


class InvariantViolation(TdosSimError):
    """Engine state broke a model invariant"""


class NoEligibleNode(TdosSimError):
    """Every node is recharging or full"""


class NoImageAvailable(TdosSimError):
    """Marketplace holds no usable image for a capability"""


class NoSecondaryCluster(TdosSimError):
    """Supply-chain taint needs a secondary cluster the scenario lacks"""


class LengthMismatch(TdosSimError, ValueError):
    """Two series or summaries have different lengths"""


class IntervalOutOfRange(TdosSimError, IndexError):
    """Requested window interval is outside the trace or too short"""


class TooFewInstances(TdosSimError, ValueError):
    """Productivity clustering needs at least two instances"""


class ParseError(TdosSimError):
    """Scenario file could not be parsed"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class ValidationError(TdosSimError, ValueError):
    """Scenario violates a declared invariant"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")

"""
Energy Package
==============

Battery state, the affine power model, recharge policy, the IR-signature
proxy and the event-log energy ledger.
"""

from .battery import (
    BatteryState,
    EnergyDraw,
    InstanceActivity,
    PowerModel,
    apply_draw,
    energy_tick,
    finish_recharge,
    instantiation_draw,
    needs_recharge,
    recharge_cycle,
)
from .ir import IrSignature, ir_proxy
from .ledger import NodeLedger, energy_ledger

__all__ = [
    "BatteryState",
    "EnergyDraw",
    "InstanceActivity",
    "PowerModel",
    "apply_draw",
    "energy_tick",
    "finish_recharge",
    "instantiation_draw",
    "needs_recharge",
    "recharge_cycle",
    "IrSignature",
    "ir_proxy",
    "NodeLedger",
    "energy_ledger",
]

"""
Adversary
=========

Scripted attack specifications and the injectors that apply them.
"""

from .attacks import DEFAULT_INTENSITY, TDOS_CAPABLE, AttackKind, AttackSpec
from .injectors import (
    activate_supply_chain_taint,
    apply_decoy_field,
    apply_denial_of_sleep,
    apply_flash_crowd,
    apply_iedos,
    apply_wedos,
    decoy_positions,
)

__all__ = [
    "DEFAULT_INTENSITY",
    "TDOS_CAPABLE",
    "AttackKind",
    "AttackSpec",
    "activate_supply_chain_taint",
    "apply_decoy_field",
    "apply_denial_of_sleep",
    "apply_flash_crowd",
    "apply_iedos",
    "apply_wedos",
    "decoy_positions",
]

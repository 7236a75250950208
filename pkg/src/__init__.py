"""
TDoS Simulator
==============

Deterministic discrete-event simulator of a tactical edge cloud with
EDoS/TDoS attack injection and batch detection.
"""

__version__ = "1.0.0"

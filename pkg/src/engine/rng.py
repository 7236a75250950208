"""
Per-subsystem random streams.

Every stream is derived from the master seed and a fixed label, so a new
attack drawing adversary randomness never shifts the mission's draws. The
orchestrator is deterministic and draws from no stream.
"""

import hashlib

import numpy as np


def _label_key(label: str) -> int:
    return int.from_bytes(hashlib.sha256(label.encode("utf-8")).digest()[:4], "big")


def stream(seed: int, label: str) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be a non-negative integer")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(_label_key(label),))
    return np.random.default_rng(sequence)


class RngStreams:
    """The engine streams for one run"""

    def __init__(self, seed: int):
        self.seed = seed
        self.mission = stream(seed, "mission")
        self.adversary = stream(seed, "adversary")

#!/usr/bin/env python3
"""
TDoS Simulator - Main Entry Point
=================================

Deterministic discrete-event simulator of a tactical edge cloud with
EDoS/TDoS attack injection and detection.

Usage:
    python tdos_sim.py run src/scenarios/conop1.yaml --expect UTdos
    python tdos_sim.py validate src/scenarios/conop4.yaml
    python tdos_sim.py corpus --out out/corpus
    python tdos_sim.py explain out/report.json isr
"""

import sys
from pathlib import Path

# Add src directory to path for imports
sys.path.insert(0, str(Path(__file__).parent / "src"))

from runners.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())

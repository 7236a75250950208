"""
Command Line Argument Parser for the TDoS Simulator
===================================================

This module provides the command line verbs: run, validate, corpus and
explain.
"""

import argparse
from pathlib import Path

VERDICT_CHOICES = ["Normal", "NotTdosDemandShift", "UTdos", "DTdos", "UDTdos"]


def create_argument_parser():
    """Create and configure the argument parser"""
    parser = argparse.ArgumentParser(
        prog="tdos-sim",
        description="Tactical edge cloud simulator with TDoS attack injection and detection",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Enable debug logging"
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # Run one scenario end to end
    run_parser = subparsers.add_parser("run", help="Simulate a scenario and classify it")
    run_parser.add_argument("scenario", type=Path, help="Scenario file (YAML)")
    run_parser.add_argument("--seed", type=int, help="Override the scenario seed")
    run_parser.add_argument(
        "--out", type=Path, default=Path("out"), help="Output directory"
    )
    run_parser.add_argument(
        "--expect",
        choices=VERDICT_CHOICES,
        help="Exit with status 1 unless the scenario verdict matches",
    )

    # Validate a scenario file
    validate_parser = subparsers.add_parser("validate", help="Validate a scenario file")
    validate_parser.add_argument("scenario", type=Path, help="Scenario file (YAML)")

    # Bundled corpus
    corpus_parser = subparsers.add_parser(
        "corpus", help="Run every bundled scenario and print the acceptance table"
    )
    corpus_parser.add_argument(
        "--out", type=Path, default=Path("out/corpus"), help="Output directory"
    )
    corpus_parser.add_argument("--seed", type=int, help="Override every scenario seed")

    # Explain a verdict
    explain_parser = subparsers.add_parser(
        "explain", help="Print the per-condition evidence behind a verdict"
    )
    explain_parser.add_argument("report", type=Path, help="report.json from a run")
    explain_parser.add_argument("capability", help="Capability id")

    return parser


def parse_args(args=None):
    """Parse command line arguments"""
    parser = create_argument_parser()
    return parser.parse_args(args)

"""
Command Line Interface
======================

Dispatches the parsed verbs and turns library errors into exit codes:
0 success, 1 verdict mismatch, 2 parse or validation error, 3 I/O error.
"""

import json
import logging
import sys
from typing import List, Optional

from utils.argument_parser import parse_args
from utils.config import load_scenario
from utils.exceptions import TdosSimError
from utils.export import read_json

from .pipeline import run_corpus, run_pipeline
from .report import explain

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INVALID = 2
EXIT_IO = 3


def configure_logging(verbose: bool = False):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


def handle_cli_commands(args) -> int:
    """Handle command line interface commands"""
    if args.command == "run":
        return run_pipeline(args.scenario, args.out, expect=args.expect, seed=args.seed)

    if args.command == "validate":
        spec = load_scenario(args.scenario)
        print(f"Scenario '{spec.name}' is valid")
        print(f"  windows: {spec.n_windows} x {spec.window_length:g} s")
        print(f"  nodes: {len(spec.nodes)}, capabilities: {len(spec.capabilities)}")
        print(f"  attacks: {', '.join(a.kind.value for a in spec.attacks) or 'none'}")
        print(f"  digest: {spec.digest()}")
        return EXIT_OK

    if args.command == "corpus":
        return run_corpus(args.out, seed=args.seed)

    if args.command == "explain":
        report = read_json(args.report)
        for line in explain(report, args.capability):
            print(line)
        return EXIT_OK

    print("No command given; see --help")
    return EXIT_INVALID


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = parse_args(argv)
    configure_logging(args.verbose)
    try:
        return handle_cli_commands(args)
    except (TdosSimError, json.JSONDecodeError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO

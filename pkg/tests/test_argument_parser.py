"""
Tests for command line argument parser
"""

import pytest
import sys
import os
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from utils.argument_parser import create_argument_parser, parse_args


class TestArgumentParser:
    """Test command line argument parsing"""

    def test_create_argument_parser(self):
        """Test creating argument parser"""
        parser = create_argument_parser()

        assert parser is not None
        assert parser.prog == 'tdos-sim'

    def test_parse_help(self):
        """Test parsing help argument"""
        with pytest.raises(SystemExit):
            parse_args(['--help'])

    def test_parse_run_command(self):
        """Test parsing run command"""
        args = parse_args([
            'run', 'scenarios/conop1.yaml',
            '--seed', '7',
            '--out', 'results',
            '--expect', 'UTdos',
        ])

        assert args.command == 'run'
        assert args.scenario == Path('scenarios/conop1.yaml')
        assert args.seed == 7
        assert args.out == Path('results')
        assert args.expect == 'UTdos'

    def test_run_defaults(self):
        """Test run command defaults"""
        args = parse_args(['run', 'toy.yaml'])

        assert args.seed is None
        assert args.out == Path('out')
        assert args.expect is None
        assert args.verbose is False

    def test_parse_unknown_verdict(self):
        """Test that --expect only accepts verdict classes"""
        with pytest.raises(SystemExit):
            parse_args(['run', 'toy.yaml', '--expect', 'Maybe'])

    def test_parse_validate_command(self):
        """Test parsing validate command"""
        args = parse_args(['validate', 'toy.yaml'])

        assert args.command == 'validate'
        assert args.scenario == Path('toy.yaml')

    def test_parse_corpus_command(self):
        """Test parsing corpus command"""
        args = parse_args(['-v', 'corpus', '--seed', '3'])

        assert args.command == 'corpus'
        assert args.out == Path('out/corpus')
        assert args.seed == 3
        assert args.verbose is True

    def test_parse_explain_command(self):
        """Test parsing explain command"""
        args = parse_args(['explain', 'out/report.json', 'isr'])

        assert args.command == 'explain'
        assert args.report == Path('out/report.json')
        assert args.capability == 'isr'

    def test_parse_no_command(self):
        """Test parsing with no command"""
        args = parse_args([])

        assert args.command is None

"""
Utility Functions Package
========================

Contains the argument parser, the exception hierarchy and export helpers.
The scenario config layer (utils.config) is imported directly because it
depends on the domain packages.
"""

from .argument_parser import create_argument_parser, parse_args
from .exceptions import ParseError, TdosSimError, ValidationError

__all__ = [
    "create_argument_parser",
    "parse_args",
    "ParseError",
    "TdosSimError",
    "ValidationError",
]

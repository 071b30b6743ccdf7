"""
sumform command-line tool.
"""

from sumform.cli.main import main, run, CommandConfig, CommandResult
from sumform.cli.specs import parse_function_spec

__all__ = ["main", "run", "CommandConfig", "CommandResult", "parse_function_spec"]

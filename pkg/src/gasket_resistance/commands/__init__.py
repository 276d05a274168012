"""Command functions behind the `gasket` subcommands."""

from gasket_resistance.commands.base import RunRecorder, error_response, exit_code_for, verify_manifest
from gasket_resistance.commands.exponents import cmd_exponents
from gasket_resistance.commands.generate import cmd_generate
from gasket_resistance.commands.resist import cmd_resist
from gasket_resistance.commands.verify import cmd_verify, random_network, run_suite
from gasket_resistance.commands.walk import cmd_walk

__all__ = [
    "RunRecorder",
    "cmd_exponents",
    "cmd_generate",
    "cmd_resist",
    "cmd_verify",
    "cmd_walk",
    "error_response",
    "exit_code_for",
    "random_network",
    "run_suite",
    "verify_manifest",
]

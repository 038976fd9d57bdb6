"""
Command handlers for the command-line front end, one module per command group.
"""

from .base import CommandContext, CommandResult
from .density import handle_density
from .scan import handle_scan
from .series import handle_expand, handle_hecke, handle_sturm
from .verify import handle_verify

__all__ = [
    "CommandContext",
    "CommandResult",
    "handle_density",
    "handle_expand",
    "handle_hecke",
    "handle_scan",
    "handle_sturm",
    "handle_verify"
]

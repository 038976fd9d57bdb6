"""
Shared command plumbing: the resolved run context and the command result.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from config.settings import settings
from ...services.file_handler import FileHandler


@dataclass
class CommandContext:
    """Settings after CLI overrides"""
    output_format: str = "json"
    fixtures_dir: Path = field(default_factory=lambda: settings.FIXTURES_DIR)
    output_dir: Path = field(default_factory=lambda: settings.OUTPUT_DIR)
    jobs: int = field(default_factory=lambda: settings.JOBS)
    progress: bool = field(default_factory=lambda: settings.PROGRESS)
    output_name: Optional[str] = None

    def file_handler(self) -> FileHandler:
        return FileHandler(self.fixtures_dir, self.output_dir)


@dataclass
class CommandResult:
    """Payload of a command plus the exit code it ends with"""
    payload: Dict[str, Any]
    render_text: Callable[[Dict[str, Any]], str]
    exit_code: int = 0

    def render(self, output_format: str) -> str:
        if output_format == "text":
            return self.render_text(self.payload)
        return json.dumps(self.payload, indent=2, default=str)

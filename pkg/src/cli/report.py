"""The run report: per-command results, JSON schema and text rendering."""

from __future__ import annotations

import enum
import hashlib
import json
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from src.cli.templates import list_templates, render_template
from src.shared.types import REPORT_SCHEMA_VERSION, ExitCode, Verdict


class CommandStatus(str, enum.Enum):
    """How a command finished."""

    OK = "ok"
    ERROR = "error"
    RESOURCE_LIMIT = "resource_limit"


class CommandResult(BaseModel):
    """Result of one command.

    Attributes:
        command: The command line as written, e.g. `check star (0,0)..(3,3)`.
        name: Command name; selects the text template.
        status: ok, error or resource_limit.
        verdict: Verdict of a check or probe, None for plain computations.
        data: JSON-ready payload.
        error: Diagnostic when status is not ok.
    """

    command: str
    name: str
    status: CommandStatus = CommandStatus.OK
    verdict: Verdict | None = None
    data: dict[str, Any] = Field(default_factory=dict)
    error: str | None = None


class Report(BaseModel):
    """Everything one run produced, in command order."""

    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=REPORT_SCHEMA_VERSION, alias="schema")
    engine_version: str
    input_digest: str
    results: list[CommandResult] = Field(default_factory=list)

    def exit_code(self) -> ExitCode:
        """Resource limit > error > refuted > inconclusive > ok."""
        statuses = {r.status for r in self.results}
        verdicts = {r.verdict for r in self.results}
        if CommandStatus.RESOURCE_LIMIT in statuses:
            return ExitCode.RESOURCE_LIMIT
        if CommandStatus.ERROR in statuses:
            return ExitCode.USAGE
        if Verdict.REFUTED in verdicts:
            return ExitCode.REFUTED
        if Verdict.INCONCLUSIVE in verdicts:
            return ExitCode.INCONCLUSIVE
        return ExitCode.OK


def input_digest(text: str) -> str:
    """sha256 of the input text, prefixed with the algorithm name."""
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def render_json(report: Report, indent: int = 2) -> str:
    """Serialize with sorted keys so identical runs give identical bytes."""
    payload = report.model_dump(mode="json", by_alias=True)
    return json.dumps(payload, indent=indent, sort_keys=True)


TEMPLATE_FOR = {
    "tail": "generators",
    "gens": "generators",
    "tau": "probe",
    "qgrhom": "probe",
    "saturate": "probe",
    "chi1": "outcome",
    "check": "outcome",
}


def render_text(report: Report) -> str:
    """Render every result through its template, errors through `error`."""
    available = set(list_templates())
    blocks = [
        render_template(
            "header",
            engine_version=report.engine_version,
            input_digest=report.input_digest,
        )
    ]
    for result in report.results:
        template_id = TEMPLATE_FOR.get(result.name, result.name)
        if template_id not in available:
            template_id = "generic"
        if result.status != CommandStatus.OK:
            template_id = "error"
        blocks.append(render_template(template_id, result=result.model_dump(mode="json")))
    return "\n\n".join(blocks) + "\n"

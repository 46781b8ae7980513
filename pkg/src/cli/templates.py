"""Report template loading and rendering."""

from pathlib import Path
from typing import Any

import yaml
from jinja2 import Environment

_TEMPLATES_DIR = Path(__file__).parent.parent.parent / "report_templates"

_ENV = Environment(autoescape=False)


def load_template(template_id: str) -> dict[str, Any]:
    """Load a report template from YAML.

    Args:
        template_id: Template filename without extension.

    Returns:
        Parsed template dict with name, description, body fields.

    Raises:
        FileNotFoundError: If template file does not exist.
    """
    path = _TEMPLATES_DIR / f"{template_id}.yaml"
    if not path.exists():
        raise FileNotFoundError(f"Template not found: {template_id}")
    with open(path) as f:
        data: dict[str, Any] = yaml.safe_load(f)
    return data


def render_template(template_id: str, **variables: Any) -> str:
    """Render a template body with Jinja2 variables.

    Args:
        template_id: Template filename without extension.
        **variables: Values for Jinja2 substitution.

    Returns:
        Rendered text without trailing whitespace.
    """
    data = load_template(template_id)
    return _ENV.from_string(data["body"]).render(**variables).rstrip()


def list_templates() -> list[str]:
    """List all available template names.

    Returns:
        Sorted template IDs (filenames without .yaml extension).
    """
    return sorted(p.stem for p in _TEMPLATES_DIR.glob("*.yaml"))

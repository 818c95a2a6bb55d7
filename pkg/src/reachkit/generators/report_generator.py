from pathlib import Path
from typing import Any, Dict, Optional
import json
import logging

from jinja2 import Environment, FileSystemLoader

from .random_graphs import SCHEMA_VERSION

DEFAULT_TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"


class ReportGenerator:
    """Turns analysis results into versioned JSON and a markdown report."""

    def __init__(self, config: Dict[str, Any] = None, template_dir: Optional[str] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)
        report_config = self.config.get('report', {})
        self.template_dir = Path(template_dir or report_config.get('template_dir') or DEFAULT_TEMPLATE_DIR)
        self.template_name = report_config.get('template', 'analysis_report.md')

        self.env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.env.filters['format_set'] = self._format_set
        self.env.filters['format_list'] = self._format_list

    def build_report(self, analysis: Dict[str, Any], source: Optional[str] = None) -> Dict[str, Any]:
        report = {'schema_version': SCHEMA_VERSION, 'kind': 'analysis'}
        if source is not None:
            report['source'] = source
        report.update(analysis)
        return report

    @staticmethod
    def to_json(report: Dict[str, Any]) -> str:
        """Stable serialization: sorted keys, no timestamps, trailing newline."""
        return json.dumps(report, indent=2, sort_keys=True) + "\n"

    def render_markdown(self, report: Dict[str, Any]) -> str:
        template = self.env.get_template(self.template_name)
        return template.render(report=report)

    def write(self, report: Dict[str, Any], json_path: Optional[str] = None,
              markdown_path: Optional[str] = None) -> None:
        """Write the JSON and/or markdown renditions; ``'-'`` for JSON means stdout."""
        if json_path == '-':
            print(self.to_json(report), end='')
        elif json_path:
            Path(json_path).write_text(self.to_json(report), encoding='utf-8')
            self.logger.info(f"💾 JSON report written to {json_path}")
        if markdown_path:
            Path(markdown_path).write_text(self.render_markdown(report), encoding='utf-8')
            self.logger.info(f"📝 markdown report written to {markdown_path}")

    def _format_set(self, items) -> str:
        if not items:
            return "∅"
        return "{" + ", ".join(str(item) for item in items) + "}"

    def _format_list(self, items: list, separator: str = ", ") -> str:
        return separator.join(str(item) for item in items)

"""AbReport serialization: JSON, loss-curve CSV and Markdown."""

import csv
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from ..models.demo import AbReport

TEMPLATES_DIR = Path(__file__).parent.parent / "templates"
AB_REPORT_TEMPLATE = "ab_report.md.j2"

AB_REPORT_FIELDS = ["steps", "learning_rate", "seed", "stft", "over_suppression_reduction", "arms"]
ARM_FIELDS = [
    "loss_name",
    "final_si_sdr_db",
    "mae_over",
    "mae_under",
    "loss_curve",
    "mixture_si_sdr_db",
    "si_sdr_improvement_db",
]


def _write_json(document: object, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2)
        f.write("\n")


def write_report_json(report: AbReport, path: Path, include_curves: bool = True) -> None:
    """Write one AbReport as JSON."""
    _write_json(report.to_dict(include_curves=include_curves), path)


def sweep_to_dict(results: Sequence[Tuple[float, AbReport]]) -> Dict[str, List[Dict[str, Any]]]:
    """One entry per SNR, curves omitted."""
    return {
        "sweep": [
            {"snr_db": snr_db, **report.to_dict(include_curves=False)}
            for snr_db, report in results
        ]
    }


def write_sweep_json(results: Sequence[Tuple[float, AbReport]], path: Path) -> None:
    """Write an SNR sweep as one JSON document."""
    _write_json(sweep_to_dict(results), path)


def write_loss_curves_csv(report: AbReport, path: Path) -> None:
    """Write per-step losses, one column per arm."""
    names = list(report.arms)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["step", *names])
        for step in range(report.steps):
            writer.writerow(
                [step, *(f"{report.arms[name].loss_curve[step]:.8f}" for name in names)]
            )


def render_markdown(
    report: AbReport, scenario: str = "synthetic", created: Optional[datetime] = None
) -> str:
    """Render the report as Markdown with YAML frontmatter.

    Args:
        report: Report to render
        scenario: Human-readable scenario name
        created: Timestamp for the frontmatter; defaults to now

    Returns:
        Markdown document
    """
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATES_DIR)),
        undefined=StrictUndefined,
        keep_trailing_newline=True,
    )
    template = env.get_template(AB_REPORT_TEMPLATE)
    return template.render(
        report=report,
        scenario=scenario,
        created=(created or datetime.now()).strftime("%Y-%m-%dT%H:%M:%S"),
    )


def write_markdown(report: AbReport, path: Path, scenario: str = "synthetic") -> None:
    """Render the report to a Markdown file."""
    Path(path).write_text(render_markdown(report, scenario), encoding="utf-8")

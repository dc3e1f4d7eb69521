"""Batch scoring of (reference, estimate) pairs listed in a manifest."""

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ManifestError
from ..models.results import RowFailure
from ..models.stft_config import StftConfig
from ..signal.wav_io import load_wav
from .signal_metrics import SUPPRESSION_CONFIG, sdr_metric, si_sdr_metric, suppression_mae
from .transcripts import character_error_rate, word_error_rate

logger = logging.getLogger(__name__)

SCORE_COLUMNS = [
    "utterance",
    "reference",
    "estimate",
    "si_sdr_db",
    "sdr_db",
    "mae_over",
    "mae_under",
    "wer",
    "cer",
]
METRIC_COLUMNS = SCORE_COLUMNS[3:]
ALL_METRICS = ("si_sdr", "sdr", "mae", "wer", "cer")
SUMMARY_LABEL = "mean"


@dataclass(frozen=True)
class ScoreEntry:
    """One manifest line."""

    line: int
    reference: Path
    estimate: Path
    reference_transcript: Optional[str] = None
    hypothesis_transcript: Optional[str] = None

    @property
    def has_transcripts(self) -> bool:
        return self.reference_transcript is not None


@dataclass
class ScoreRow:
    """Metric values of one scored pair; unselected metrics stay None."""

    utterance: str
    reference: str
    estimate: str
    values: Dict[str, Optional[float]] = field(
        default_factory=lambda: {column: None for column in METRIC_COLUMNS}
    )

    def to_dict(self) -> Dict[str, object]:
        return {
            "utterance": self.utterance,
            "reference": self.reference,
            "estimate": self.estimate,
            **self.values,
        }


def parse_score_manifest(path: Path) -> List[ScoreEntry]:
    """Parse a tab-separated scoring manifest.

    Each non-blank, non-comment line holds ``reference<TAB>estimate`` and
    optionally ``<TAB>reference transcript<TAB>hypothesis transcript``.
    Relative paths are resolved against the manifest's directory.

    Raises:
        ManifestError: If the file is missing or a line has the wrong field count
    """
    path = Path(path)
    if not path.is_file():
        raise ManifestError(f"Manifest not found: {path}")

    entries = []
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) not in (2, 4):
            raise ManifestError(
                f"{path}:{number}: expected 2 or 4 tab-separated fields, got {len(fields)}"
            )
        reference, estimate = (path.parent / f.strip() for f in fields[:2])
        transcripts = (fields[2], fields[3]) if len(fields) == 4 else (None, None)
        entries.append(ScoreEntry(number, reference, estimate, *transcripts))
    return entries


def score_entry(
    entry: ScoreEntry,
    metrics: Sequence[str] = ALL_METRICS,
    config: StftConfig = SUPPRESSION_CONFIG,
) -> ScoreRow:
    """Compute the selected metrics for one manifest entry."""
    row = ScoreRow(
        utterance=entry.estimate.stem, reference=str(entry.reference), estimate=str(entry.estimate)
    )
    reference = load_wav(entry.reference)
    estimate = load_wav(entry.estimate)

    if "si_sdr" in metrics:
        row.values["si_sdr_db"] = si_sdr_metric(estimate, reference)
    if "sdr" in metrics:
        row.values["sdr_db"] = sdr_metric(estimate, reference)
    if "mae" in metrics:
        report = suppression_mae(estimate, reference, config)
        row.values["mae_over"] = report.mae_over
        row.values["mae_under"] = report.mae_under
    if entry.has_transcripts:
        if "wer" in metrics:
            row.values["wer"] = word_error_rate(
                entry.reference_transcript or "", entry.hypothesis_transcript or ""
            )
        if "cer" in metrics:
            row.values["cer"] = character_error_rate(
                entry.reference_transcript or "", entry.hypothesis_transcript or ""
            )
    return row


def score_entries(
    entries: Iterable[ScoreEntry],
    metrics: Sequence[str] = ALL_METRICS,
    config: StftConfig = SUPPRESSION_CONFIG,
) -> Tuple[List[ScoreRow], List[RowFailure]]:
    """Score entries in manifest order; failing rows are recorded and skipped."""
    rows: List[ScoreRow] = []
    failures: List[RowFailure] = []
    for entry in entries:
        try:
            rows.append(score_entry(entry, metrics, config))
        except (OSError, ValueError) as e:
            logger.debug("Skipping manifest line %d: %s", entry.line, e)
            failures.append(RowFailure(entry.line, str(e)))
    return rows, failures


def summarize(rows: Sequence[ScoreRow]) -> ScoreRow:
    """Mean of each metric over the rows that report it."""
    summary = ScoreRow(utterance=SUMMARY_LABEL, reference="", estimate="")
    for column in METRIC_COLUMNS:
        values = [row.values[column] for row in rows if row.values[column] is not None]
        summary.values[column] = float(np.mean(values)) if values else None
    return summary


def _csv_value(value: object) -> object:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6f}"
    return value


def write_score_csv(rows: Sequence[ScoreRow], path: Path) -> None:
    """Write one CSV row per utterance plus a summary row of means."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=SCORE_COLUMNS)
        writer.writeheader()
        if not rows:
            return
        for row in [*rows, summarize(rows)]:
            writer.writerow({k: _csv_value(v) for k, v in row.to_dict().items()})


def write_score_json(
    rows: Sequence[ScoreRow], failures: Sequence[RowFailure], path: Path
) -> None:
    """Write rows, summary and failures as one JSON document."""
    document = {
        "columns": SCORE_COLUMNS,
        "rows": [row.to_dict() for row in rows],
        "summary": summarize(rows).to_dict() if rows else None,
        "failures": [{"line": f.line, "message": f.message} for f in failures],
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2)
        f.write("\n")

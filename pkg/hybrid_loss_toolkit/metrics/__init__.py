"""Evaluation metrics and batch scoring."""

from .scoring import (
    SCORE_COLUMNS,
    RowFailure,
    ScoreEntry,
    ScoreRow,
    parse_score_manifest,
    score_entries,
    summarize,
    write_score_csv,
    write_score_json,
)
from .signal_metrics import SUPPRESSION_CONFIG, sdr_metric, si_sdr_metric, suppression_mae
from .transcripts import character_error_rate, edit_distance_rate, word_error_rate

__all__ = [
    "SCORE_COLUMNS",
    "SUPPRESSION_CONFIG",
    "RowFailure",
    "ScoreEntry",
    "ScoreRow",
    "character_error_rate",
    "edit_distance_rate",
    "parse_score_manifest",
    "score_entries",
    "sdr_metric",
    "si_sdr_metric",
    "summarize",
    "suppression_mae",
    "word_error_rate",
    "write_score_csv",
    "write_score_json",
]

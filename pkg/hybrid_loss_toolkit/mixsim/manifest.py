"""Mixture manifest parsing, batch generation and provenance output.

A mixture manifest is a CSV file with a header row. Columns:

- ``target`` (required): path of the target utterance
- ``interference``: path, or empty / ``random`` to draw one from the other
  rows' targets
- ``noise``: optional noise path
- ``interference_snr_db`` / ``noise_snr_db``: dB values; empty draws uniformly
  from the configured range
- ``output``: WAV name under the output directory; empty gives ``mix_NNNNN.wav``

Relative paths are resolved against the manifest's directory.
"""

import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..errors import EmptyPoolError, ManifestError
from ..models.results import RowFailure
from ..models.waveform import WavEncoding
from ..signal.wav_io import save_wav
from .mixer import make_mixture, measured_snr_db
from .planner import (
    INTERFERENCE_SNR_RANGE_DB,
    NOISE_SNR_RANGE_DB,
    MixDraw,
    derive_seed,
    make_rng,
    spec_from_draw,
)

logger = logging.getLogger(__name__)

RANDOM_SOURCE = "random"
MANIFEST_COLUMNS = [
    "target",
    "interference",
    "noise",
    "interference_snr_db",
    "noise_snr_db",
    "output",
]
PROVENANCE_COLUMNS = [
    "row",
    "target",
    "interference",
    "noise",
    "interference_snr_db",
    "noise_snr_db",
    "measured_interference_snr_db",
    "seed",
    "output",
]
PROVENANCE_FILE = "provenance.csv"


@dataclass(frozen=True)
class MixRow:
    """One parsed manifest row; None fields are drawn at generation time."""

    index: int
    target: str
    interference: Optional[str] = None
    noise: Optional[str] = None
    interference_snr_db: Optional[float] = None
    noise_snr_db: Optional[float] = None
    output: Optional[str] = None
    line: int = 0

    @property
    def output_name(self) -> str:
        return self.output or f"mix_{self.index:05d}.wav"


@dataclass(frozen=True)
class ProvenanceRow:
    """Resolved sources, SNRs and seed of one written mixture."""

    row: int
    draw: MixDraw
    measured_interference_snr_db: float
    output: Path

    def to_dict(self) -> Dict[str, Any]:
        return {
            "row": self.row,
            "target": self.draw.target_id,
            "interference": self.draw.interference_id,
            "noise": self.draw.noise_id or "",
            "interference_snr_db": f"{self.draw.interference_snr_db:.6f}",
            "noise_snr_db": (
                "" if self.draw.noise_snr_db is None else f"{self.draw.noise_snr_db:.6f}"
            ),
            "measured_interference_snr_db": f"{self.measured_interference_snr_db:.6f}",
            "seed": self.draw.seed,
            "output": str(self.output),
        }


def _optional_float(value: Optional[str], column: str, line: int) -> Optional[float]:
    if value is None or not value.strip():
        return None
    try:
        return float(value)
    except ValueError as e:
        raise ManifestError(f"Line {line}: {column} '{value}' is not a number") from e


def _optional_path(value: Optional[str], base: Path) -> Optional[str]:
    if value is None or not value.strip():
        return None
    if value.strip().lower() == RANDOM_SOURCE:
        return None
    return str(base / value.strip())


def parse_mix_manifest(path: Path) -> List[MixRow]:
    """Parse a mixture manifest CSV.

    Raises:
        ManifestError: If the file is missing, has no ``target`` column,
            a row has no target or an SNR is not a number
    """
    path = Path(path)
    if not path.is_file():
        raise ManifestError(f"Manifest not found: {path}")

    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or "target" not in reader.fieldnames:
            raise ManifestError(f"{path}: header must include a 'target' column")
        unknown = set(reader.fieldnames) - set(MANIFEST_COLUMNS)
        if unknown:
            raise ManifestError(f"{path}: unknown columns {sorted(unknown)}")

        rows = []
        for index, record in enumerate(reader):
            line = reader.line_num
            target = (record.get("target") or "").strip()
            if not target:
                raise ManifestError(f"{path}:{line}: empty target")
            rows.append(
                MixRow(
                    index=index,
                    target=str(path.parent / target),
                    interference=_optional_path(record.get("interference"), path.parent),
                    noise=_optional_path(record.get("noise"), path.parent),
                    interference_snr_db=_optional_float(
                        record.get("interference_snr_db"), "interference_snr_db", line
                    ),
                    noise_snr_db=_optional_float(record.get("noise_snr_db"), "noise_snr_db", line),
                    output=(record.get("output") or "").strip() or None,
                    line=line,
                )
            )
    return rows


def resolve_row(
    row: MixRow,
    rows: Sequence[MixRow],
    seed: int,
    snr_range_db: Tuple[float, float] = INTERFERENCE_SNR_RANGE_DB,
    noise_snr_range_db: Tuple[float, float] = NOISE_SNR_RANGE_DB,
) -> MixDraw:
    """Fill the row's open choices from its own seeded stream.

    The row stream is seeded with ``derive_seed(seed, row.index)`` and draws,
    in order and only when needed: interference index, interference SNR,
    noise SNR.

    Raises:
        EmptyPoolError: If a random interference is requested but no other
            target exists in the manifest
    """
    row_seed = derive_seed(seed, row.index)
    rng = make_rng(row_seed)

    interference = row.interference
    if interference is None:
        pool = sorted({r.target for r in rows if r.target != row.target})
        if not pool:
            raise EmptyPoolError(f"No other targets to draw an interference for {row.target}")
        interference = pool[int(rng.integers(len(pool)))]

    interference_snr = row.interference_snr_db
    if interference_snr is None:
        interference_snr = float(rng.uniform(*snr_range_db))

    noise_snr = row.noise_snr_db
    if row.noise is not None and noise_snr is None:
        noise_snr = float(rng.uniform(*noise_snr_range_db))

    return MixDraw(
        target_id=row.target,
        interference_id=interference,
        interference_snr_db=interference_snr,
        seed=row_seed,
        noise_id=row.noise,
        noise_snr_db=noise_snr if row.noise is not None else None,
    )


def generate_mixtures(
    rows: Sequence[MixRow],
    out_dir: Path,
    seed: int = 0,
    snr_range_db: Tuple[float, float] = INTERFERENCE_SNR_RANGE_DB,
    noise_snr_range_db: Tuple[float, float] = NOISE_SNR_RANGE_DB,
    encoding: WavEncoding = WavEncoding.FLOAT32,
) -> Tuple[List[ProvenanceRow], List[RowFailure]]:
    """Mix every row and write its WAV into ``out_dir``.

    Rows are processed in manifest order. A row that fails (missing or
    malformed audio, silent source) is recorded and skipped.

    Returns:
        Tuple of (provenance rows of written mixtures, failures)
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    written: List[ProvenanceRow] = []
    failures: List[RowFailure] = []
    for row in rows:
        try:
            draw = resolve_row(row, rows, seed, snr_range_db, noise_snr_range_db)
            result = make_mixture(spec_from_draw(draw))
            output = out_dir / row.output_name
            clipped = save_wav(result.mixture, output, encoding)
            if clipped:
                logger.warning("Row %d: %d samples clipped in %s", row.index, clipped, output)
        except (OSError, ValueError) as e:
            logger.debug("Row %d failed: %s", row.index, e)
            failures.append(RowFailure(row.line, str(e)))
            continue

        measured = measured_snr_db(result.target, result.scaled_components[0])
        written.append(ProvenanceRow(row.index, draw, measured, output))
    return written, failures


def write_provenance(rows: Sequence[ProvenanceRow], path: Path) -> None:
    """Write the provenance CSV, one row per written mixture."""
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=PROVENANCE_COLUMNS)
        writer.writeheader()
        for row in rows:
            writer.writerow(row.to_dict())

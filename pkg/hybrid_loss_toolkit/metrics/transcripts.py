"""Word and character error rates by Levenshtein alignment."""

import numpy as np

from ..errors import EmptyReferenceError
from ..models.results import EditDistanceResult, TranscriptPair, TranscriptUnit


def edit_distance_rate(pair: TranscriptPair) -> EditDistanceResult:
    """Align hypothesis to reference with unit costs and count the edits.

    Backtrace ties prefer substitution (or match), then insertion, then
    deletion, so the reported breakdown is deterministic.

    Args:
        pair: Tokenized reference and hypothesis

    Returns:
        EditDistanceResult with counts and ``rate = errors / len(reference)``

    Raises:
        EmptyReferenceError: If the reference has no tokens
    """
    reference, hypothesis = pair.reference, pair.hypothesis
    n, m = len(reference), len(hypothesis)
    if n == 0:
        raise EmptyReferenceError("Cannot compute an error rate against an empty reference")

    distance = np.zeros((n + 1, m + 1), dtype=np.int64)
    distance[:, 0] = np.arange(n + 1)
    distance[0, :] = np.arange(m + 1)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            cost = int(reference[i - 1] != hypothesis[j - 1])
            distance[i, j] = min(
                distance[i - 1, j - 1] + cost,
                distance[i, j - 1] + 1,
                distance[i - 1, j] + 1,
            )

    substitutions = insertions = deletions = 0
    i, j = n, m
    while i > 0 or j > 0:
        if i > 0 and j > 0:
            cost = int(reference[i - 1] != hypothesis[j - 1])
            if distance[i, j] == distance[i - 1, j - 1] + cost:
                substitutions += cost
                i, j = i - 1, j - 1
                continue
        if j > 0 and distance[i, j] == distance[i, j - 1] + 1:
            insertions += 1
            j -= 1
        else:
            deletions += 1
            i -= 1

    return EditDistanceResult(
        substitutions=substitutions,
        insertions=insertions,
        deletions=deletions,
        reference_length=n,
    )


def word_error_rate(reference: str, hypothesis: str) -> float:
    """WER of two whitespace-tokenized transcripts."""
    return edit_distance_rate(TranscriptPair.from_text(reference, hypothesis)).rate


def character_error_rate(reference: str, hypothesis: str) -> float:
    """CER of two transcripts; spaces count as characters."""
    pair = TranscriptPair.from_text(reference, hypothesis, TranscriptUnit.CHARACTER)
    return edit_distance_rate(pair).rate

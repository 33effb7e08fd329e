"""Per-class salient words scored by an association ratio.

AR(w, SC) = Pr(w|SC) * log2(Pr(w|SC) / Pr(w)), estimated over word forms of
the labelled definitions (stopwords removed).  Entries with AR <= 0 are
pruned; relevance (AR times local frequency) ranks the survivors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import DataFormatError
from .labels import LabelledSense
from .lexicon import Dictionary


def association_ratio(
    count_in_class: int, class_total: int, word_count: int, corpus_total: int
) -> float:
    """AR from raw counts; zero when the word never occurs in the class."""
    if class_total <= 0:
        raise ValueError("zero class total")
    if count_in_class == 0:
        return 0.0
    p_class = count_in_class / class_total
    p_word = word_count / corpus_total
    return p_class * math.log2(p_class / p_word)


@dataclass
class SalienceTable:
    scores: dict[tuple[str, str], float]
    class_totals: dict[str, int]
    corpus_total: int
    word_counts: dict[str, int]
    class_word_counts: dict[tuple[str, str], int]
    _by_word: dict[str, tuple[tuple[str, float], ...]] | None = field(
        default=None, repr=False, compare=False
    )

    def classes(self) -> list[str]:
        return sorted(self.class_totals)

    def score(self, word: str, semantic_class: str) -> float:
        return self.scores.get((word, semantic_class), 0.0)

    def class_scores(self, word: str) -> tuple[tuple[str, float], ...]:
        """All (class, AR) entries of a word, for fast definition scoring."""
        if self._by_word is None:
            by_word: dict[str, list[tuple[str, float]]] = {}
            for (word_, cls), value in self.scores.items():
                by_word.setdefault(word_, []).append((cls, value))
            self._by_word = {w: tuple(sorted(v)) for w, v in by_word.items()}
        return self._by_word.get(word, ())

    def class_report(self) -> list[tuple[str, int, int]]:
        """Per class: contributing content-word tokens and salient-word count."""
        salient: dict[str, int] = {cls: 0 for cls in self.class_totals}
        for (_, cls) in self.scores:
            salient[cls] += 1
        return [(cls, self.class_totals[cls], salient[cls]) for cls in self.classes()]


def relevance(table: SalienceTable, word: str, semantic_class: str) -> float:
    """Salience times local frequency; zero when either factor is zero."""
    score = table.score(word, semantic_class)
    if score == 0.0:
        return 0.0
    return score * table.class_word_counts.get((word, semantic_class), 0)


def top_salient(table: SalienceTable, semantic_class: str, k: int) -> list[tuple[str, float]]:
    """Top-k salient words of a class by descending relevance, ties by word."""
    words = [w for (w, cls) in table.scores if cls == semantic_class]
    words.sort(key=lambda w: (-relevance(table, w, semantic_class), w))
    return [(w, table.score(w, semantic_class)) for w in words[:k]]


def train_salience(
    labels: Iterable[LabelledSense],
    dictionary: Dictionary,
    stopwords: Iterable[str],
) -> SalienceTable:
    """Count word forms per class over the labelled corpus and build the table."""
    labels = list(labels)
    if not labels:
        raise ValueError("empty labelled corpus")
    stop = frozenset(stopwords)

    class_totals: dict[str, int] = {}
    word_counts: dict[str, int] = {}
    class_word_counts: dict[tuple[str, str], int] = {}
    for label in labels:
        sense = dictionary.by_id.get(label.sense_id)
        if sense is None:
            raise DataFormatError(
                f"labelled sense {label.sense_id!r} not present in dictionary"
            )
        for token in sense.definition_tokens:
            if token in stop:
                continue
            class_totals[label.tag] = class_totals.get(label.tag, 0) + 1
            word_counts[token] = word_counts.get(token, 0) + 1
            key = (token, label.tag)
            class_word_counts[key] = class_word_counts.get(key, 0) + 1
    corpus_total = sum(class_totals.values())

    scores: dict[tuple[str, str], float] = {}
    for (word, cls), count in class_word_counts.items():
        value = association_ratio(
            count, class_totals[cls], word_counts[word], corpus_total
        )
        if value > 0.0:
            scores[(word, cls)] = value
    return SalienceTable(
        scores=scores,
        class_totals=class_totals,
        corpus_total=corpus_total,
        word_counts=word_counts,
        class_word_counts=class_word_counts,
    )


def write_salience(table: SalienceTable, stream: IO[str]) -> None:
    """TSV: word, class, AR, local count; sorted by (class, -relevance, word)."""
    entries = sorted(
        table.scores,
        key=lambda key: (key[1], -relevance(table, key[0], key[1]), key[0]),
    )
    for word, cls in entries:
        count = table.class_word_counts[(word, cls)]
        stream.write(f"{word}\t{cls}\t{table.scores[(word, cls)]!r}\t{count}\n")


def parse_salience(stream: IO[str] | Iterable[str]) -> SalienceTable:
    """Rebuild a scoring table from the TSV written by :func:`write_salience`.

    Only scores and local counts are recoverable; totals are re-derived from
    the stored local counts, which is sufficient for scoring definitions.
    """
    scores: dict[tuple[str, str], float] = {}
    class_word_counts: dict[tuple[str, str], int] = {}
    class_totals: dict[str, int] = {}
    word_counts: dict[str, int] = {}
    for lineno, line in enumerate(stream, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 4:
            raise DataFormatError(f"line {lineno}: expected 4 tab-separated fields")
        word, cls, raw_score, raw_count = parts
        try:
            score = float(raw_score)
            count = int(raw_count)
        except ValueError as exc:
            raise DataFormatError(f"line {lineno}: bad number ({exc})") from exc
        if score <= 0.0:
            raise DataFormatError(f"line {lineno}: non-positive salience score")
        scores[(word, cls)] = score
        class_word_counts[(word, cls)] = count
        class_totals[cls] = class_totals.get(cls, 0) + count
        word_counts[word] = word_counts.get(word, 0) + count
    return SalienceTable(
        scores=scores,
        class_totals=class_totals,
        corpus_total=sum(class_totals.values()),
        word_counts=word_counts,
        class_word_counts=class_word_counts,
    )

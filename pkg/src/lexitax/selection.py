"""Genus-term tabulation and the three top-beginner filters.

* F1 keeps a genus only if some concept it translates to carries the
  class's semantic file.
* F2 keeps a genus only if this class holds strictly more of its
  genus occurrences than every other class (ties reject).
* F3 keeps a genus only if its count in the class exceeds the threshold,
  so threshold 9 keeps count 10 and drops count 9.

Filters compose as an intersection; a rejected genus records the first
failing filter in the order F1, F2, F3.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DataFormatError
from .firstpass import translate_to_concepts
from .labels import LabelledSense
from .lexicon import BilingualMap, Dictionary
from .semnet import SemanticNet


@dataclass
class GenusFrequencyTable:
    """class -> genus word -> count of labelled senses with that genus."""

    counts: dict[str, dict[str, int]]
    members: dict[str, dict[str, list[str]]] = field(default_factory=dict)

    def classes(self) -> list[str]:
        return sorted(self.counts)

    def class_counts(self, semantic_class: str) -> dict[str, int]:
        return self.counts.get(semantic_class, {})

    def count(self, semantic_class: str, genus: str) -> int:
        return self.counts.get(semantic_class, {}).get(genus, 0)

    def max_class(self, genus: str) -> str | None:
        """Class holding the most occurrences of a genus; ties by class name."""
        best: tuple[int, str] | None = None
        for cls in sorted(self.counts):
            count = self.counts[cls].get(genus, 0)
            if count > 0 and (best is None or count > best[0]):
                best = (count, cls)
        return best[1] if best else None

    def top_genus(self, semantic_class: str, k: int) -> list[tuple[int, str]]:
        """Most frequent genus terms of a class, count descending then word."""
        row = self.class_counts(semantic_class)
        ranked = sorted(row.items(), key=lambda item: (-item[1], item[0]))
        return [(count, genus) for genus, count in ranked[:k]]

    def summary(self, semantic_class: str) -> dict[str, int | float]:
        row = self.class_counts(semantic_class)
        repeated = sum(1 for count in row.values() if count > 1)
        return {
            "distinct_genus_terms": len(row),
            "repeated_genus_terms": repeated,
            "repeated_share": repeated / len(row) if row else 0.0,
        }


def genus_frequency_table(
    labels: Iterable[LabelledSense], dictionary: Dictionary
) -> GenusFrequencyTable:
    """Count genus words per class over a labelled corpus."""
    counts: dict[str, dict[str, int]] = {}
    members: dict[str, dict[str, list[str]]] = {}
    for label in labels:
        sense = dictionary.by_id.get(label.sense_id)
        if sense is None:
            raise DataFormatError(
                f"labelled sense {label.sense_id!r} not present in dictionary"
            )
        if sense.genus is None:
            continue
        row = counts.setdefault(label.tag, {})
        row[sense.genus] = row.get(sense.genus, 0) + 1
        members.setdefault(label.tag, {}).setdefault(sense.genus, []).append(
            label.sense_id
        )
    return GenusFrequencyTable(counts=counts, members=members)


@dataclass(frozen=True)
class FilterConfig:
    f1: bool = True
    f2: bool = True
    f3_threshold: int = 0

    def __post_init__(self) -> None:
        if self.f3_threshold < 0:
            raise ValueError("f3 threshold must be >= 0")

    def as_dict(self) -> dict:
        return {"f1": self.f1, "f2": self.f2, "f3_threshold": self.f3_threshold}


@dataclass
class GenusSelection:
    semantic_class: str
    config: FilterConfig
    selected: set[str]
    rejected: dict[str, str]

    def to_json(self) -> str:
        obj = {
            "class": self.semantic_class,
            "config": self.config.as_dict(),
            "selected": sorted(self.selected),
            "rejected": dict(sorted(self.rejected.items())),
        }
        return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def _passes_f1(
    genus: str, semantic_class: str, bilingual: BilingualMap, net: SemanticNet
) -> bool:
    concepts = translate_to_concepts(genus, bilingual, net)
    return any(net.concepts[c].semantic_file == semantic_class for c in concepts)


def _passes_f2(table: GenusFrequencyTable, genus: str, semantic_class: str) -> bool:
    own = table.count(semantic_class, genus)
    for other in table.counts:
        if other != semantic_class and table.counts[other].get(genus, 0) >= own:
            return False
    return True


def apply_filters(
    table: GenusFrequencyTable,
    semantic_class: str,
    bilingual: BilingualMap,
    net: SemanticNet,
    config: FilterConfig,
) -> GenusSelection:
    """Partition a class's genus terms into selected and rejected-with-reason."""
    if semantic_class not in table.counts:
        raise DataFormatError(f"unknown class {semantic_class!r}")
    selected: set[str] = set()
    rejected: dict[str, str] = {}
    for genus, count in table.counts[semantic_class].items():
        if config.f1 and not _passes_f1(genus, semantic_class, bilingual, net):
            rejected[genus] = "F1"
        elif config.f2 and not _passes_f2(table, genus, semantic_class):
            rejected[genus] = "F2"
        elif count <= config.f3_threshold:
            rejected[genus] = "F3"
        else:
            selected.add(genus)
    return GenusSelection(
        semantic_class=semantic_class,
        config=config,
        selected=selected,
        rejected=rejected,
    )


@dataclass(frozen=True)
class SweepRow:
    combo: str
    threshold: int
    genus_count: int
    definition_count: int
    genus_accuracy: float | None = None
    definition_accuracy: float | None = None


@dataclass
class SweepReport:
    semantic_class: str
    rows: list[SweepRow]
    coverage_vs: list[tuple[int, float, float]] | None = None


def _selection_stats(
    table: GenusFrequencyTable,
    semantic_class: str,
    selected: set[str],
    gold: dict[str, str] | None,
) -> tuple[int, int, float | None, float | None]:
    row = table.class_counts(semantic_class)
    members = table.members.get(semantic_class, {})
    definition_count = sum(row[g] for g in selected)
    genus_accuracy = definition_accuracy = None
    if gold is not None:
        judged = correct = 0
        covered_judged = covered_correct = 0
        for genus in selected:
            sense_ids = members.get(genus, [])
            judgements = [gold[sid] == semantic_class for sid in sense_ids if sid in gold]
            if judgements:
                judged += 1
                if any(judgements):
                    correct += 1
            covered_judged += len(judgements)
            covered_correct += sum(judgements)
        genus_accuracy = correct / judged if judged else None
        definition_accuracy = (
            covered_correct / covered_judged if covered_judged else None
        )
    return len(selected), definition_count, genus_accuracy, definition_accuracy


def _correct_genus(
    table: GenusFrequencyTable,
    semantic_class: str,
    selected: set[str],
    gold: dict[str, str],
) -> set[str]:
    """Genus terms of the selection with at least one gold-correct sense."""
    members = table.members.get(semantic_class, {})
    out = set()
    for genus in selected:
        for sid in members.get(genus, []):
            if gold.get(sid) == semantic_class:
                out.add(genus)
                break
    return out


def sweep_report(
    table: GenusFrequencyTable,
    semantic_class: str,
    bilingual: BilingualMap,
    net: SemanticNet,
    thresholds: Iterable[int],
    gold: dict[str, str] | None = None,
) -> SweepReport:
    """Selection sizes per threshold for F3 alone, F1+F3 and F2+F3.

    With a gold file the accuracy columns appear, plus the share of
    gold-correct genus terms each of F1/F2 preserves relative to F3 alone.
    """
    rows: list[SweepRow] = []
    coverage_vs: list[tuple[int, float, float]] = []
    combos = (
        ("F3", FilterConfig(f1=False, f2=False, f3_threshold=0)),
        ("F1+F3", FilterConfig(f1=True, f2=False, f3_threshold=0)),
        ("F2+F3", FilterConfig(f1=False, f2=True, f3_threshold=0)),
    )
    for threshold in thresholds:
        per_combo: dict[str, set[str]] = {}
        for combo, base in combos:
            config = FilterConfig(base.f1, base.f2, threshold)
            selection = apply_filters(table, semantic_class, bilingual, net, config)
            per_combo[combo] = selection.selected
            counts = _selection_stats(table, semantic_class, selection.selected, gold)
            rows.append(SweepRow(combo, threshold, counts[0], counts[1], counts[2], counts[3]))
        if gold is not None:
            baseline = _correct_genus(table, semantic_class, per_combo["F3"], gold)
            if baseline:
                f1_kept = _correct_genus(table, semantic_class, per_combo["F1+F3"], gold)
                f2_kept = _correct_genus(table, semantic_class, per_combo["F2+F3"], gold)
                coverage_vs.append(
                    (
                        threshold,
                        len(f1_kept & baseline) / len(baseline),
                        len(f2_kept & baseline) / len(baseline),
                    )
                )
    return SweepReport(
        semantic_class=semantic_class,
        rows=rows,
        coverage_vs=coverage_vs if gold is not None else None,
    )

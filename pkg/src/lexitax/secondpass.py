"""Second labelling pass: score definitions against every class by summing
salient-word association ratios, tag with the argmax, optionally iterate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .firstpass import run_first_pass
from .labels import LabelledSense, pass_name
from .lexicon import BilingualMap, Dictionary
from .salience import SalienceTable, train_salience
from .semnet import SemanticNet


@dataclass(frozen=True)
class ClassScoreVector:
    """Per-class evidence sums for one definition; zero entries are omitted."""

    scores: dict[str, float] = field(compare=False)
    winner: str | None = None
    margin: float = 0.0


def score_definition(tokens, table: SalienceTable) -> ClassScoreVector:
    """Sum AR over tokens (with multiplicity) per class; argmax wins.

    Ties break on the lexicographically smallest class name; a definition
    with no salient token has no winner.
    """
    per_class: dict[str, list[float]] = {}
    for token in tokens:
        for cls, score in table.class_scores(token):
            per_class.setdefault(cls, []).append(score)
    scores = {cls: math.fsum(values) for cls, values in per_class.items()}
    scores = {cls: total for cls, total in scores.items() if total != 0.0}
    if not scores:
        return ClassScoreVector(scores={}, winner=None, margin=0.0)
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    winner = ranked[0][0]
    runner_up = ranked[1][1] if len(ranked) > 1 else 0.0
    return ClassScoreVector(scores=scores, winner=winner, margin=ranked[0][1] - runner_up)


@dataclass
class SecondPassResult:
    labels: list[LabelledSense]
    histogram: dict[str, int]
    unlabelled: list[str]
    coverage: float
    ties: int = 0


def run_second_pass(
    dictionary: Dictionary,
    table: SalienceTable,
    stopwords,
    round_no: int = 1,
) -> SecondPassResult:
    """Relabel every sense from the salience table; stopwords are removed
    with the same list used in training."""
    stop = frozenset(stopwords)
    labels: list[LabelledSense] = []
    histogram: dict[str, int] = {}
    unlabelled: list[str] = []
    ties = 0
    name = pass_name(round_no)
    for sense in dictionary.senses:
        tokens = [t for t in sense.definition_tokens if t not in stop]
        vector = score_definition(tokens, table)
        if vector.winner is None:
            unlabelled.append(sense.sense_id)
            continue
        top = vector.scores[vector.winner]
        if sum(1 for v in vector.scores.values() if v == top) > 1:
            ties += 1
        labels.append(
            LabelledSense(
                sense_id=sense.sense_id,
                tag=vector.winner,
                pass_name=name,
                evidence={"kind": "salience", "scores": dict(sorted(vector.scores.items()))},
            )
        )
        histogram[vector.winner] = histogram.get(vector.winner, 0) + 1
    coverage = len(labels) / len(dictionary.senses) if dictionary.senses else 0.0
    return SecondPassResult(
        labels=labels,
        histogram=dict(sorted(histogram.items())),
        unlabelled=unlabelled,
        coverage=coverage,
        ties=ties,
    )


@dataclass
class LabellingRound:
    round_no: int
    pass_label: str
    table: SalienceTable
    result: SecondPassResult
    labels_changed: int
    fixpoint: bool


def iterate_labelling(
    dictionary: Dictionary,
    net: SemanticNet,
    bilingual: BilingualMap,
    rounds: int,
    stopwords,
) -> list[LabellingRound]:
    """Run the train/relabel loop.

    Round 0 is the distance-based first pass (not returned); each returned
    round r >= 1 trains on round r-1's labels and relabels the whole
    dictionary.  A round that changes no label is flagged as a fixpoint.
    """
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    previous_labels, _ = run_first_pass(dictionary, net, bilingual)
    previous_tags = {label.sense_id: label.tag for label in previous_labels}
    out: list[LabellingRound] = []
    for round_no in range(1, rounds + 1):
        table = train_salience(previous_labels, dictionary, stopwords)
        result = run_second_pass(dictionary, table, stopwords, round_no=round_no)
        tags = {label.sense_id: label.tag for label in result.labels}
        changed = sum(
            1
            for sense in dictionary.senses
            if tags.get(sense.sense_id) != previous_tags.get(sense.sense_id)
        )
        out.append(
            LabellingRound(
                round_no=round_no,
                pass_label=pass_name(round_no),
                table=table,
                result=result,
                labels_changed=changed,
                fixpoint=changed == 0,
            )
        )
        previous_labels = result.labels
        previous_tags = tags
    return out

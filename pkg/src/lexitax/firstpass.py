"""First labelling pass: tag senses through bilingual translation and
conceptual distance between headword and genus.

The sense inherits the semantic file of the *genus-side* concept of the
closest (headword concept, genus concept) pair: the taxonomy later hangs
senses under genus hypernyms, so the genus concept carries the class
evidence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO

from .distance import conceptual_distance
from .labels import PASS_FIRST, LabelledSense
from .lexicon import BilingualMap, Dictionary, Sense
from .semnet import SemanticNet


def translate_to_concepts(
    word: str, bilingual: BilingualMap, net: SemanticNet
) -> frozenset[str]:
    """All net concepts reachable from a source word through the bilingual map."""
    concepts: set[str] = set()
    for target in bilingual.targets(word):
        concepts.update(net.concepts_for_lemma(target))
    return frozenset(concepts)


def label_sense_by_distance(
    sense: Sense, net: SemanticNet, bilingual: BilingualMap
) -> LabelledSense | None:
    """Label one sense, or None when translation fails or nothing connects."""
    if sense.genus is None:
        raise ValueError(f"sense {sense.sense_id!r} has no genus")
    headword_concepts = translate_to_concepts(sense.headword, bilingual, net)
    genus_concepts = translate_to_concepts(sense.genus, bilingual, net)
    if not headword_concepts or not genus_concepts:
        return None
    result = conceptual_distance(net, headword_concepts, genus_concepts)
    if result is None:
        return None
    genus_side = result.best_pair[1]
    return LabelledSense(
        sense_id=sense.sense_id,
        tag=net.concepts[genus_side].semantic_file,
        pass_name=PASS_FIRST,
        evidence={
            "kind": "distance",
            "pair": list(result.best_pair),
            "distance": result.distance,
        },
    )


@dataclass
class CoverageReport:
    """Counters describing how far translation and labelling reached."""

    definitions: int = 0
    definitions_with_genus: int = 0
    genus_terms: int = 0
    genus_with_bilingual: int = 0
    genus_with_net: int = 0
    headwords: int = 0
    headwords_with_bilingual: int = 0
    headwords_with_net: int = 0
    definitions_with_bilingual: int = 0
    definitions_with_net: int = 0
    definitions_labelled: int = 0
    mean_concepts_per_source_word: float = 0.0

    COUNTER_LABELS = (
        ("definitions", "Noun definitions"),
        ("definitions_with_genus", "Noun definitions with genus"),
        ("genus_terms", "Genus terms"),
        ("genus_with_bilingual", "Genus terms with bilingual translation"),
        ("genus_with_net", "Genus terms with net translation"),
        ("headwords", "Headwords"),
        ("headwords_with_bilingual", "Headwords with bilingual translation"),
        ("headwords_with_net", "Headwords with net translation"),
        ("definitions_with_bilingual", "Definitions with bilingual translation"),
        ("definitions_with_net", "Definitions with net translation"),
        ("definitions_labelled", "Definitions labelled"),
    )

    def counters(self) -> dict[str, int]:
        return {name: getattr(self, name) for name, _ in self.COUNTER_LABELS}

    def rows(self) -> list[tuple[str, int]]:
        return [(label, getattr(self, name)) for name, label in self.COUNTER_LABELS]

    def to_json(self) -> str:
        obj = dict(self.counters())
        obj["mean_concepts_per_source_word"] = self.mean_concepts_per_source_word
        return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"

    def write_json(self, stream: IO[str]) -> None:
        stream.write(self.to_json())


def run_first_pass(
    dictionary: Dictionary, net: SemanticNet, bilingual: BilingualMap
) -> tuple[list[LabelledSense], CoverageReport]:
    """Label every sense that has a genus; count every coverage cut."""
    report = CoverageReport(definitions=len(dictionary.senses))

    headwords = {s.headword for s in dictionary.senses}
    report.headwords = len(headwords)
    report.headwords_with_bilingual = sum(
        1 for w in headwords if bilingual.targets(w)
    )
    report.headwords_with_net = sum(
        1 for w in headwords if translate_to_concepts(w, bilingual, net)
    )

    with_genus = [s for s in dictionary.senses if s.genus is not None]
    report.definitions_with_genus = len(with_genus)
    genus_terms = {s.genus for s in with_genus}
    report.genus_terms = len(genus_terms)
    report.genus_with_bilingual = sum(1 for g in genus_terms if bilingual.targets(g))
    report.genus_with_net = sum(
        1 for g in genus_terms if translate_to_concepts(g, bilingual, net)
    )

    labels: list[LabelledSense] = []
    for sense in with_genus:
        if bilingual.targets(sense.headword) and bilingual.targets(sense.genus):
            report.definitions_with_bilingual += 1
        head = translate_to_concepts(sense.headword, bilingual, net)
        genus = translate_to_concepts(sense.genus, bilingual, net)
        if head and genus:
            report.definitions_with_net += 1
        label = label_sense_by_distance(sense, net, bilingual)
        if label is not None:
            labels.append(label)
    report.definitions_labelled = len(labels)

    if bilingual.entries:
        total = sum(
            len(translate_to_concepts(w, bilingual, net)) for w in bilingual.entries
        )
        report.mean_concepts_per_source_word = total / len(bilingual.entries)
    return labels, report

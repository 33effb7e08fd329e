"""Genus-sense disambiguation, pair collection, and taxonomy assembly.

The taxonomy is a forest: each sense has at most one hypernym sense.  The
source dictionaries are circular and noisy, so the builder drops (and
reports) self-loops, duplicate hypernyms and one deterministic edge per
cycle rather than failing.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import IO, Iterable

from .distance import conceptual_distance
from .errors import DataFormatError, InvariantError
from .firstpass import label_sense_by_distance, translate_to_concepts
from .labels import LabelledSense
from .lexicon import BilingualMap, Dictionary, Sense
from .semnet import SemanticNet

STRATEGIES = ("first-sense", "conceptual-distance")


def _natural_key(sense_id: str) -> tuple:
    """Order sense ids with embedded numbers numerically: x_1_2 < x_1_10."""
    return tuple(
        int(part) if part.isdigit() else part
        for part in re.split(r"(\d+)", sense_id)
    )


def disambiguate_genus(
    sense: Sense,
    dictionary: Dictionary,
    net: SemanticNet,
    bilingual: BilingualMap,
    strategy: str = "first-sense",
) -> str | None:
    """Pick which sense of the genus word a definition points at.

    ``first-sense`` takes the lowest-numbered sense of the genus headword.
    ``conceptual-distance`` compares the hyponym's headword concepts against
    each candidate sense's own concept selection (the headword-side concept
    its distance labelling chose) and takes the closest; ties fall back to
    the lowest sense id.  Returns None when the genus is not a headword or
    no candidate can be scored; never returns the sense itself.
    """
    if strategy not in STRATEGIES:
        raise DataFormatError(f"unknown disambiguation strategy {strategy!r}")
    if sense.genus is None:
        return None
    candidate_ids = [
        sid for sid in dictionary.index.get(sense.genus, []) if sid != sense.sense_id
    ]
    if not candidate_ids:
        return None
    candidate_ids.sort(key=_natural_key)
    if strategy == "first-sense":
        return candidate_ids[0]

    head_concepts = translate_to_concepts(sense.headword, bilingual, net)
    if not head_concepts:
        return None
    best: tuple[float, tuple] | None = None
    best_id: str | None = None
    for candidate_id in candidate_ids:
        candidate = dictionary.by_id[candidate_id]
        if candidate.genus is None:
            continue
        own_label = label_sense_by_distance(candidate, net, bilingual)
        if own_label is None:
            continue
        own_concept = own_label.evidence["pair"][0]
        result = conceptual_distance(net, head_concepts, {own_concept})
        if result is None:
            continue
        key = (result.distance, _natural_key(candidate_id))
        if best is None or key < best:
            best = key
            best_id = candidate_id
    return best_id


def collect_pairs(
    labels: Iterable[LabelledSense],
    semantic_class: str,
    selected_genus: set[str],
    dictionary: Dictionary,
    net: SemanticNet,
    bilingual: BilingualMap,
    strategy: str = "first-sense",
) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """(hyponym sense, hypernym sense) pairs for a class, in input order.

    Only senses labelled with the class whose genus was selected produce a
    pair.  Senses whose genus cannot be resolved to another sense are
    reported in the second list as (sense_id, reason).
    """
    pairs: list[tuple[str, str]] = []
    skipped: list[tuple[str, str]] = []
    for label in labels:
        if label.tag != semantic_class:
            continue
        sense = dictionary.by_id.get(label.sense_id)
        if sense is None:
            raise DataFormatError(
                f"labelled sense {label.sense_id!r} not present in dictionary"
            )
        if sense.genus is None or sense.genus not in selected_genus:
            continue
        hypernym_id = disambiguate_genus(sense, dictionary, net, bilingual, strategy)
        if hypernym_id is None:
            skipped.append((sense.sense_id, "unresolvable"))
        elif hypernym_id == sense.sense_id:
            skipped.append((sense.sense_id, "self-loop"))
        else:
            pairs.append((sense.sense_id, hypernym_id))
    return pairs, skipped


@dataclass
class TaxonomyNode:
    sense_id: str
    hypernym: str | None
    children: list[str] = field(default_factory=list)
    level: int = 0


@dataclass
class Taxonomy:
    semantic_class: str
    nodes: dict[str, TaxonomyNode]
    tops: list[str]
    dropped_cycles: list[list[str]] = field(default_factory=list)
    dropped_cycle_pairs: list[tuple[str, str]] = field(default_factory=list)
    dropped_duplicates: list[tuple[str, str]] = field(default_factory=list)
    dropped_self_loops: list[tuple[str, str]] = field(default_factory=list)

    def edge_count(self) -> int:
        return sum(1 for node in self.nodes.values() if node.hypernym is not None)


def build_taxonomy(pairs: Iterable[tuple[str, str]], semantic_class: str) -> Taxonomy:
    """Assemble a forest from (hyponym, hypernym) pairs.

    Duplicate hyponyms keep their first pair; self-loops are dropped; each
    cycle loses the edge whose hyponym id is lexicographically greatest.
    Every input pair ends up as exactly one of: edge, duplicate drop,
    self-loop drop, cycle drop.
    """
    pairs = list(pairs)
    parent: dict[str, str] = {}
    dropped_duplicates: list[tuple[str, str]] = []
    dropped_self_loops: list[tuple[str, str]] = []
    mentioned: list[str] = []
    seen: set[str] = set()
    for child, hypernym in pairs:
        for sense_id in (child, hypernym):
            if sense_id not in seen:
                seen.add(sense_id)
                mentioned.append(sense_id)
        if child == hypernym:
            dropped_self_loops.append((child, hypernym))
        elif child in parent:
            dropped_duplicates.append((child, hypernym))
        else:
            parent[child] = hypernym

    dropped_cycles: list[list[str]] = []
    dropped_cycle_pairs: list[tuple[str, str]] = []
    state: dict[str, int] = {}
    for start in sorted(parent):
        if state.get(start):
            continue
        chain: list[str] = []
        node = start
        while node in parent and state.get(node, 0) == 0:
            state[node] = 1
            chain.append(node)
            node = parent[node]
        if state.get(node, 0) == 1:
            cycle = chain[chain.index(node):]
            pivot = cycle.index(min(cycle))
            dropped_cycles.append(cycle[pivot:] + cycle[:pivot])
            victim = max(cycle)
            dropped_cycle_pairs.append((victim, parent[victim]))
            del parent[victim]
        for visited in chain:
            state[visited] = 2

    nodes = {
        sense_id: TaxonomyNode(sense_id=sense_id, hypernym=parent.get(sense_id))
        for sense_id in mentioned
    }
    for sense_id, node in nodes.items():
        if node.hypernym is not None:
            nodes[node.hypernym].children.append(sense_id)
    for node in nodes.values():
        node.children.sort()
    tops = sorted(sid for sid, node in nodes.items() if node.hypernym is None)
    taxonomy = Taxonomy(
        semantic_class=semantic_class,
        nodes=nodes,
        tops=tops,
        dropped_cycles=dropped_cycles,
        dropped_cycle_pairs=dropped_cycle_pairs,
        dropped_duplicates=dropped_duplicates,
        dropped_self_loops=dropped_self_loops,
    )
    _assign_levels(taxonomy)
    kept = taxonomy.edge_count()
    dropped = len(dropped_duplicates) + len(dropped_self_loops) + len(dropped_cycle_pairs)
    if kept + dropped != len(pairs):
        raise InvariantError("pair conservation violated during taxonomy build")
    return taxonomy


def _assign_levels(taxonomy: Taxonomy) -> None:
    queue = list(taxonomy.tops)
    for sense_id in queue:
        taxonomy.nodes[sense_id].level = 1
    while queue:
        nxt = []
        for sense_id in queue:
            node = taxonomy.nodes[sense_id]
            for child in node.children:
                taxonomy.nodes[child].level = node.level + 1
                nxt.append(child)
        queue = nxt
    if any(node.level == 0 for node in taxonomy.nodes.values()):
        raise InvariantError("unreachable node after cycle breaking")


def apply_attachments(
    taxonomy: Taxonomy, attachments: Iterable[tuple[str, str]]
) -> Taxonomy:
    """Manually hang top beginners under other senses (post-build fix-ups)."""
    for top_id, parent_id in attachments:
        if top_id not in taxonomy.nodes:
            raise DataFormatError(f"attachment source {top_id!r} not in taxonomy")
        if parent_id not in taxonomy.nodes:
            raise DataFormatError(f"attachment target {parent_id!r} not in taxonomy")
        node = taxonomy.nodes[top_id]
        if node.hypernym is not None:
            raise DataFormatError(f"attachment source {top_id!r} is not a top")
        probe = parent_id
        while probe is not None:
            if probe == top_id:
                raise DataFormatError(
                    f"attachment {top_id!r} -> {parent_id!r} would create a cycle"
                )
            probe = taxonomy.nodes[probe].hypernym
        node.hypernym = parent_id
        taxonomy.nodes[parent_id].children.append(top_id)
        taxonomy.nodes[parent_id].children.sort()
        taxonomy.tops.remove(top_id)
    _assign_levels(taxonomy)
    return taxonomy


def parse_attachments(stream: IO[str] | Iterable[str]) -> list[tuple[str, str]]:
    """Parse the 2-column TSV of (top sense, new parent sense) fix-ups."""
    out = []
    for lineno, line in enumerate(stream, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise DataFormatError(f"line {lineno}: expected 2 tab-separated fields")
        out.append((parts[0].strip(), parts[1].strip()))
    return out


@dataclass
class TaxonomyStats:
    senses: int
    tops: int
    levels: int
    per_level: dict[int, int]
    genus_terms: int | None = None

    def as_dict(self) -> dict:
        obj = {
            "senses": self.senses,
            "tops": self.tops,
            "levels": self.levels,
            "per_level": {str(level): n for level, n in sorted(self.per_level.items())},
        }
        if self.genus_terms is not None:
            obj["genus_terms"] = self.genus_terms
        return obj


def taxonomy_stats(
    taxonomy: Taxonomy, dictionary: Dictionary | None = None
) -> TaxonomyStats:
    """Size, depth and per-level counts; genus terms need the dictionary."""
    per_level: dict[int, int] = {}
    for node in taxonomy.nodes.values():
        per_level[node.level] = per_level.get(node.level, 0) + 1
    genus_terms = None
    if dictionary is not None:
        parents = {n.hypernym for n in taxonomy.nodes.values() if n.hypernym}
        genus_terms = len(
            {dictionary.by_id[p].headword for p in parents if p in dictionary.by_id}
        )
    return TaxonomyStats(
        senses=len(taxonomy.nodes),
        tops=len(taxonomy.tops),
        levels=max(per_level) if per_level else 0,
        per_level=per_level,
        genus_terms=genus_terms,
    )


def to_json_dict(taxonomy: Taxonomy, stats: TaxonomyStats | None = None) -> dict:
    obj = {
        "class": taxonomy.semantic_class,
        "tops": list(taxonomy.tops),
        "nodes": {
            sense_id: {
                "hypernym": node.hypernym,
                "children": list(node.children),
                "level": node.level,
            }
            for sense_id, node in sorted(taxonomy.nodes.items())
        },
        "dropped_cycles": taxonomy.dropped_cycles,
        "dropped_cycle_pairs": [list(p) for p in taxonomy.dropped_cycle_pairs],
        "dropped_duplicates": [list(p) for p in taxonomy.dropped_duplicates],
        "dropped_self_loops": [list(p) for p in taxonomy.dropped_self_loops],
    }
    if stats is not None:
        obj["stats"] = stats.as_dict()
    return obj


def to_dot(taxonomy: Taxonomy) -> str:
    """DOT digraph with one child -> parent edge per hypernym link."""
    lines = [f'digraph "{taxonomy.semantic_class}" {{']
    for sense_id in sorted(taxonomy.nodes):
        node = taxonomy.nodes[sense_id]
        if node.hypernym is not None:
            lines.append(f'  "{sense_id}" -> "{node.hypernym}";')
        elif not node.children:
            lines.append(f'  "{sense_id}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(taxonomy: Taxonomy) -> str:
    """Indented tree, two spaces per level, siblings in sense-id order."""
    lines: list[str] = []

    def walk(sense_id: str, depth: int) -> None:
        lines.append("  " * depth + sense_id)
        for child in taxonomy.nodes[sense_id].children:
            walk(child, depth + 1)

    for top in taxonomy.tops:
        walk(top, 0)
    return "\n".join(lines) + ("\n" if lines else "")


def export_taxonomy(
    taxonomy: Taxonomy,
    fmt: str,
    stats: TaxonomyStats | None = None,
) -> str:
    if fmt == "json":
        return json.dumps(
            to_json_dict(taxonomy, stats), ensure_ascii=False, sort_keys=True, indent=2
        ) + "\n"
    if fmt == "dot":
        return to_dot(taxonomy)
    if fmt == "text":
        return to_text(taxonomy)
    raise DataFormatError(f"unknown export format {fmt!r}")

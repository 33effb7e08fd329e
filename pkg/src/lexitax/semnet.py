"""Concept net: hypernym graph with semantic-file tags and derived depths.

On-disk format is a 4-column TSV: concept id, semantic file tag,
comma-joined lemmas, comma-joined hypernym ids (empty for roots).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import DataFormatError, InvariantError


@dataclass(frozen=True)
class Concept:
    concept_id: str
    semantic_file: str
    lemmas: frozenset[str]
    hypernyms: frozenset[str]
    depth: int


@dataclass
class SemanticNet:
    """Immutable concept graph; safe for concurrent reads once built."""

    concepts: dict[str, Concept]
    lemma_index: dict[str, frozenset[str]]
    _neighbors: dict[str, tuple[str, ...]] | None = field(
        default=None, repr=False, compare=False
    )

    def __len__(self) -> int:
        return len(self.concepts)

    def roots(self) -> list[str]:
        return sorted(c.concept_id for c in self.concepts.values() if not c.hypernyms)

    def concepts_for_lemma(self, lemma: str) -> frozenset[str]:
        return self.lemma_index.get(lemma.lower(), frozenset())

    def neighbors(self, concept_id: str) -> tuple[str, ...]:
        """Undirected hypernym adjacency, built once and cached."""
        if self._neighbors is None:
            adjacency: dict[str, set[str]] = {cid: set() for cid in self.concepts}
            for concept in self.concepts.values():
                for parent in concept.hypernyms:
                    adjacency[concept.concept_id].add(parent)
                    adjacency[parent].add(concept.concept_id)
            self._neighbors = {cid: tuple(sorted(a)) for cid, a in adjacency.items()}
        return self._neighbors[concept_id]


def _topological_depths(hypernyms: dict[str, frozenset[str]]) -> dict[str, int]:
    """Depth 1 at roots; otherwise 1 + the shallowest parent's depth.

    Raises on cycles, reporting one offending id sequence.
    """
    pending = {cid: len(parents) for cid, parents in hypernyms.items()}
    children: dict[str, list[str]] = {cid: [] for cid in hypernyms}
    for cid, parents in hypernyms.items():
        for parent in parents:
            children[parent].append(cid)
    depths: dict[str, int] = {}
    queue = sorted(cid for cid, n in pending.items() if n == 0)
    for cid in queue:
        depths[cid] = 1
    while queue:
        nxt = []
        for cid in queue:
            for child in children[cid]:
                pending[child] -= 1
                if pending[child] == 0:
                    depths[child] = 1 + min(depths[p] for p in hypernyms[child])
                    nxt.append(child)
        queue = sorted(nxt)
    if len(depths) != len(hypernyms):
        stuck = {cid for cid in hypernyms if cid not in depths}
        cycle = _find_cycle(hypernyms, stuck)
        raise DataFormatError(
            "cycle detected in hypernym graph: " + " -> ".join(cycle)
        )
    return depths


def _find_cycle(hypernyms: dict[str, frozenset[str]], stuck: set[str]) -> list[str]:
    """Extract one cycle's id sequence from the unresolvable nodes.

    Every stuck node has at least one stuck parent, so walking stuck parents
    must revisit a node; the revisited suffix is a cycle.  The sequence is
    rotated to start at its smallest id for deterministic reporting.
    """
    seen: list[str] = []
    node = min(stuck)
    while node not in seen:
        seen.append(node)
        candidates = sorted(p for p in hypernyms[node] if p in stuck)
        node = candidates[0]
        for parent in candidates:
            if parent in seen:
                node = parent
                break
    cycle = seen[seen.index(node):]
    pivot = cycle.index(min(cycle))
    return cycle[pivot:] + cycle[:pivot]


def compute_depths(net: SemanticNet) -> dict[str, int]:
    """Recompute every concept's depth from the hypernym structure."""
    hypernyms = {cid: c.hypernyms for cid, c in net.concepts.items()}
    try:
        return _topological_depths(hypernyms)
    except DataFormatError as exc:
        # the net was supposedly validated at parse time
        raise InvariantError(str(exc)) from exc


def parse_semantic_net(stream: IO[str] | Iterable[str]) -> SemanticNet:
    """Parse the 4-column TSV net format; verifies links, acyclicity, depths."""
    rows: dict[str, tuple[str, frozenset[str], frozenset[str]]] = {}
    for lineno, line in enumerate(stream, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) == 3:
            parts.append("")  # roots may omit the trailing empty column
        if len(parts) != 4:
            raise DataFormatError(f"line {lineno}: expected 4 tab-separated fields")
        concept_id, semantic_file, lemma_field, hypernym_field = (p.strip() for p in parts)
        if not concept_id or not semantic_file:
            raise DataFormatError(f"line {lineno}: blank concept id or semantic file")
        if concept_id in rows:
            raise DataFormatError(f"line {lineno}: duplicate concept id {concept_id!r}")
        lemmas = frozenset(
            lemma.strip().lower() for lemma in lemma_field.split(",") if lemma.strip()
        )
        if not lemmas:
            raise DataFormatError(f"line {lineno}: concept {concept_id!r} has no lemmas")
        hypernyms = frozenset(
            h.strip() for h in hypernym_field.split(",") if h.strip()
        )
        rows[concept_id] = (semantic_file, lemmas, hypernyms)

    if not rows:
        raise DataFormatError("empty semantic net")
    for concept_id, (_, _, hypernyms) in rows.items():
        for parent in sorted(hypernyms):
            if parent not in rows:
                raise DataFormatError(
                    f"concept {concept_id!r} references undefined hypernym {parent!r}"
                )
    depths = _topological_depths({cid: row[2] for cid, row in rows.items()})

    concepts = {
        cid: Concept(
            concept_id=cid,
            semantic_file=semantic_file,
            lemmas=lemmas,
            hypernyms=hypernyms,
            depth=depths[cid],
        )
        for cid, (semantic_file, lemmas, hypernyms) in rows.items()
    }
    lemma_index: dict[str, set[str]] = {}
    for concept in concepts.values():
        for lemma in concept.lemmas:
            lemma_index.setdefault(lemma, set()).add(concept.concept_id)
    return SemanticNet(
        concepts=concepts,
        lemma_index={lemma: frozenset(ids) for lemma, ids in lemma_index.items()},
    )


def write_semantic_net(net: SemanticNet, stream: IO[str]) -> None:
    for cid in sorted(net.concepts):
        concept = net.concepts[cid]
        stream.write(
            "\t".join(
                (
                    cid,
                    concept.semantic_file,
                    ",".join(sorted(concept.lemmas)),
                    ",".join(sorted(concept.hypernyms)),
                )
            )
            + "\n"
        )

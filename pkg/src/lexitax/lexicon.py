"""Dictionary senses, bilingual maps, and the genus-extraction rule.

File formats:
  * dictionary: JSON lines, one object per sense with fields
    ``headword``, ``sense_id``, ``pos``, ``definition`` and optional ``genus``;
  * bilingual map: 2-column TSV (source word, target word), one pair per line.

``#``-prefixed lines and blank lines are ignored in TSV inputs.  All files
are UTF-8.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import DataFormatError


def tokenize(text: str) -> tuple[str, ...]:
    """Split on whitespace, strip edge punctuation per token, lowercase.

    Accented characters are kept as-is; no lemmatization is applied, so the
    returned items are raw word forms.
    """
    out = []
    for raw in text.split():
        word = _strip_edges(raw).lower()
        if word:
            out.append(word)
    return tuple(out)


def _strip_edges(token: str) -> str:
    start, end = 0, len(token)
    while start < end and not token[start].isalnum():
        start += 1
    while end > start and not token[end - 1].isalnum():
        end -= 1
    return token[start:end]


@dataclass(frozen=True)
class Sense:
    """One dictionary definition."""

    headword: str
    sense_id: str
    pos: str
    definition_tokens: tuple[str, ...]
    genus: str | None = None


@dataclass
class Dictionary:
    """All senses of a dictionary plus lookup indexes."""

    senses: list[Sense]
    index: dict[str, list[str]] = field(default_factory=dict)
    by_id: dict[str, Sense] = field(default_factory=dict)

    @classmethod
    def from_senses(cls, senses: Iterable[Sense]) -> "Dictionary":
        senses = list(senses)
        index: dict[str, list[str]] = {}
        by_id: dict[str, Sense] = {}
        for sense in senses:
            index.setdefault(sense.headword, []).append(sense.sense_id)
            by_id[sense.sense_id] = sense
        return cls(senses=senses, index=index, by_id=by_id)

    def __len__(self) -> int:
        return len(self.senses)


@dataclass
class BilingualMap:
    """Source-language word -> set of target-language words."""

    entries: dict[str, frozenset[str]]

    def targets(self, word: str) -> frozenset[str]:
        return self.entries.get(word, frozenset())


REQUIRED_SENSE_FIELDS = ("headword", "sense_id", "pos", "definition")


def parse_sense_file(stream: IO[str] | Iterable[str]) -> Dictionary:
    """Parse a JSON-lines dictionary file.

    Rejects duplicate sense ids and malformed lines, naming the offending
    line number.  An empty stream is an error: a dictionary must contain at
    least one sense.
    """
    senses: list[Sense] = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise DataFormatError(f"line {lineno}: expected a JSON object")
        for key in REQUIRED_SENSE_FIELDS:
            if key not in obj or not isinstance(obj[key], str) or not obj[key]:
                raise DataFormatError(f"line {lineno}: missing or empty field {key!r}")
        sense_id = obj["sense_id"]
        if sense_id in seen:
            raise DataFormatError(
                f"line {lineno}: duplicate sense_id {sense_id!r} "
                f"(first seen on line {seen[sense_id]})"
            )
        seen[sense_id] = lineno
        tokens = tokenize(obj["definition"])
        if not tokens:
            raise DataFormatError(f"line {lineno}: definition has no word forms")
        genus = obj.get("genus")
        if genus is not None and (not isinstance(genus, str) or not genus):
            raise DataFormatError(f"line {lineno}: genus must be a non-empty string")
        senses.append(
            Sense(
                headword=obj["headword"],
                sense_id=sense_id,
                pos=obj["pos"],
                definition_tokens=tokens,
                genus=genus,
            )
        )
    if not senses:
        raise DataFormatError("empty dictionary")
    return Dictionary.from_senses(senses)


def write_sense_file(dictionary: Dictionary, stream: IO[str]) -> None:
    """Write a dictionary back to JSON lines (re-parsable with equal content)."""
    for sense in dictionary.senses:
        obj = {
            "headword": sense.headword,
            "sense_id": sense.sense_id,
            "pos": sense.pos,
            "definition": " ".join(sense.definition_tokens),
        }
        if sense.genus is not None:
            obj["genus"] = sense.genus
        stream.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n")


def parse_bilingual(stream: IO[str] | Iterable[str]) -> BilingualMap:
    """Parse a 2-column TSV of (source word, target word) pairs.

    Duplicate pairs collapse; all targets of a source aggregate into one set.
    """
    entries: dict[str, set[str]] = {}
    for lineno, line in enumerate(stream, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 2:
            raise DataFormatError(f"line {lineno}: expected 2 tab-separated fields")
        source, target = parts[0].strip(), parts[1].strip()
        if not source or not target:
            raise DataFormatError(f"line {lineno}: blank source or target field")
        entries.setdefault(source, set()).add(target)
    return BilingualMap(entries={k: frozenset(v) for k, v in entries.items()})


def write_bilingual(bilingual: BilingualMap, stream: IO[str]) -> None:
    for source in sorted(bilingual.entries):
        for target in sorted(bilingual.entries[source]):
            stream.write(f"{source}\t{target}\n")


def extract_genus(tokens: Iterable[str], skip_patterns: Iterable[str]) -> str | None:
    """Return the first token not in the skip list, or None when all are skipped.

    The skip list carries the configured determiners, prepositions and
    quantity words; everything else counts as a candidate genus.
    """
    skip = set(skip_patterns)
    for token in tokens:
        if token not in skip:
            return token
    return None


def derive_genus(dictionary: Dictionary, skip_patterns: Iterable[str]) -> Dictionary:
    """Fill in missing genus fields using :func:`extract_genus`.

    Senses with an explicit genus keep it (the declared value overrides the
    skip-list rule).  Senses whose tokens are all skipped keep genus=None.
    """
    skip = frozenset(skip_patterns)
    senses = []
    for sense in dictionary.senses:
        if sense.genus is None:
            genus = extract_genus(sense.definition_tokens, skip)
            if genus is not None:
                sense = Sense(
                    headword=sense.headword,
                    sense_id=sense.sense_id,
                    pos=sense.pos,
                    definition_tokens=sense.definition_tokens,
                    genus=genus,
                )
        senses.append(sense)
    return Dictionary.from_senses(senses)


def dictionary_counts(dictionary: Dictionary) -> dict[str, int]:
    """Basic corpus counters: definitions, with-genus, distinct genus/headwords."""
    with_genus = [s for s in dictionary.senses if s.genus is not None]
    return {
        "definitions": len(dictionary.senses),
        "definitions_with_genus": len(with_genus),
        "genus_terms": len({s.genus for s in with_genus}),
        "headwords": len({s.headword for s in dictionary.senses}),
    }


def parse_wordlist(stream: IO[str] | Iterable[str]) -> frozenset[str]:
    """Parse a one-word-per-line list (stopwords, genus skip words)."""
    words = set()
    for line in stream:
        word = line.strip()
        if word and not word.startswith("#"):
            words.add(word.lower())
    return frozenset(words)

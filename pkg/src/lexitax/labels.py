"""Labelled senses and their JSON-lines serialization.

One object per line: ``{"sense_id":…, "tag":…, "pass":…, "evidence":…}``.
Evidence is either distance-based (``kind=distance`` with the concept pair
and path cost) or salience-based (``kind=salience`` with per-class scores).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Iterable

from .errors import DataFormatError

PASS_FIRST = "first"
PASS_SECOND = "second"


def pass_name(round_no: int) -> str:
    """Name of a labelling round: 0=first, 1=second, then iteration-<n>."""
    if round_no == 0:
        return PASS_FIRST
    if round_no == 1:
        return PASS_SECOND
    return f"iteration-{round_no}"


@dataclass(frozen=True)
class LabelledSense:
    sense_id: str
    tag: str
    pass_name: str
    evidence: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> str:
        obj = {
            "sense_id": self.sense_id,
            "tag": self.tag,
            "pass": self.pass_name,
            "evidence": self.evidence,
        }
        return json.dumps(obj, ensure_ascii=False, separators=(",", ":"), sort_keys=True)


def write_labels(labels: Iterable[LabelledSense], stream: IO[str]) -> None:
    for label in labels:
        stream.write(label.to_json() + "\n")


def parse_labels(stream: IO[str] | Iterable[str]) -> list[LabelledSense]:
    labels = []
    for lineno, line in enumerate(stream, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DataFormatError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
        try:
            labels.append(
                LabelledSense(
                    sense_id=obj["sense_id"],
                    tag=obj["tag"],
                    pass_name=obj["pass"],
                    evidence=obj.get("evidence", {}),
                )
            )
        except (KeyError, TypeError) as exc:
            raise DataFormatError(f"line {lineno}: missing label field ({exc})") from exc
    return labels


def parse_gold(stream: IO[str] | Iterable[str]) -> dict[str, str]:
    """Parse a 2-column TSV of (sense_id, gold tag)."""
    gold: dict[str, str] = {}
    for lineno, line in enumerate(stream, start=1):
        stripped = line.rstrip("\n")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        parts = stripped.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise DataFormatError(f"line {lineno}: expected 2 tab-separated fields")
        sense_id = parts[0].strip()
        if sense_id in gold:
            raise DataFormatError(f"line {lineno}: duplicate gold entry {sense_id!r}")
        gold[sense_id] = parts[1].strip()
    if not gold:
        raise DataFormatError("empty gold file")
    return gold

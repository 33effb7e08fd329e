"""End-to-end orchestration: config, stages, artifacts, manifest, evaluation.

The pipeline is deterministic: identical inputs produce byte-identical
artifacts, and running the stage subcommands one by one produces the same
bytes as one full run.  Artifacts are written atomically (temp file then
rename) and listed in ``manifest.json`` with their content hashes.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, DataFormatError, LexitaxError
from .firstpass import CoverageReport, run_first_pass
from .labels import LabelledSense, parse_gold, write_labels
from .lexicon import (
    BilingualMap,
    Dictionary,
    derive_genus,
    parse_bilingual,
    parse_sense_file,
    parse_wordlist,
)
from .salience import SalienceTable, write_salience
from .secondpass import SecondPassResult, iterate_labelling
from .selection import (
    FilterConfig,
    GenusSelection,
    apply_filters,
    genus_frequency_table,
    sweep_report,
)
from .semnet import SemanticNet, parse_semantic_net
from .reports import render_filter_sweep
from .taxonomy import (
    Taxonomy,
    TaxonomyStats,
    apply_attachments,
    build_taxonomy,
    collect_pairs,
    export_taxonomy,
    parse_attachments,
    taxonomy_stats,
)

_CONFIG_KEYS = {
    "dictionary",
    "semantic_net",
    "bilingual",
    "stopwords",
    "gold_labels",
    "attachments",
    "target_class",
    "output_dir",
    "f1",
    "f2",
    "f3",
    "f3_sweep",
    "rounds",
    "strategy",
    "deterministic",
}


@dataclass
class PipelineConfig:
    dictionary: Path
    semantic_net: Path
    bilingual: Path
    stopwords: Path
    target_class: str
    output_dir: Path
    gold_labels: Path | None = None
    attachments: Path | None = None
    f1: bool = True
    f2: bool = True
    f3_threshold: int = 0
    f3_sweep: tuple[int, ...] | None = None
    rounds: int = 0
    strategy: str = "first-sense"

    def validate(self) -> None:
        if self.rounds < 0:
            raise ConfigError("rounds must be >= 0")
        if self.f3_threshold < 0:
            raise ConfigError("f3 threshold must be >= 0")
        if self.strategy not in ("first-sense", "conceptual-distance"):
            raise ConfigError(f"unknown strategy {self.strategy!r}")
        for name in ("dictionary", "semantic_net", "bilingual", "stopwords"):
            path = getattr(self, name)
            if not path.exists():
                raise ConfigError(f"{name} path does not exist: {path}")
        for name in ("gold_labels", "attachments"):
            path = getattr(self, name)
            if path is not None and not path.exists():
                raise ConfigError(f"{name} path does not exist: {path}")


def _parse_bool(key: str, raw: str) -> bool:
    if raw.lower() in ("true", "yes", "1", "on"):
        return True
    if raw.lower() in ("false", "no", "0", "off"):
        return False
    raise ConfigError(f"config key {key!r}: expected a boolean, got {raw!r}")


def load_config(path: Path | str, overrides: dict | None = None) -> PipelineConfig:
    """Read a flat ``key = value`` config file; overrides take precedence."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file does not exist: {path}")
    raw: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        raw[key] = value.strip()
    if overrides:
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"unknown config key {key!r}")
            raw[key] = str(value)

    base = path.parent

    def path_of(key: str, required: bool) -> Path | None:
        value = raw.get(key, "")
        if not value:
            if required:
                raise ConfigError(f"config key {key!r} is required")
            return None
        p = Path(value)
        return p if p.is_absolute() else base / p

    if raw.get("deterministic") is not None and not _parse_bool(
        "deterministic", raw["deterministic"]
    ):
        raise ConfigError("the pipeline is deterministic; 'deterministic' must be true")
    sweep: tuple[int, ...] | None = None
    if raw.get("f3_sweep"):
        try:
            sweep = tuple(int(part) for part in raw["f3_sweep"].split(",") if part.strip())
        except ValueError as exc:
            raise ConfigError(f"bad f3_sweep value: {raw['f3_sweep']!r}") from exc
    if not raw.get("target_class"):
        raise ConfigError("config key 'target_class' is required")
    try:
        f3_threshold = int(raw.get("f3", "0"))
        rounds = int(raw.get("rounds", "0"))
    except ValueError as exc:
        raise ConfigError(f"bad integer in config: {exc}") from exc

    config = PipelineConfig(
        dictionary=path_of("dictionary", required=True),
        semantic_net=path_of("semantic_net", required=True),
        bilingual=path_of("bilingual", required=True),
        stopwords=path_of("stopwords", required=True),
        target_class=raw["target_class"],
        output_dir=path_of("output_dir", required=True),
        gold_labels=path_of("gold_labels", required=False),
        attachments=path_of("attachments", required=False),
        f1=_parse_bool("f1", raw.get("f1", "true")),
        f2=_parse_bool("f2", raw.get("f2", "true")),
        f3_threshold=f3_threshold,
        f3_sweep=sweep,
        rounds=rounds,
        strategy=raw.get("strategy", "first-sense"),
    )
    return config


# ---------------------------------------------------------------------------
# artifact writing


def write_atomic(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="") as handle:
        handle.write(content)
    os.replace(tmp, path)


def sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


@dataclass
class Manifest:
    artifacts: list[dict] = field(default_factory=list)
    failed_stage: str | None = None
    error: str | None = None

    def add(self, path: Path, stage: str, root: Path) -> None:
        self.artifacts.append(
            {
                "file": path.relative_to(root).as_posix(),
                "stage": stage,
                "sha256": sha256_file(path),
            }
        )

    def to_json(self) -> str:
        obj: dict = {"artifacts": sorted(self.artifacts, key=lambda a: a["file"])}
        if self.failed_stage is not None:
            obj["failed_stage"] = self.failed_stage
            obj["error"] = self.error
        return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# loading helpers shared by the pipeline and the stage subcommands


def load_dictionary(path: Path, stopwords_path: Path) -> Dictionary:
    """Parse the dictionary and fill in genus terms with the skip-word rule."""
    skip = load_wordlist(stopwords_path)
    with open(path, encoding="utf-8") as handle:
        parsed = parse_sense_file(handle)
    return derive_genus(parsed, skip)


def load_net(path: Path) -> SemanticNet:
    with open(path, encoding="utf-8") as handle:
        return parse_semantic_net(handle)


def load_bilingual(path: Path) -> BilingualMap:
    with open(path, encoding="utf-8") as handle:
        return parse_bilingual(handle)


def load_wordlist(path: Path) -> frozenset[str]:
    with open(path, encoding="utf-8") as handle:
        return parse_wordlist(handle)


# ---------------------------------------------------------------------------
# artifact content builders (single source of truth for stage outputs)


def labels_text(labels: list[LabelledSense]) -> str:
    import io

    buf = io.StringIO()
    write_labels(labels, buf)
    return buf.getvalue()


def salience_text(table: SalienceTable) -> str:
    import io

    buf = io.StringIO()
    write_salience(table, buf)
    return buf.getvalue()


def histogram_text(result: SecondPassResult) -> str:
    total = len(result.labels) + len(result.unlabelled)
    lines = []
    for cls, count in sorted(result.histogram.items()):
        pct = 100.0 * count / total if total else 0.0
        lines.append(f"{cls}\t{count}\t{pct:.1f}")
    lines.append(f"#labelled\t{len(result.labels)}")
    lines.append(f"#unlabelled\t{len(result.unlabelled)}")
    lines.append(f"#coverage\t{100.0 * result.coverage:.1f}")
    return "\n".join(lines) + "\n"


def taxonomy_json_text(taxonomy: Taxonomy, stats: TaxonomyStats) -> str:
    return export_taxonomy(taxonomy, "json", stats)


def sweep_text(report_rows, coverage_rows) -> str:
    rows = [
        (f"F3>{row.threshold} {row.combo}", row.genus_count, row.genus_accuracy,
         row.definition_count, row.definition_accuracy)
        for row in report_rows
    ]
    out = render_filter_sweep(rows)
    if coverage_rows:
        from .reports import render_coverage_vs

        out += "\n" + render_coverage_vs(coverage_rows)
    return out


def sweep_tsv(report_rows) -> str:
    lines = ["combo\tthreshold\tgenus_terms\tgenus_accuracy\tdefinitions\tdefinition_accuracy"]
    for row in report_rows:
        lines.append(
            "\t".join(
                (
                    row.combo,
                    str(row.threshold),
                    str(row.genus_count),
                    "" if row.genus_accuracy is None else f"{row.genus_accuracy!r}",
                    str(row.definition_count),
                    "" if row.definition_accuracy is None else f"{row.definition_accuracy!r}",
                )
            )
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class EvalReport:
    accuracy: float
    coverage: float
    evaluated: int
    matching: int
    labelled: int
    total: int
    confusion: dict[str, dict[str, int]]
    unknown_sense_ids: list[str]

    def to_json(self) -> str:
        obj = {
            "accuracy": self.accuracy,
            "coverage": self.coverage,
            "evaluated": self.evaluated,
            "matching": self.matching,
            "labelled": self.labelled,
            "total": self.total,
            "confusion": self.confusion,
            "unknown_sense_ids": self.unknown_sense_ids,
        }
        return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def evaluate_labels(
    labels: list[LabelledSense], gold: dict[str, str], dictionary: Dictionary
) -> EvalReport:
    """Accuracy over gold-covered labelled senses; coverage over the dictionary.

    Gold entries naming unknown senses are excluded and reported.
    """
    if not gold:
        raise DataFormatError("empty gold file")
    unknown = sorted(sid for sid in gold if sid not in dictionary.by_id)
    usable = {sid: tag for sid, tag in gold.items() if sid in dictionary.by_id}
    predicted = {label.sense_id: label.tag for label in labels}
    evaluated = matching = 0
    confusion: dict[str, dict[str, int]] = {}
    for sense_id, gold_tag in sorted(usable.items()):
        if sense_id not in predicted:
            continue
        evaluated += 1
        tag = predicted[sense_id]
        if tag == gold_tag:
            matching += 1
        row = confusion.setdefault(gold_tag, {})
        row[tag] = row.get(tag, 0) + 1
    if evaluated == 0:
        raise DataFormatError("no evaluable senses")
    return EvalReport(
        accuracy=matching / evaluated,
        coverage=len(labels) / len(dictionary.senses),
        evaluated=evaluated,
        matching=matching,
        labelled=len(labels),
        total=len(dictionary.senses),
        confusion=confusion,
        unknown_sense_ids=unknown,
    )


# ---------------------------------------------------------------------------
# the full pipeline


@dataclass
class PipelineResult:
    manifest: Manifest
    coverage: CoverageReport
    selection: GenusSelection
    taxonomy: Taxonomy
    stats: TaxonomyStats


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    """ingest -> first pass -> train -> relabel (-> iterate) -> select ->
    build -> export, writing each artifact and the manifest."""
    out = config.output_dir
    out.mkdir(parents=True, exist_ok=True)
    manifest = Manifest()

    def emit(name: str, stage: str, content: str) -> Path:
        path = out / name
        write_atomic(path, content)
        manifest.add(path, stage, out)
        return path

    stage = "ingest"
    try:
        config.validate()
        dictionary = load_dictionary(config.dictionary, config.stopwords)
        net = load_net(config.semantic_net)
        bilingual = load_bilingual(config.bilingual)
        stopwords = load_wordlist(config.stopwords)

        stage = "first-pass"
        first_labels, coverage = run_first_pass(dictionary, net, bilingual)
        emit("first_pass.jsonl", stage, labels_text(first_labels))
        emit("first_pass_coverage.json", stage, coverage.to_json())

        stage = "train"
        rounds = iterate_labelling(
            dictionary, net, bilingual, rounds=config.rounds + 1, stopwords=stopwords
        )
        emit("salience.tsv", stage, salience_text(rounds[0].table))

        stage = "label"
        emit("second_pass.jsonl", stage, labels_text(rounds[0].result.labels))
        emit("second_pass_histogram.tsv", stage, histogram_text(rounds[0].result))
        for extra in rounds[1:]:
            name = f"round_{extra.round_no}"
            emit(f"{name}.jsonl", "iterate", labels_text(extra.result.labels))
            emit(f"{name}_histogram.tsv", "iterate", histogram_text(extra.result))
        final = rounds[-1]

        stage = "select-genus"
        table = genus_frequency_table(final.result.labels, dictionary)
        filter_config = FilterConfig(config.f1, config.f2, config.f3_threshold)
        selection = apply_filters(
            table, config.target_class, bilingual, net, filter_config
        )
        emit("genus_selection.json", stage, selection.to_json())
        gold = None
        if config.gold_labels is not None:
            with open(config.gold_labels, encoding="utf-8") as handle:
                gold = parse_gold(handle)
        if config.f3_sweep:
            report = sweep_report(
                table, config.target_class, bilingual, net, config.f3_sweep, gold
            )
            emit("filter_sweep.txt", stage, sweep_text(report.rows, report.coverage_vs))
            emit("filter_sweep.tsv", stage, sweep_tsv(report.rows))

        stage = "build-tax"
        pairs, _skipped = collect_pairs(
            final.result.labels,
            config.target_class,
            selection.selected,
            dictionary,
            net,
            bilingual,
            config.strategy,
        )
        taxonomy = build_taxonomy(pairs, config.target_class)
        if config.attachments is not None:
            with open(config.attachments, encoding="utf-8") as handle:
                taxonomy = apply_attachments(taxonomy, parse_attachments(handle))
        stats = taxonomy_stats(taxonomy, dictionary)
        emit("taxonomy.json", stage, taxonomy_json_text(taxonomy, stats))

        stage = "export"
        emit("taxonomy.dot", stage, export_taxonomy(taxonomy, "dot"))
        emit("taxonomy.txt", stage, export_taxonomy(taxonomy, "text"))

        if gold is not None:
            stage = "eval"
            emit(
                "eval.json",
                stage,
                evaluate_labels(final.result.labels, gold, dictionary).to_json(),
            )
    except LexitaxError as exc:
        manifest.failed_stage = stage
        manifest.error = str(exc)
        write_atomic(out / "manifest.json", manifest.to_json())
        raise type(exc)(f"stage {stage!r}: {exc}") from exc

    write_atomic(out / "manifest.json", manifest.to_json())
    return PipelineResult(
        manifest=manifest,
        coverage=coverage,
        selection=selection,
        taxonomy=taxonomy,
        stats=stats,
    )

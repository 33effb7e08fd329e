"""Command-line interface.

Subcommands mirror the pipeline stages; ``run`` executes everything from a
config file.  Flags given to ``run`` override config keys.  Exit codes:
0 success, 1 usage/config error, 2 data/format error, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import LexitaxError
from .firstpass import run_first_pass
from .labels import parse_gold, parse_labels
from .lexicon import dictionary_counts
from .pipeline import (
    evaluate_labels,
    histogram_text,
    labels_text,
    load_bilingual,
    load_config,
    load_dictionary,
    load_net,
    load_wordlist,
    run_pipeline,
    salience_text,
    sweep_text,
    sweep_tsv,
    taxonomy_json_text,
    write_atomic,
)
from .reports import render_class_histogram, render_count_block
from .salience import parse_salience, train_salience
from .secondpass import iterate_labelling, run_second_pass
from .selection import FilterConfig, apply_filters, genus_frequency_table, sweep_report
from .taxonomy import (
    Taxonomy,
    TaxonomyNode,
    TaxonomyStats,
    apply_attachments,
    build_taxonomy,
    collect_pairs,
    export_taxonomy,
    parse_attachments,
    taxonomy_stats,
)

import json


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 on usage errors, matching the documented codes."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_resource_args(parser, *names):
    flags = {
        "dictionary": ("--dictionary", "dictionary JSON-lines file"),
        "net": ("--net", "semantic net TSV file"),
        "bilingual": ("--bilingual", "bilingual map TSV file"),
        "stopwords": ("--stopwords", "stopword / genus-skip word list"),
        "labels": ("--labels", "labelled corpus JSON-lines file"),
        "salience": ("--salience", "salience table TSV file"),
        "selection": ("--selection", "genus selection JSON file"),
        "taxonomy": ("--taxonomy", "taxonomy JSON file"),
        "gold": ("--gold", "gold labels TSV file"),
        "out_dir": ("--out-dir", "output directory"),
    }
    for name in names:
        flag, help_text = flags[name]
        parser.add_argument(flag, required=True, type=Path, help=help_text)


def _load_taxonomy_json(path: Path) -> tuple[Taxonomy, TaxonomyStats | None]:
    with open(path, encoding="utf-8") as handle:
        obj = json.load(handle)
    nodes = {
        sense_id: TaxonomyNode(
            sense_id=sense_id,
            hypernym=data["hypernym"],
            children=list(data["children"]),
            level=data["level"],
        )
        for sense_id, data in obj["nodes"].items()
    }
    taxonomy = Taxonomy(
        semantic_class=obj["class"],
        nodes=nodes,
        tops=list(obj["tops"]),
        dropped_cycles=[list(c) for c in obj.get("dropped_cycles", [])],
        dropped_cycle_pairs=[tuple(p) for p in obj.get("dropped_cycle_pairs", [])],
        dropped_duplicates=[tuple(p) for p in obj.get("dropped_duplicates", [])],
        dropped_self_loops=[tuple(p) for p in obj.get("dropped_self_loops", [])],
    )
    stats = None
    if "stats" in obj:
        raw = obj["stats"]
        stats = TaxonomyStats(
            senses=raw["senses"],
            tops=raw["tops"],
            levels=raw["levels"],
            per_level={int(k): v for k, v in raw["per_level"].items()},
            genus_terms=raw.get("genus_terms"),
        )
    return taxonomy, stats


def cmd_ingest(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    counts = dictionary_counts(dictionary)
    labels = {
        "definitions": "Noun definitions",
        "definitions_with_genus": "Noun definitions with genus",
        "genus_terms": "Genus terms",
        "headwords": "Headwords",
    }
    print(render_count_block([(labels[k], v) for k, v in counts.items()]), end="")
    if args.out:
        write_atomic(
            args.out,
            json.dumps(counts, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
        )
    return 0


def cmd_first_pass(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    net = load_net(args.net)
    bilingual = load_bilingual(args.bilingual)
    labels, coverage = run_first_pass(dictionary, net, bilingual)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_atomic(args.out_dir / "first_pass.jsonl", labels_text(labels))
    write_atomic(args.out_dir / "first_pass_coverage.json", coverage.to_json())
    print(render_count_block(coverage.rows()), end="")
    return 0


def cmd_train(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    with open(args.labels, encoding="utf-8") as handle:
        labels = parse_labels(handle)
    table = train_salience(labels, dictionary, load_wordlist(args.stopwords))
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_atomic(args.out_dir / "salience.tsv", salience_text(table))
    for cls, tokens, salient in table.class_report():
        print(f"{cls}\t{tokens}\t{salient}")
    return 0


def cmd_label(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    with open(args.salience, encoding="utf-8") as handle:
        table = parse_salience(handle)
    result = run_second_pass(dictionary, table, load_wordlist(args.stopwords))
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_atomic(args.out_dir / "second_pass.jsonl", labels_text(result.labels))
    write_atomic(args.out_dir / "second_pass_histogram.tsv", histogram_text(result))
    print(render_class_histogram(sorted(result.histogram.items())), end="")
    return 0


def cmd_iterate(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    net = load_net(args.net)
    bilingual = load_bilingual(args.bilingual)
    rounds = iterate_labelling(
        dictionary, net, bilingual, args.rounds, load_wordlist(args.stopwords)
    )
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for extra in rounds:
        name = "second_pass" if extra.round_no == 1 else f"round_{extra.round_no}"
        write_atomic(args.out_dir / f"{name}.jsonl", labels_text(extra.result.labels))
        write_atomic(
            args.out_dir / f"{name}_histogram.tsv", histogram_text(extra.result)
        )
        print(
            f"round {extra.round_no}: labelled {len(extra.result.labels)}, "
            f"changed {extra.labels_changed}, coverage {extra.result.coverage:.3f}"
            + (" (fixpoint)" if extra.fixpoint else "")
        )
    return 0


def cmd_select_genus(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    net = load_net(args.net)
    bilingual = load_bilingual(args.bilingual)
    with open(args.labels, encoding="utf-8") as handle:
        labels = parse_labels(handle)
    table = genus_frequency_table(labels, dictionary)
    config = FilterConfig(f1=args.f1, f2=args.f2, f3_threshold=args.f3)
    selection = apply_filters(table, args.target_class, bilingual, net, config)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_atomic(args.out_dir / "genus_selection.json", selection.to_json())
    if args.sweep:
        gold = None
        if args.gold:
            with open(args.gold, encoding="utf-8") as handle:
                gold = parse_gold(handle)
        thresholds = [int(part) for part in args.sweep.split(",") if part.strip()]
        report = sweep_report(table, args.target_class, bilingual, net, thresholds, gold)
        text = sweep_text(report.rows, report.coverage_vs)
        write_atomic(args.out_dir / "filter_sweep.txt", text)
        write_atomic(args.out_dir / "filter_sweep.tsv", sweep_tsv(report.rows))
        print(text, end="")
    print(f"selected {len(selection.selected)}, rejected {len(selection.rejected)}")
    return 0


def cmd_build_tax(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    net = load_net(args.net)
    bilingual = load_bilingual(args.bilingual)
    with open(args.labels, encoding="utf-8") as handle:
        labels = parse_labels(handle)
    with open(args.selection, encoding="utf-8") as handle:
        selection_obj = json.load(handle)
    pairs, skipped = collect_pairs(
        labels,
        selection_obj["class"],
        set(selection_obj["selected"]),
        dictionary,
        net,
        bilingual,
        args.strategy,
    )
    taxonomy = build_taxonomy(pairs, selection_obj["class"])
    if args.attachments:
        with open(args.attachments, encoding="utf-8") as handle:
            taxonomy = apply_attachments(taxonomy, parse_attachments(handle))
    stats = taxonomy_stats(taxonomy, dictionary)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_atomic(args.out_dir / "taxonomy.json", taxonomy_json_text(taxonomy, stats))
    write_atomic(args.out_dir / "taxonomy.dot", export_taxonomy(taxonomy, "dot"))
    write_atomic(args.out_dir / "taxonomy.txt", export_taxonomy(taxonomy, "text"))
    print(
        f"taxonomy: {stats.senses} senses, {stats.tops} tops, "
        f"{stats.levels} levels, {len(skipped)} skipped"
    )
    return 0


def cmd_stats(args) -> int:
    taxonomy, stats = _load_taxonomy_json(args.taxonomy)
    if stats is None:
        stats = taxonomy_stats(taxonomy)
    print(json.dumps(stats.as_dict(), ensure_ascii=False, sort_keys=True, indent=2))
    return 0


def cmd_eval(args) -> int:
    dictionary = load_dictionary(args.dictionary, args.stopwords)
    with open(args.labels, encoding="utf-8") as handle:
        labels = parse_labels(handle)
    with open(args.gold, encoding="utf-8") as handle:
        gold = parse_gold(handle)
    report = evaluate_labels(labels, gold, dictionary)
    for sense_id in report.unknown_sense_ids:
        print(f"warning: gold references unknown sense {sense_id!r}", file=sys.stderr)
    print(report.to_json(), end="")
    if args.out:
        write_atomic(args.out, report.to_json())
    return 0


def cmd_export(args) -> int:
    taxonomy, stats = _load_taxonomy_json(args.taxonomy)
    print(export_taxonomy(taxonomy, args.format, stats), end="")
    return 0


def cmd_run(args) -> int:
    overrides = {
        "target_class": args.target_class,
        "f3": args.f3,
        "rounds": args.rounds,
        "strategy": args.strategy,
        "output_dir": args.output_dir,
        "f1": args.f1,
        "f2": args.f2,
        "f3_sweep": args.f3_sweep,
    }
    config = load_config(args.config, overrides)
    result = run_pipeline(config)
    for artifact in result.manifest.artifacts:
        print(f"{artifact['stage']:<12} {artifact['file']}  {artifact['sha256'][:12]}")
    print(
        f"taxonomy: {result.stats.senses} senses, {result.stats.tops} tops, "
        f"{result.stats.levels} levels"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lexitax",
        description=(
            "Build semantic taxonomies from a machine-readable dictionary. "
            "The run subcommand reads a flat key=value config file; any flag "
            "passed to run overrides the matching config key."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and validate a dictionary; print counts")
    _add_resource_args(p, "dictionary", "stopwords")
    p.add_argument("--out", type=Path, help="optional counts JSON output")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("first-pass", help="distance-based labelling pass")
    _add_resource_args(p, "dictionary", "net", "bilingual", "stopwords", "out_dir")
    p.set_defaults(func=cmd_first_pass)

    p = sub.add_parser("train", help="train per-class salient words")
    _add_resource_args(p, "dictionary", "stopwords", "labels", "out_dir")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("label", help="relabel every sense from a salience table")
    _add_resource_args(p, "dictionary", "stopwords", "salience", "out_dir")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("iterate", help="run k train/relabel rounds")
    _add_resource_args(p, "dictionary", "net", "bilingual", "stopwords", "out_dir")
    p.add_argument("--rounds", type=int, default=1, help="number of rounds (>= 1)")
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("select-genus", help="apply the genus filters for a class")
    _add_resource_args(p, "dictionary", "net", "bilingual", "stopwords", "labels", "out_dir")
    p.add_argument("--target-class", required=True, help="semantic class under study")
    p.add_argument("--f1", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--f2", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--f3", type=int, default=0, help="frequency threshold (keep > t)")
    p.add_argument("--sweep", help="comma-separated thresholds for the sweep report")
    p.add_argument("--gold", type=Path, help="gold labels TSV for accuracy columns")
    p.set_defaults(func=cmd_select_genus)

    p = sub.add_parser("build-tax", help="collect pairs and assemble the taxonomy")
    _add_resource_args(
        p, "dictionary", "net", "bilingual", "stopwords", "labels", "selection", "out_dir"
    )
    p.add_argument(
        "--strategy",
        choices=("first-sense", "conceptual-distance"),
        default="first-sense",
    )
    p.add_argument("--attachments", type=Path, help="manual top-attachment TSV")
    p.set_defaults(func=cmd_build_tax)

    p = sub.add_parser("stats", help="print statistics of a taxonomy JSON")
    _add_resource_args(p, "taxonomy")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("eval", help="score a labelled corpus against gold labels")
    _add_resource_args(p, "dictionary", "stopwords", "labels", "gold")
    p.add_argument("--out", type=Path, help="optional JSON report output")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("export", help="export a taxonomy JSON to another format")
    _add_resource_args(p, "taxonomy")
    p.add_argument("--format", choices=("json", "dot", "text"), default="text")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("run", help="run the full pipeline from a config file")
    p.add_argument("--config", required=True, type=Path, help="pipeline config file")
    p.add_argument("--target-class")
    p.add_argument("--f1", choices=("true", "false"))
    p.add_argument("--f2", choices=("true", "false"))
    p.add_argument("--f3", type=int)
    p.add_argument("--f3-sweep", dest="f3_sweep")
    p.add_argument("--rounds", type=int)
    p.add_argument("--strategy", choices=("first-sense", "conceptual-distance"))
    p.add_argument("--output-dir", dest="output_dir", type=Path)
    p.set_defaults(func=cmd_run)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except LexitaxError as exc:
        print(f"lexitax: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"lexitax: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

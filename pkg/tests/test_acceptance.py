"""Acceptance suite: one test per exit criterion, each printing a PASS line.

Expected values come from the committed brute-force oracles (tests/oracles)
or from frozen golden files generated by an oracle-verified run; tolerances
are pinned in the assertions.
"""

from __future__ import annotations

import filecmp
import io
import json
import math
import random
import sys
import time
from fractions import Fraction

import pytest

from lexitax.distance import conceptual_distance, shortest_weighted_path
from lexitax.pipeline import load_config, run_pipeline
from lexitax.salience import SalienceTable, association_ratio, parse_salience
from lexitax.secondpass import score_definition
from lexitax.selection import FilterConfig, GenusFrequencyTable, apply_filters
from lexitax.semnet import parse_semantic_net
from lexitax.taxonomy import build_taxonomy
from golden.regenerate import table_renders
from oracles import brute
from oracles.run_fixture import oracle_pipeline

sys.setrecursionlimit(4000)

SEED = 20260808


def _report(name: str) -> None:
    print(f"PASS: {name}")


def _random_dag(rng: random.Random):
    """Random multi-root DAG within 200 concepts / 400 edges, sparse enough
    for the exhaustive-path oracle to finish instantly."""
    bucket = rng.random()
    if bucket < 0.6:
        n = rng.randint(5, 40)
    elif bucket < 0.9:
        n = rng.randint(41, 120)
    else:
        n = rng.randint(121, 200)
    names = [f"c{i:03d}" for i in range(n)]
    hypernyms: dict[str, set[str]] = {}
    edges = 0
    for i, name in enumerate(names):
        if i == 0 or (rng.random() < 0.12 and edges < 399):
            hypernyms[name] = set()
        else:
            hypernyms[name] = {rng.choice(names[:i])}
            edges += 1
    for _ in range(rng.randint(0, 10)):
        if edges >= 400:
            break
        i = rng.randint(1, n - 1)
        parent = rng.choice(names[:i])
        if parent not in hypernyms[names[i]]:
            hypernyms[names[i]].add(parent)
            edges += 1
    assert len(names) <= 200 and edges <= 400
    return hypernyms


def _net_of(hypernyms) -> "SemanticNet":
    lines = [
        f"{name}\t13 food\t{name}\t{','.join(sorted(parents))}"
        for name, parents in hypernyms.items()
    ]
    return parse_semantic_net(io.StringIO("\n".join(lines) + "\n"))


def test_criterion_distance_oracle_equivalence():
    """Distance equals the exhaustive simple-path search on 100 random DAGs."""
    started = time.perf_counter()
    rng = random.Random(SEED)
    for _ in range(100):
        hypernyms = _random_dag(rng)
        net = _net_of(hypernyms)
        depths = brute.brute_depths(hypernyms)
        assert {cid: c.depth for cid, c in net.concepts.items()} == depths
        names = sorted(hypernyms)
        for _ in range(2):
            s1 = set(rng.sample(names, rng.randint(1, 3)))
            s2 = set(rng.sample(names, rng.randint(1, 3)))
            expected = brute.brute_conceptual_distance(hypernyms, depths, s1, s2)
            got = conceptual_distance(net, s1, s2)
            if expected is None:
                assert got is None
            else:
                assert abs(got.distance - float(expected[0])) <= 1e-9
                assert got.best_pair == expected[1]
                assert got.path.concepts == expected[2]
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"distance oracle suite took {elapsed:.1f}s"
    _report("conceptual distance matches exhaustive path search on 100 random DAGs")


def test_criterion_worked_example_and_set_properties(four_node_net):
    """The 4-node worked value is exact; symmetry and union monotonicity
    hold on 1,000 randomized concept-set pairs."""
    path = shortest_weighted_path(four_node_net, "B", "C")
    assert path.concepts == ("B", "A", "R", "C")
    assert path.cost == float(Fraction(1, 3) + Fraction(1, 2) + 1 + Fraction(1, 2))
    assert path.cost == pytest.approx(2.3333333333, abs=1e-9)

    rng = random.Random(SEED + 1)
    nets = []
    for _ in range(4):
        hypernyms = _random_dag(rng)
        nets.append((sorted(hypernyms), _net_of(hypernyms)))
    for trial in range(1000):
        names, net = nets[trial % len(nets)]
        s1 = set(rng.sample(names, rng.randint(1, 4)))
        s2 = set(rng.sample(names, rng.randint(1, 4)))
        d12 = conceptual_distance(net, s1, s2)
        d21 = conceptual_distance(net, s2, s1)
        assert (d12 is None) == (d21 is None)
        extra = {rng.choice(names)}
        grown = conceptual_distance(net, s1 | extra, s2)
        if d12 is not None:
            assert d12.distance == d21.distance
            assert grown is not None
            assert grown.distance <= d12.distance
    _report("worked path example exact; symmetry and union monotonicity on 1,000 pairs")


def test_criterion_association_ratio_arithmetic():
    """50 independently derived score values within 1e-9, both zero
    conventions, and exact invariance under doubling all counts."""
    assert association_ratio(4, 10, 5, 100) == pytest.approx(1.2, abs=1e-9)
    assert association_ratio(2, 10, 20, 100) == 0.0  # equal probabilities
    assert association_ratio(0, 10, 5, 100) == 0.0  # absent from the class

    rng = random.Random(SEED + 2)
    checked = 0
    while checked < 50:
        class_total = rng.randint(1, 400)
        in_class = rng.randint(0, class_total)
        rest = rng.randint(0, 400)
        word_count = in_class + rng.randint(0, rest)
        corpus_total = class_total + rest
        if word_count == 0 or word_count > corpus_total:
            continue
        # independent route: exact rational probabilities, log difference
        p_class = Fraction(in_class, class_total)
        p_word = Fraction(word_count, corpus_total)
        if in_class == 0:
            expected = 0.0
        else:
            expected = float(p_class) * (
                math.log2(float(p_class)) - math.log2(float(p_word))
            )
        got = association_ratio(in_class, class_total, word_count, corpus_total)
        assert got == pytest.approx(expected, abs=1e-9)
        doubled = association_ratio(
            2 * in_class, 2 * class_total, 2 * word_count, 2 * corpus_total
        )
        assert doubled == got  # exact, not approximate
        checked += 1
    _report("association-ratio arithmetic: 50 derived values, zero conventions, doubling exact")


def _random_table(rng: random.Random) -> tuple[SalienceTable, list[str]]:
    words = [f"w{i}" for i in range(rng.randint(2, 8))]
    classes = [f"cl{i}" for i in range(rng.randint(2, 5))]
    scores = {}
    for word in words:
        for cls in classes:
            if rng.random() < 0.6:
                scores[(word, cls)] = rng.randint(1, 64) / 8  # dyadic: sums exact
    return SalienceTable(
        scores=scores,
        class_totals={cls: 1 for cls in classes},
        corpus_total=len(classes),
        word_counts={w: 1 for w in words},
        class_word_counts={key: 1 for key in scores},
    ), words


def test_criterion_evidence_sum_properties():
    """Additivity, zero-token neutrality and argmax invariance under uniform
    positive scaling, on 1,000 randomized tables and definitions."""
    rng = random.Random(SEED + 3)
    for _ in range(1000):
        table, words = _random_table(rng)
        tokens1 = [rng.choice(words) for _ in range(rng.randint(0, 6))]
        tokens2 = [rng.choice(words) for _ in range(rng.randint(0, 6))]

        combined = score_definition(tokens1 + tokens2, table)
        part1 = score_definition(tokens1, table)
        part2 = score_definition(tokens2, table)
        expected = {
            cls: part1.scores.get(cls, 0.0) + part2.scores.get(cls, 0.0)
            for cls in set(part1.scores) | set(part2.scores)
        }
        assert combined.scores == expected  # dyadic values make sums exact

        with_zero = score_definition(tokens1 + ["unseen-token"], table)
        assert with_zero.winner == part1.winner
        assert with_zero.scores == part1.scores

        factor = rng.choice((0.5, 2.0, 3.0, 4.0, 8.0))
        scaled_table = SalienceTable(
            scores={k: v * factor for k, v in table.scores.items()},
            class_totals=table.class_totals,
            corpus_total=table.corpus_total,
            word_counts=table.word_counts,
            class_word_counts=table.class_word_counts,
        )
        scaled = score_definition(tokens1 + tokens2, scaled_table)
        assert scaled.winner == combined.winner
    _report("evidence sums: additivity, zero neutrality, scale-invariant argmax on 1,000 trials")


def test_criterion_filter_semantics(dictionary, net, bilingual, stopwords):
    """F3 anti-monotone over thresholds 1..10 on the fixture; F2 keeps each
    genus for at most one class on 500 random tables; threshold boundary
    exact."""
    from lexitax.firstpass import run_first_pass
    from lexitax.salience import train_salience
    from lexitax.secondpass import run_second_pass
    from lexitax.selection import genus_frequency_table

    first, _ = run_first_pass(dictionary, net, bilingual)
    table = train_salience(first, dictionary, stopwords)
    labels = run_second_pass(dictionary, table, stopwords).labels
    freq = genus_frequency_table(labels, dictionary)
    for combo in (FilterConfig(False, False, 0), FilterConfig(True, False, 0),
                  FilterConfig(False, True, 0), FilterConfig(True, True, 0)):
        previous = None
        for threshold in range(1, 11):
            config = FilterConfig(combo.f1, combo.f2, threshold)
            selected = apply_filters(freq, "13 food", bilingual, net, config).selected
            if previous is not None:
                assert selected <= previous
            previous = selected

    boundary = GenusFrequencyTable(counts={"X": {"keeps": 10, "drops": 9}})
    selection = apply_filters(boundary, "X", bilingual, net, FilterConfig(False, False, 9))
    assert selection.selected == {"keeps"}
    assert selection.rejected == {"drops": "F3"}

    rng = random.Random(SEED + 4)
    for _ in range(500):
        classes = [f"cl{i}" for i in range(rng.randint(2, 5))]
        words = [f"g{i}" for i in range(rng.randint(1, 10))]
        counts = {}
        for cls in classes:
            row = {w: rng.randint(1, 9) for w in words if rng.random() < 0.7}
            if row:
                counts[cls] = row
        if not counts:
            continue
        freq_rand = GenusFrequencyTable(counts=counts)
        kept_by: dict[str, list[str]] = {}
        for cls in counts:
            config = FilterConfig(False, True, 0)
            for genus in apply_filters(freq_rand, cls, bilingual, net, config).selected:
                kept_by.setdefault(genus, []).append(cls)
        for genus, owners in kept_by.items():
            assert len(owners) <= 1, (genus, owners)
    _report("filter semantics: F3 anti-monotone, F2 partition on 500 tables, boundary exact")


def test_criterion_taxonomy_integrity():
    """500 randomized pair lists with injected cycles, duplicates and
    self-loops keep acyclicity, pair conservation and level arithmetic;
    the documented two-pair chain builds exactly."""
    chain = build_taxonomy(
        [("vino_1_1", "zumo_1_1"), ("rueda_1_1", "vino_1_1")], "13 food"
    )
    assert chain.tops == ["zumo_1_1"]
    assert chain.nodes["vino_1_1"].hypernym == "zumo_1_1"
    assert chain.nodes["rueda_1_1"].hypernym == "vino_1_1"
    assert {s: n.level for s, n in chain.nodes.items()} == {
        "zumo_1_1": 1, "vino_1_1": 2, "rueda_1_1": 3,
    }

    rng = random.Random(SEED + 5)
    for _ in range(500):
        ids = [f"s{i:02d}" for i in range(rng.randint(2, 24))]
        pairs = []
        for _ in range(rng.randint(0, 26)):
            pairs.append((rng.choice(ids), rng.choice(ids)))
        # injected pathologies
        if len(ids) >= 3 and rng.random() < 0.8:
            loop = rng.sample(ids, rng.randint(2, min(5, len(ids))))
            pairs += [(loop[i], loop[(i + 1) % len(loop)]) for i in range(len(loop))]
        if pairs and rng.random() < 0.7:
            pairs.append(pairs[rng.randrange(len(pairs))])  # duplicate
        if rng.random() < 0.7:
            victim = rng.choice(ids)
            pairs.append((victim, victim))  # self-loop
        rng.shuffle(pairs)

        taxonomy = build_taxonomy(pairs, "13 food")
        parent = {
            s: n.hypernym for s, n in taxonomy.nodes.items() if n.hypernym is not None
        }
        assert brute.brute_is_acyclic(parent)
        dropped = (
            len(taxonomy.dropped_duplicates)
            + len(taxonomy.dropped_self_loops)
            + len(taxonomy.dropped_cycle_pairs)
        )
        assert len(parent) + dropped == len(pairs)  # conservation, exact
        assert {s: n.level for s, n in taxonomy.nodes.items()} == brute.brute_levels(
            parent, set(taxonomy.nodes)
        )
        for sense_id, node in taxonomy.nodes.items():
            if node.hypernym is not None:
                assert node.level == taxonomy.nodes[node.hypernym].level + 1
        per_level: dict[int, int] = {}
        for node in taxonomy.nodes.values():
            per_level[node.level] = per_level.get(node.level, 0) + 1
        assert sum(per_level.values()) == len(taxonomy.nodes)

        reference = brute.brute_taxonomy(pairs)
        assert parent == reference["parent"]
        assert {s: n.level for s, n in taxonomy.nodes.items()} == reference["levels"]
        assert sorted(map(tuple, taxonomy.dropped_cycle_pairs)) == sorted(
            map(tuple, reference["cycle_pairs"])
        )
    _report("taxonomy integrity on 500 randomized pair lists; chain example exact")


def test_criterion_end_to_end_fixture(fixtures_dir, golden_dir, tmp_path):
    """The bundled-fixture pipeline reproduces the checked-in goldens byte
    for byte, every stage agrees with the independent oracle pipeline, and
    the whole run stays under ten seconds."""
    started = time.perf_counter()
    out = tmp_path / "run"
    config = load_config(fixtures_dir / "pipeline.cfg", overrides={"output_dir": out})
    run_pipeline(config)

    names = [
        "first_pass.jsonl", "first_pass_coverage.json", "salience.tsv",
        "second_pass.jsonl", "second_pass_histogram.tsv", "genus_selection.json",
        "taxonomy.json", "taxonomy.dot", "taxonomy.txt", "manifest.json",
    ]
    match, mismatch, errors = filecmp.cmpfiles(out, golden_dir / "run", names, shallow=False)
    assert mismatch == [] and errors == [], (mismatch, errors)
    assert len(match) == len(names)

    oracle = oracle_pipeline()

    first = [json.loads(line) for line in (out / "first_pass.jsonl").open(encoding="utf-8")]
    assert [(o["sense_id"], o["tag"]) for o in first] == oracle["first_labels"]
    oracle_first = {sid: (pair, cost) for sid, _, pair, cost in oracle["first"]}
    for obj in first:
        pair, cost = oracle_first[obj["sense_id"]]
        assert tuple(obj["evidence"]["pair"]) == pair
        assert abs(obj["evidence"]["distance"] - float(cost)) <= 1e-9

    coverage = json.loads((out / "first_pass_coverage.json").read_text(encoding="utf-8"))
    for key, value in oracle["coverage"].items():
        assert coverage[key] == value, key

    with (out / "salience.tsv").open(encoding="utf-8") as handle:
        table = parse_salience(handle)
    assert set(table.scores) == set(oracle["trained"]["scores"])
    for key, value in table.scores.items():
        assert abs(value - oracle["trained"]["scores"][key]) <= 1e-9
        assert table.class_word_counts[key] == oracle["trained"]["local"][key]

    second = [json.loads(line) for line in (out / "second_pass.jsonl").open(encoding="utf-8")]
    assert [(o["sense_id"], o["tag"]) for o in second] == oracle["second"]

    selection = json.loads((out / "genus_selection.json").read_text(encoding="utf-8"))
    assert set(selection["selected"]) == oracle["selected"]
    assert selection["rejected"] == oracle["rejected"]

    taxonomy = json.loads((out / "taxonomy.json").read_text(encoding="utf-8"))
    reference = brute.brute_taxonomy(oracle["pairs"])
    impl_parent = {
        s: node["hypernym"]
        for s, node in taxonomy["nodes"].items()
        if node["hypernym"] is not None
    }
    assert impl_parent == reference["parent"]
    assert {s: node["level"] for s, node in taxonomy["nodes"].items()} == reference["levels"]
    assert set(taxonomy["tops"]) == {
        n for n in reference["nodes"] if n not in reference["parent"]
    }

    elapsed = time.perf_counter() - started
    assert elapsed < 10.0, f"end-to-end fixture took {elapsed:.1f}s"
    _report("end-to-end fixture: goldens byte-identical, every stage oracle-checked, "
            f"{elapsed:.1f}s")


def test_criterion_report_shapes(golden_dir):
    """Each summary-table renderer reproduces its frozen layout byte for
    byte when fed the historical row values verbatim."""
    for name, content in table_renders().items():
        golden = (golden_dir / "tables" / name).read_text(encoding="utf-8")
        assert content == golden, f"layout drift in {name}"
    _report("report shapes: all five golden table layouts render byte-identically")

"""Aligned-column text renderings of the pipeline's summary tables.

Each renderer takes plain row values so the same layout serves both live
pipeline output and golden-render tests.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .taxonomy import TaxonomyStats


def render_count_block(rows: Sequence[tuple[str, int]]) -> str:
    """Two columns: left-aligned label, right-aligned thousands-separated count."""
    if not rows:
        return ""
    label_width = max(len(label) for label, _ in rows)
    formatted = [(label, f"{count:,}") for label, count in rows]
    count_width = max(len(count) for _, count in formatted)
    lines = [
        f"{label:<{label_width}}  {count:>{count_width}}"
        for label, count in formatted
    ]
    return "\n".join(lines) + "\n"


def render_class_histogram(
    rows: Sequence[tuple[str, int]], total: int | None = None
) -> str:
    """Per-class counts with percentages and a trailing total line."""
    if total is None:
        total = sum(count for _, count in rows)
    label_width = max([len(label) for label, _ in rows] + [len("Total")])
    formatted = [(label, f"{count:,}") for label, count in rows]
    count_width = max([len(c) for _, c in formatted] + [len(f"{total:,}")])
    lines = []
    for label, count in rows:
        pct = 100.0 * count / total if total else 0.0
        lines.append(
            f"{label:<{label_width}}  {count:>{count_width},}  ({pct:.1f}%)"
        )
    lines.append(f"{'Total':<{label_width}}  {total:>{count_width},}")
    return "\n".join(lines) + "\n"


def render_top_genus_grid(
    items: Sequence[tuple[int, str]], columns: int = 2
) -> str:
    """Count-and-word pairs flowing down column-major in a compact grid."""
    if not items:
        return ""
    per_column = -(-len(items) // columns)
    cells = [f"{count:>4}  {word}" for count, word in items]
    width = max(len(cell) for cell in cells)
    lines = []
    for row in range(per_column):
        chunks = []
        for col in range(columns):
            idx = col * per_column + row
            if idx < len(cells):
                chunks.append(f"{cells[idx]:<{width}}")
        lines.append("    ".join(chunks).rstrip())
    return "\n".join(lines) + "\n"


def render_filter_sweep(
    rows: Sequence[tuple[str, int, float | None, int, float | None]],
    combo_label: str = "filters",
) -> str:
    """Rows of (filter label, #GT, A, #D, A); accuracy columns appear only
    when at least one row carries them."""
    with_accuracy = any(r[2] is not None or r[4] is not None for r in rows)
    header = [combo_label, "#GT"]
    if with_accuracy:
        header.append("A")
    header.append("#D")
    if with_accuracy:
        header.append("A")

    def fmt(row) -> list[str]:
        label, gt, gt_acc, d, d_acc = row
        cells = [label, f"{gt:,}"]
        if with_accuracy:
            cells.append("" if gt_acc is None else f"{round(100 * gt_acc):.0f}%")
        cells.append(f"{d:,}")
        if with_accuracy:
            cells.append("" if d_acc is None else f"{round(100 * d_acc):.0f}%")
        return cells

    table = [header] + [fmt(row) for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    lines = []
    for row in table:
        cells = [f"{row[0]:<{widths[0]}}"]
        cells += [f"{cell:>{widths[i]}}" for i, cell in enumerate(row) if i > 0]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def render_taxonomy_comparison(
    column_labels: Sequence[str], stats_list: Sequence[TaxonomyStats]
) -> str:
    """Side-by-side taxonomy sizes: genus terms, senses, depth, per-level rows."""
    max_level = max((stats.levels for stats in stats_list), default=0)
    rows: list[tuple[str, list[int | None]]] = [
        ("Genus terms", [stats.genus_terms for stats in stats_list]),
        ("Dictionary senses", [stats.senses for stats in stats_list]),
        ("Levels", [stats.levels for stats in stats_list]),
    ]
    for level in range(1, max_level + 1):
        rows.append(
            (
                f"Senses in level {level}",
                [stats.per_level.get(level, 0) for stats in stats_list],
            )
        )
    label_width = max(len(label) for label, _ in rows)
    cells = [
        [("" if value is None else f"{value:,}") for value in values]
        for _, values in rows
    ]
    widths = [
        max([len(col_label)] + [len(row[i]) for row in cells])
        for i, col_label in enumerate(column_labels)
    ]
    lines = [
        f"{'':<{label_width}}  "
        + "  ".join(f"{label:>{widths[i]}}" for i, label in enumerate(column_labels))
    ]
    for (label, _), row in zip(rows, cells):
        lines.append(
            f"{label:<{label_width}}  "
            + "  ".join(f"{cell:>{widths[i]}}" for i, cell in enumerate(row))
        )
    return "\n".join(line.rstrip() for line in lines) + "\n"


def render_coverage_vs(rows: Iterable[tuple[int, float, float]]) -> str:
    """Share of gold-correct genus kept by F1/F2 relative to F3 alone."""
    lines = [f"{'':<6}  {'vs F1':>6}  {'vs F2':>6}"]
    for threshold, f1_share, f2_share in rows:
        lines.append(
            f"F3>{threshold:<3}  {round(100 * f1_share):>5.0f}%  {round(100 * f2_share):>5.0f}%"
        )
    return "\n".join(line.rstrip() for line in lines) + "\n"

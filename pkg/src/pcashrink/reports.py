"""Deterministic CSV and JSON renderings of sweep and pair-analysis
results. All floats pass through the 17-significant-digit formatter, so
two runs with the same inputs produce byte-identical files."""

from __future__ import annotations

from ._version import VERSION
from .experiments import STRONG_CORRELATION, correlate
from .serialize import csv_line, f17, json_text

SWEEP_CSV_HEADER = "m,eigsum,mean_shrinkage,median_shrinkage,max_shrinkage,accuracy"
PAIR_CSV_HEADER = "i,j,m,dist_original,dist_truncated,shrinkage,recon_error"


def sweep_csv(result):
    """CSV text for the rows of a SweepResult."""
    lines = [SWEEP_CSV_HEADER]
    for row in result.rows:
        lines.append(
            csv_line(
                (
                    row.m,
                    row.eigsum,
                    row.mean_shrinkage,
                    row.median_shrinkage,
                    row.max_shrinkage,
                    row.accuracy,
                )
            )
        )
    return "\n".join(lines) + "\n"


def correlation_entry(r):
    """JSON fragment for one coefficient: value plus a strength flag.

    |r| >= STRONG_CORRELATION is labelled "strong", anything weaker
    "weak"; an undefined coefficient (constant series) stays null."""
    if r is None:
        return {"r": None, "strength": None}
    return {"r": r, "strength": "strong" if abs(r) >= STRONG_CORRELATION else "weak"}


def sweep_report(result, summary=None):
    """Dict form of the full sweep report (rows, diagnostics,
    correlations with strength flags)."""
    if summary is None:
        summary = correlate(result)
    accuracy_rs = [summary.r_eigsum_accuracy, summary.r_shrinkage_accuracy]
    return {
        "report": "pca-shrink-sweep",
        "version": VERSION,
        "dataset": result.dataset_name,
        "seed": result.seed,
        "classifier": result.classifier_config,
        "m_range": [result.rows[0].m, result.rows[-1].m],
        "rows": [
            {
                "m": row.m,
                "eigsum": row.eigsum,
                "mean_shrinkage": row.mean_shrinkage,
                "median_shrinkage": row.median_shrinkage,
                "max_shrinkage": row.max_shrinkage,
                "accuracy": row.accuracy,
            }
            for row in result.rows
        ],
        "pair_count": result.pair_count,
        "pairs_sampled": result.pairs_sampled,
        "negative_shrinkage_pairs": result.negative_shrinkage_pairs,
        "bound_violation_pairs": result.bound_violation_pairs,
        "correlations": {
            "eigsum_vs_mean_shrinkage": correlation_entry(summary.r_eigsum_shrinkage),
            "eigsum_vs_accuracy": correlation_entry(summary.r_eigsum_accuracy),
            "mean_shrinkage_vs_accuracy": correlation_entry(summary.r_shrinkage_accuracy),
            "sample_count": summary.sample_count,
        },
        "accuracy_correlations_weak": all(
            r is not None and abs(r) < STRONG_CORRELATION for r in accuracy_rs
        ),
    }


def sweep_report_json(result, summary=None):
    return json_text(sweep_report(result, summary))


def pair_csv_lines(table):
    """Yield CSV lines (header first) for a PairTable, in engine order."""
    yield PAIR_CSV_HEADER
    for k in range(table.i.size):
        yield csv_line(
            (
                int(table.i[k]),
                int(table.j[k]),
                table.m,
                float(table.dist_original[k]),
                float(table.dist_truncated[k]),
                float(table.shrinkage[k]),
                float(table.recon_error[k]),
            )
        )


def write_pair_csv(table, path):
    with open(path, "w", encoding="utf-8") as fh:
        for line in pair_csv_lines(table):
            fh.write(line)
            fh.write("\n")


def analyze_report(stats, n_features, dataset_name, witness_note, isometry_violations=None):
    """Dict form of the single-m analysis report (no per-pair rows)."""
    payload = {
        "report": "pca-shrink-analyze",
        "version": VERSION,
        "dataset": dataset_name,
        "n": n_features,
        "m": stats.m,
        "pair_count": stats.pair_count,
        "pairs_sampled": stats.sampled,
        "mean_shrinkage": stats.mean,
        "median_shrinkage": stats.median,
        "max_shrinkage": stats.max,
        "negative_shrinkage_pairs": stats.negative_count,
        "bound_violation_pairs": stats.bound_violations,
        "witness": witness_note,
    }
    if isometry_violations is not None:
        payload["isometry_violation_pairs"] = isometry_violations
    return payload


def format_correlation_lines(summary):
    """Plain key=value lines for printing a CorrelationSummary."""
    lines = []
    for key, r in (
        ("r_eigsum_shrinkage", summary.r_eigsum_shrinkage),
        ("r_eigsum_accuracy", summary.r_eigsum_accuracy),
        ("r_shrinkage_accuracy", summary.r_shrinkage_accuracy),
    ):
        if r is None:
            lines.append("%s=undefined" % key)
        else:
            flag = "strong" if abs(r) >= STRONG_CORRELATION else "weak"
            lines.append("%s=%s (%s)" % (key, f17(r), flag))
    lines.append("sample_count=%d" % summary.sample_count)
    return lines

"""Command-line front end.

Four subcommands: fit, transform, analyze, sweep. Results go to stdout
and to the files named by --output; log lines go to stderr. Exit status
is 0 on success, 1 for usage problems, 2 for input/parse failures, 3 for
numeric/analysis failures, and 4 when analyze finds pairs that violate
the shrinkage guarantees beyond the tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from ._version import VERSION
from .errors import DatasetIOError, DatasetParseError, ToolkitError
from .experiments import correlate, load_csv, run_sweep
from .matrix import euclidean_distance
from .pca import fit, load_model, model_json, save_model, transform
from .reports import (
    analyze_report,
    format_correlation_lines,
    sweep_csv,
    sweep_report_json,
    write_pair_csv,
)
from .serialize import csv_line, f17, json_text
from .shrinkage import VIOLATION_TOL, collision_witness, shrinkage_table

SEED_ENV_VAR = "PCA_SHRINK_SEED"


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; we reserve 2 for input
    errors, so map usage problems to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def build_parser():
    top = _Parser(prog="pca-shrink", description=__doc__)
    top.add_argument("--version", action="version", version="pca-shrink %s" % VERSION)
    sub = top.add_subparsers(dest="command", required=True, metavar="command")

    def common(p):
        p.add_argument("--seed", type=int, default=None,
                       help="RNG seed (default: $%s or 0)" % SEED_ENV_VAR)
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads for pairwise work (default 1)")
        p.add_argument("--config", default=None,
                       help="JSON file of option defaults; explicit flags win")

    def data(p, label_default):
        p.add_argument("--input", default=None, help="input CSV path")
        p.add_argument("--label-column", default=label_default,
                       help="label column: index, name (with --header), or 'none'")
        p.add_argument("--header", action=argparse.BooleanOptionalAction, default=None,
                       help="treat the first row as column names")
        p.add_argument("--delimiter", default=None, help="field delimiter (default ',')")

    p = sub.add_parser("fit", help="fit a PCA model and save it as JSON")
    common(p)
    data(p, None)
    p.add_argument("--output", default=None, help="where to write the model JSON")

    p = sub.add_parser("transform", help="project data with a saved model")
    common(p)
    data(p, None)
    p.add_argument("--model", default=None, help="model JSON from 'fit'")
    p.add_argument("--m", type=int, default=None, help="retained dimensions (default all)")
    p.add_argument("--output", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)

    p = sub.add_parser("analyze", help="pairwise shrinkage analysis at one m")
    common(p)
    data(p, None)
    p.add_argument("--m", type=int, default=None, help="retained dimensions (required)")
    p.add_argument("--pair-sample", type=int, default=None,
                   help="sampled pair count; 0 forces all pairs")
    p.add_argument("--violation-tol", type=float, default=None,
                   help="slack before a pair counts as violating (default %g)" % VIOLATION_TOL)
    p.add_argument("--output", default=None, help="per-pair CSV or JSON report path")
    p.add_argument("--format", choices=("csv", "json"), default=None)

    p = sub.add_parser("sweep", help="sweep m, write rows CSV and correlation report")
    common(p)
    data(p, None)
    p.add_argument("--m-range", default=None, help="inclusive range A..B (default 1..n)")
    p.add_argument("--k", type=int, default=None, help="nearest neighbours (default 5)")
    p.add_argument("--folds", type=int, default=None, help="cross-validation folds (default 5)")
    p.add_argument("--pair-sample", type=int, default=None)
    p.add_argument("--output", default=None, help="base path; writes <base>.csv and <base>.json")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="stdout style: key=value lines (csv) or the JSON report")
    return top


def _load_config(path):
    if path is None:
        return {}
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DatasetIOError("cannot read config %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise DatasetParseError("config %s is not valid JSON: %s" % (path, exc)) from exc
    if not isinstance(raw, dict):
        raise DatasetParseError("config %s must hold a JSON object" % path)
    return {str(k).replace("-", "_"): v for k, v in raw.items()}


class _Options:
    """Merged view of flags, config-file values, and built-in defaults."""

    def __init__(self, args, config):
        self.args = args
        self.config = config

    def get(self, key, fallback=None):
        value = getattr(self.args, key, None)
        if value is None:
            value = self.config.get(key)
        return fallback if value is None else value

    def require(self, key, flag):
        value = self.get(key)
        if value is None:
            raise ValueError("missing required option %s" % flag)
        return value

    def seed(self):
        value = self.get("seed")
        if value is None:
            env = os.environ.get(SEED_ENV_VAR)
            if env is not None:
                try:
                    return int(env)
                except ValueError:
                    raise ValueError(
                        "$%s=%r is not an integer" % (SEED_ENV_VAR, env)
                    ) from None
            return 0
        return int(value)


def _parse_label_column(value):
    if value is None:
        return -1
    if isinstance(value, int):
        return value
    text = str(value).strip()
    if text.lower() == "none":
        return None
    try:
        return int(text)
    except ValueError:
        return text


def _parse_m_range(value):
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return int(value[0]), int(value[1])
    text = str(value).strip()
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            return int(lo), int(hi)
        except ValueError:
            raise ValueError("bad m range %r, expected A..B" % text) from None
    try:
        m = int(text)
    except ValueError:
        raise ValueError("bad m range %r, expected A..B" % text) from None
    return m, m


def _load_dataset(opts):
    return load_csv(
        opts.require("input", "--input"),
        label_column=_parse_label_column(opts.get("label_column")),
        header=bool(opts.get("header", False)),
        delimiter=str(opts.get("delimiter", ",")),
    )


def _write_text(path, text):
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise DatasetIOError("cannot write %s: %s" % (path, exc)) from exc


def _log(message):
    print("pca-shrink: %s" % message, file=sys.stderr)


def cmd_fit(opts):
    dataset = _load_dataset(opts)
    model = fit(dataset.features)
    out = opts.require("output", "--output")
    save_model(model, out)
    _log("wrote %s" % out)
    print("dataset=%s samples=%d features=%d degenerate=%s"
          % (dataset.name, dataset.n_samples, dataset.n_features,
             "true" if model.degenerate else "false"))
    print("eigenvalues=%s" % ",".join(f17(v) for v in model.eigenvalues))
    return 0


def cmd_transform(opts):
    model = load_model(opts.require("model", "--model"))
    dataset = _load_dataset(opts)
    m = opts.get("m")
    coords = transform(model, dataset.features, None if m is None else int(m))
    fmt = opts.get("format", "csv")
    if fmt == "json":
        text = json_text({
            "report": "pca-shrink-transform",
            "version": VERSION,
            "m": coords.shape[1],
            "rows": coords,
        })
    else:
        text = "\n".join(csv_line(row) for row in coords) + "\n"
    out = opts.get("output")
    if out is None:
        sys.stdout.write(text)
    else:
        _write_text(out, text)
        _log("wrote %s" % out)
    return 0


def cmd_analyze(opts):
    dataset = _load_dataset(opts)
    m = int(opts.require("m", "--m"))
    seed = opts.seed()
    tol = float(opts.get("violation_tol", VIOLATION_TOL))
    model = fit(dataset.features)
    table = shrinkage_table(
        model,
        dataset.features,
        m,
        pair_sample=opts.get("pair_sample"),
        seed=seed,
        threads=int(opts.get("threads", 1)),
    )
    stats = table.summary(violation_tol=tol)

    full_rank = m == model.n_features
    isometry = None
    if full_rank:
        isometry = int(np.count_nonzero(np.abs(table.shrinkage) > tol))
        witness_note = {"exists": False,
                        "reason": "full-rank transform is injective"}
    else:
        base = dataset.features[0]
        witness = collision_witness(model, base, m)
        image_gap = euclidean_distance(
            transform(model, base, m), transform(model, witness, m)
        )
        witness_note = {
            "exists": True,
            "base_index": 0,
            "offset_axis": m,
            "original_distance": euclidean_distance(base, witness),
            "truncated_image_distance": image_gap,
        }

    out = opts.get("output")
    if out is not None:
        if opts.get("format", "csv") == "json":
            _write_text(out, json_text(analyze_report(
                stats, model.n_features, dataset.name, witness_note, isometry)))
        else:
            write_pair_csv(table, out)
        _log("wrote %s" % out)

    print("dataset=%s n=%d m=%d" % (dataset.name, model.n_features, stats.m))
    print("pairs=%d sampled=%s" % (stats.pair_count, "true" if stats.sampled else "false"))
    print("mean_shrinkage=%s median_shrinkage=%s max_shrinkage=%s"
          % (f17(stats.mean), f17(stats.median), f17(stats.max)))
    print("negative_shrinkage_pairs=%d" % stats.negative_count)
    print("bound_violation_pairs=%d" % stats.bound_violations)
    if full_rank:
        print("isometry_violation_pairs=%d" % isometry)
        print("witness: none, the full-rank transform is injective")
    else:
        print("witness: sample 0 moved %s along discarded axis %d; truncated images %s apart"
              % (f17(witness_note["original_distance"]), m,
                 f17(witness_note["truncated_image_distance"])))

    violations = stats.negative_count + stats.bound_violations + (isometry or 0)
    if violations:
        _log("%d pairs violate the shrinkage guarantees (tol=%g)" % (violations, tol))
        return 4
    return 0


def cmd_sweep(opts):
    dataset = _load_dataset(opts)
    m_range = opts.get("m_range")
    result = run_sweep(
        dataset,
        m_range=None if m_range is None else _parse_m_range(m_range),
        k=int(opts.get("k", 5)),
        folds=int(opts.get("folds", 5)),
        seed=opts.seed(),
        threads=int(opts.get("threads", 1)),
        pair_sample=opts.get("pair_sample"),
    )
    summary = correlate(result)

    base = str(opts.require("output", "--output"))
    if base.endswith(".csv") or base.endswith(".json"):
        base = base.rsplit(".", 1)[0]
    csv_path = base + ".csv"
    json_path = base + ".json"
    _write_text(csv_path, sweep_csv(result))
    _write_text(json_path, sweep_report_json(result, summary))
    _log("wrote %s" % csv_path)
    _log("wrote %s" % json_path)

    if opts.get("format", "csv") == "json":
        sys.stdout.write(sweep_report_json(result, summary))
    else:
        print("dataset=%s rows=%d pairs=%d sampled=%s"
              % (result.dataset_name, len(result.rows), result.pair_count,
                 "true" if result.pairs_sampled else "false"))
        for line in format_correlation_lines(summary):
            print(line)
    return 0


_COMMANDS = {
    "fit": cmd_fit,
    "transform": cmd_transform,
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
}


def main(argv=None):
    """Parse arguments and run one subcommand; returns the exit status."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        opts = _Options(args, _load_config(args.config))
        return _COMMANDS[args.command](opts)
    except ToolkitError as err:
        print("pca-shrink: [%s] %s" % (err.code, err), file=sys.stderr)
        return err.exit_status
    except ValueError as err:
        print("pca-shrink: error: %s" % err, file=sys.stderr)
        return 1


def run():
    raise SystemExit(main())

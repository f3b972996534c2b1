"""Retained-dimension sweeps tying eigenvalue sums, pairwise shrinkage
and nearest-neighbour accuracy together, plus the CSV ingestion and
synthetic data they run on."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadFoldsError,
    DatasetIOError,
    DatasetParseError,
    DegenerateLabelsError,
    DimMismatchError,
    InsufficientRowsError,
    NonFiniteError,
    ToolkitError,
    ZeroVarianceError,
)
from .matrix import as_data_matrix
from .pca import discarded_eigenvalue_sum, fit, transform
from .shrinkage import CorrelationSummary, pearson, shrinkage_table

STRONG_CORRELATION = 0.7


@dataclass(frozen=True)
class Dataset:
    """Numeric feature rows with optional string class labels."""

    features: np.ndarray
    labels: tuple | None = None
    name: str = "dataset"

    def __post_init__(self):
        X = as_data_matrix(self.features, "features").copy()
        X.setflags(write=False)
        object.__setattr__(self, "features", X)
        if self.labels is not None:
            labels = tuple(str(v) for v in self.labels)
            if len(labels) != X.shape[0]:
                raise DimMismatchError(
                    "%d labels for %d rows" % (len(labels), X.shape[0])
                )
            object.__setattr__(self, "labels", labels)

    @property
    def n_samples(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]


def load_csv(path, label_column=-1, header=False, delimiter=","):
    """Load a Dataset from delimited text.

    ``label_column`` selects which raw column holds the class label: an
    integer index (negatives count from the end), a column name (needs
    ``header=True``), or None for a purely numeric file with no labels.
    All remaining cells must parse as finite floats; the first offending
    cell is reported with its 1-based line and column.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh, delimiter=delimiter))
    except OSError as exc:
        raise DatasetIOError("cannot read %s: %s" % (path, exc)) from exc

    names = None
    first_line = 1
    if header:
        if not rows:
            raise DatasetParseError("%s: empty file, expected a header row" % path)
        names = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
        first_line = 2
    rows = [(first_line + k, row) for k, row in enumerate(rows) if row]
    if not rows:
        raise DatasetParseError("%s: no data rows" % path)

    width = len(rows[0][1])
    label_index = _resolve_label_column(path, label_column, names, width)

    features = []
    labels = [] if label_index is not None else None
    for line, row in rows:
        if len(row) != width:
            raise DatasetParseError(
                "%s: line %d has %d columns, expected %d" % (path, line, len(row), width)
            )
        feats = []
        for col, cell in enumerate(row):
            if col == label_index:
                labels.append(cell.strip())
                continue
            try:
                value = float(cell)
            except ValueError as exc:
                raise DatasetParseError(
                    "%s: line %d column %d: %r is not a number"
                    % (path, line, col + 1, cell)
                ) from exc
            if not np.isfinite(value):
                raise DatasetParseError(
                    "%s: line %d column %d: non-finite value %r" % (path, line, col + 1, cell)
                )
            feats.append(value)
        features.append(feats)

    if width - (0 if label_index is None else 1) == 0:
        raise DatasetParseError("%s: no feature columns left" % path)
    return Dataset(
        features=np.asarray(features, dtype=float),
        labels=tuple(labels) if labels is not None else None,
        name=path.stem,
    )


def _resolve_label_column(path, label_column, names, width):
    if label_column is None:
        return None
    if isinstance(label_column, str):
        if label_column.lower() == "none":
            return None
        if names is None:
            raise DatasetParseError(
                "%s: label column %r needs header=True" % (path, label_column)
            )
        try:
            return names.index(label_column)
        except ValueError:
            raise DatasetParseError(
                "%s: no column named %r in header %r" % (path, label_column, names)
            ) from None
    index = int(label_column)
    if index < 0:
        index += width
    if not 0 <= index < width:
        raise DatasetParseError(
            "%s: label column %d out of range for %d columns" % (path, label_column, width)
        )
    return index


def knn_accuracy(dataset, k=5, folds=5, seed=0):
    """Stratified k-fold cross-validation accuracy of a Euclidean k-NN
    majority vote, averaged over folds (unweighted).

    Everything is deterministic for a fixed seed: folds come from a
    seeded per-class shuffle dealt round-robin, neighbours are ranked by
    (distance, training index), and a tied vote goes to the class of the
    best-ranked neighbour among the tied classes.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if dataset.labels is None:
        raise DegenerateLabelsError("dataset has no labels")
    labels = np.asarray(dataset.labels)
    if len(set(dataset.labels)) < 2:
        raise DegenerateLabelsError("need at least two distinct classes")
    n_samples = dataset.n_samples
    if folds < 2 or folds > n_samples:
        raise BadFoldsError(
            "folds must be in [2, %d], got %d" % (n_samples, folds)
        )

    fold_of = _stratified_folds(labels, folds, seed)
    X = dataset.features
    accuracies = []
    for f in range(folds):
        test = fold_of == f
        train = ~test
        predictions = _knn_predict(X[train], labels[train], X[test], k)
        accuracies.append(float(np.mean(predictions == labels[test])))
    return float(np.mean(accuracies))


def _stratified_folds(labels, folds, seed):
    """Fold id per sample; each class is shuffled then dealt round-robin
    with a cursor that runs on across classes, so every fold is non-empty
    whenever folds <= n_samples."""
    rng = np.random.default_rng(int(seed))
    fold_of = np.empty(labels.shape[0], dtype=np.int64)
    cursor = 0
    for cls in sorted(set(labels.tolist())):
        idx = np.flatnonzero(labels == cls)
        rng.shuffle(idx)
        for offset, sample in enumerate(idx):
            fold_of[sample] = (cursor + offset) % folds
        cursor += idx.size
    return fold_of


def _knn_predict(X_train, y_train, X_test, k):
    k = min(k, X_train.shape[0])
    predictions = []
    for x in X_test:
        diff = X_train - x
        dist = np.sqrt(np.einsum("ij,ij->i", diff, diff))
        nearest = np.argsort(dist, kind="stable")[:k]
        votes = {}
        best_rank = {}
        for rank, t in enumerate(nearest):
            label = y_train[t]
            votes[label] = votes.get(label, 0) + 1
            best_rank.setdefault(label, rank)
        predictions.append(
            max(votes, key=lambda lbl: (votes[lbl], -best_rank[lbl]))
        )
    return np.asarray(predictions)


@dataclass(frozen=True)
class SweepRow:
    """One retained-dimension setting of a sweep."""

    m: int
    eigsum: float
    mean_shrinkage: float
    median_shrinkage: float
    max_shrinkage: float
    accuracy: float


@dataclass(frozen=True)
class SweepResult:
    """All rows of a sweep plus the settings that produced them."""

    dataset_name: str
    seed: int
    classifier_config: str
    rows: tuple
    pair_count: int
    pairs_sampled: bool
    negative_shrinkage_pairs: int
    bound_violation_pairs: int


def run_sweep(dataset, m_range=None, k=5, folds=5, seed=0, threads=1, pair_sample=None):
    """Sweep the retained dimension m over ``m_range`` (inclusive; the
    default covers 1..n) and record, per m: the discarded-eigenvalue sum,
    pairwise shrinkage statistics, and k-NN accuracy measured on the
    m-dimensional transformed features. One model is fitted on the full
    data and reused for every m. Deterministic for fixed inputs and seed.
    """
    X = dataset.features
    n = X.shape[1]
    lo, hi = (1, n) if m_range is None else (int(m_range[0]), int(m_range[1]))
    if not 1 <= lo <= hi <= n:
        raise DimMismatchError(
            "m range [%d, %d] outside [1, %d]" % (lo, hi, n)
        )

    model = fit(X)
    full = transform(model, X)
    rows = []
    negative = 0
    violations = 0
    pair_count = 0
    sampled = False
    for m in range(lo, hi + 1):
        try:
            table = shrinkage_table(
                model, X, m, pair_sample=pair_sample, seed=seed, threads=threads
            )
            stats = table.summary()
            truncated = Dataset(
                features=full[:, :m], labels=dataset.labels, name=dataset.name
            )
            accuracy = knn_accuracy(truncated, k=k, folds=folds, seed=seed)
        except ToolkitError as exc:
            raise exc.__class__("m=%d: %s" % (m, exc)) from exc
        rows.append(
            SweepRow(
                m=m,
                eigsum=discarded_eigenvalue_sum(model, m),
                mean_shrinkage=stats.mean,
                median_shrinkage=stats.median,
                max_shrinkage=stats.max,
                accuracy=accuracy,
            )
        )
        negative += stats.negative_count
        violations += stats.bound_violations
        pair_count = stats.pair_count
        sampled = stats.sampled
    return SweepResult(
        dataset_name=dataset.name,
        seed=int(seed),
        classifier_config="knn k=%d folds=%d" % (k, folds),
        rows=tuple(rows),
        pair_count=pair_count,
        pairs_sampled=sampled,
        negative_shrinkage_pairs=negative,
        bound_violation_pairs=violations,
    )


def correlate(result):
    """CorrelationSummary across the rows of a SweepResult.

    A coefficient comes out None when its series is constant (for
    example accuracy that never moves); fewer than two rows cannot be
    correlated at all.
    """
    rows = result.rows
    if len(rows) < 2:
        raise InsufficientRowsError(
            "need at least two sweep rows, got %d" % len(rows)
        )
    eigsum = [row.eigsum for row in rows]
    shrink = [row.mean_shrinkage for row in rows]
    accuracy = [row.accuracy for row in rows]

    def maybe(xs, ys):
        try:
            return pearson(xs, ys)
        except ZeroVarianceError:
            return None

    return CorrelationSummary(
        r_eigsum_shrinkage=maybe(eigsum, shrink),
        r_eigsum_accuracy=maybe(eigsum, accuracy),
        r_shrinkage_accuracy=maybe(shrink, accuracy),
        sample_count=len(rows),
    )


def anisotropic_gaussian(n_samples=200, variances=(8.0, 4.0, 2.0, 1.0, 0.5, 0.25, 0.1, 0.05),
                         seed=0, name="anisotropic-gaussian"):
    """Two-class Gaussian sample with a fixed per-axis variance profile.

    Latent axes carry the requested variances and are then mixed by a
    seeded random rotation, so the population covariance eigenvalues are
    exactly the profile. Labels are the sign of the leading latent
    coordinate, which makes them learnable from the dominant direction.
    """
    variances = np.asarray(variances, dtype=float)
    if variances.ndim != 1 or variances.size == 0 or np.any(variances < 0):
        raise ValueError("variances must be a non-empty vector of non-negative numbers")
    if np.any(~np.isfinite(variances)):
        raise NonFiniteError("variances contain NaN or infinite entries")
    n = variances.size
    rng = np.random.default_rng(int(seed))
    latent = rng.standard_normal((int(n_samples), n)) * np.sqrt(variances)
    basis, upper = np.linalg.qr(rng.standard_normal((n, n)))
    basis = basis * np.where(np.diag(upper) >= 0, 1.0, -1.0)
    labels = tuple("pos" if z > 0 else "neg" for z in latent[:, 0])
    return Dataset(features=latent @ basis.T, labels=labels, name=name)

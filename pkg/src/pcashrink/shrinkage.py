"""Distance distortion of truncated PCA transforms.

Three facts about the truncated transform are made measurable here: it
collapses distinct points (collision_witness constructs an explicit
pair), it never stretches a pairwise distance, and the amount a pair
shrinks never exceeds the summed reconstruction errors of its two
endpoints. The pair engine below evaluates these quantities for every
sample pair, or for a seeded subsample when the pair count explodes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatchError,
    FullRankInjectiveError,
    InsufficientPairsError,
    ZeroVarianceError,
)
from .matrix import as_data_matrix, as_vector, euclidean_distance
from .pca import check_m, reconstruct, transform

# all pairs are visited up to this many samples; beyond it a seeded
# uniform subsample of PAIR_SAMPLE_DEFAULT pairs is used instead
PAIR_SAMPLE_THRESHOLD = 2000
PAIR_SAMPLE_DEFAULT = 2_000_000

VIOLATION_TOL = 1e-9

_CHUNK = 131072


@dataclass(frozen=True)
class ShrinkageRecord:
    """Distance bookkeeping for one sample pair at truncation level m.

    ``shrinkage`` is dist_original - dist_truncated (non-negative up to
    roundoff); ``recon_error`` is the sum of the two endpoints' own
    reconstruction distances, which bounds the shrinkage from above.
    """

    i: int
    j: int
    m: int
    dist_original: float
    dist_truncated: float
    shrinkage: float
    recon_error: float


@dataclass(frozen=True)
class ShrinkageSummary:
    """Aggregate shrinkage statistics over the visited pairs."""

    m: int
    pair_count: int
    sampled: bool
    mean: float
    median: float
    max: float
    negative_count: int
    bound_violations: int


@dataclass(frozen=True)
class PairTable:
    """Columnar per-pair results from the pair engine."""

    m: int
    sampled: bool
    i: np.ndarray
    j: np.ndarray
    dist_original: np.ndarray
    dist_truncated: np.ndarray
    shrinkage: np.ndarray
    recon_error: np.ndarray

    def summary(self, violation_tol=VIOLATION_TOL):
        d = self.shrinkage
        return ShrinkageSummary(
            m=self.m,
            pair_count=int(d.size),
            sampled=self.sampled,
            mean=float(np.mean(d)),
            median=float(np.median(d)),
            max=float(np.max(d)),
            negative_count=int(np.count_nonzero(d < -violation_tol)),
            bound_violations=int(np.count_nonzero(d > self.recon_error + violation_tol)),
        )

    def records(self):
        return [
            ShrinkageRecord(
                i=int(self.i[k]),
                j=int(self.j[k]),
                m=self.m,
                dist_original=float(self.dist_original[k]),
                dist_truncated=float(self.dist_truncated[k]),
                shrinkage=float(self.shrinkage[k]),
                recon_error=float(self.recon_error[k]),
            )
            for k in range(self.i.size)
        ]


def pair_shrinkage(model, x_i, x_j, m=None, i=0, j=1):
    """ShrinkageRecord for a single pair of points."""
    m = check_m(model, m)
    a = as_vector(x_i, "x_i")
    b = as_vector(x_j, "x_j")
    dist_original = euclidean_distance(a, b)
    dist_truncated = euclidean_distance(transform(model, a, m), transform(model, b, m))
    return ShrinkageRecord(
        i=i,
        j=j,
        m=m,
        dist_original=dist_original,
        dist_truncated=dist_truncated,
        shrinkage=dist_original - dist_truncated,
        recon_error=pair_reconstruction_error(model, a, b, m),
    )


def pair_reconstruction_error(model, x_i, x_j, m=None):
    """Sum of the two points' own reconstruction distances at level m."""
    m = check_m(model, m)
    total = 0.0
    for v in (as_vector(x_i, "x_i"), as_vector(x_j, "x_j")):
        total += euclidean_distance(v, reconstruct(model, transform(model, v, m)))
    return total


def collision_witness(model, x, m, scale=1.0):
    """A point distinct from ``x`` with the same truncated image.

    The witness moves ``x`` along the first discarded eigenvector, which
    the truncated transform annihilates. At full rank no such direction
    exists and FullRankInjectiveError is raised.
    """
    m = check_m(model, m)
    if m == model.n_features:
        raise FullRankInjectiveError(
            "the full-rank transform is injective; no collision exists"
        )
    if scale == 0.0:
        raise ValueError("scale must be non-zero")
    vec = as_vector(x, "x")
    if vec.shape[0] != model.n_features:
        raise DimMismatchError(
            "expected %d features, got %d" % (model.n_features, vec.shape[0])
        )
    return vec + scale * model.components[:, m]


def _pair_indices(n_samples, pair_sample, seed):
    """Index arrays (i, j) with i < j: all pairs or a seeded subsample.

    Sampling draws pairs uniformly with replacement and is deterministic
    for a given (seed, n_samples); self-pairs are redrawn.
    """
    total = n_samples * (n_samples - 1) // 2
    if pair_sample is None or pair_sample >= total:
        i_idx, j_idx = np.triu_indices(n_samples, k=1)
        return i_idx.astype(np.int64), j_idx.astype(np.int64), False
    rng = np.random.default_rng([int(seed), n_samples, 0x70A1])
    a = rng.integers(0, n_samples, size=pair_sample, dtype=np.int64)
    b = rng.integers(0, n_samples, size=pair_sample, dtype=np.int64)
    while True:
        clash = a == b
        count = int(np.count_nonzero(clash))
        if count == 0:
            break
        b[clash] = rng.integers(0, n_samples, size=count, dtype=np.int64)
    return np.minimum(a, b), np.maximum(a, b), True


def _fill_span(X, Yt, i_idx, j_idx, d_orig, d_trunc, lo, hi):
    ii = i_idx[lo:hi]
    jj = j_idx[lo:hi]
    diff = X[ii] - X[jj]
    d_orig[lo:hi] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    diff = Yt[ii] - Yt[jj]
    d_trunc[lo:hi] = np.sqrt(np.einsum("ij,ij->i", diff, diff))


def shrinkage_table(model, data, m=None, *, pair_sample=None, seed=0, threads=1):
    """Evaluate per-pair distances before and after truncation.

    ``pair_sample`` caps how many pairs are visited: None applies the
    automatic rule (all pairs up to PAIR_SAMPLE_THRESHOLD samples, then a
    PAIR_SAMPLE_DEFAULT subsample), 0 forces all pairs, and a positive
    value requests that many sampled pairs. Threading splits the pair
    list into fixed chunks that write disjoint slices of preallocated
    arrays, so the result is identical for any thread count.
    """
    X = as_data_matrix(data)
    if X.shape[1] != model.n_features:
        raise DimMismatchError(
            "expected %d features, got %d" % (model.n_features, X.shape[1])
        )
    n_samples = X.shape[0]
    if n_samples < 2:
        raise InsufficientPairsError("need at least two samples to form a pair")
    m = check_m(model, m)

    if pair_sample is None:
        pair_sample = None if n_samples <= PAIR_SAMPLE_THRESHOLD else PAIR_SAMPLE_DEFAULT
    elif pair_sample <= 0:
        pair_sample = None
    i_idx, j_idx, sampled = _pair_indices(n_samples, pair_sample, seed)

    Yt = transform(model, X, m)
    pair_count = i_idx.size
    d_orig = np.empty(pair_count)
    d_trunc = np.empty(pair_count)
    spans = [(lo, min(lo + _CHUNK, pair_count)) for lo in range(0, pair_count, _CHUNK)]
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            futures = [
                pool.submit(_fill_span, X, Yt, i_idx, j_idx, d_orig, d_trunc, lo, hi)
                for lo, hi in spans
            ]
            for fut in futures:
                fut.result()
    else:
        for lo, hi in spans:
            _fill_span(X, Yt, i_idx, j_idx, d_orig, d_trunc, lo, hi)

    resid = X - reconstruct(model, Yt)
    point_error = np.sqrt(np.einsum("ij,ij->i", resid, resid))
    return PairTable(
        m=m,
        sampled=sampled,
        i=i_idx,
        j=j_idx,
        dist_original=d_orig,
        dist_truncated=d_trunc,
        shrinkage=d_orig - d_trunc,
        recon_error=point_error[i_idx] + point_error[j_idx],
    )


def shrinkage_summary(model, data, m=None, *, pair_sample=None, seed=0, threads=1,
                      violation_tol=VIOLATION_TOL):
    """ShrinkageSummary over (possibly sampled) pairs of ``data``."""
    table = shrinkage_table(
        model, data, m, pair_sample=pair_sample, seed=seed, threads=threads
    )
    return table.summary(violation_tol=violation_tol)


def mean_shrinkage(model, data, m=None, *, pair_sample=None, seed=0, threads=1):
    """Mean of dist_original - dist_truncated over the visited pairs."""
    return shrinkage_summary(
        model, data, m, pair_sample=pair_sample, seed=seed, threads=threads
    ).mean


def pearson(xs, ys):
    """Pearson correlation coefficient of two equal-length series.

    Raises ZeroVarianceError when either series is constant (including
    the single-observation case), DimMismatchError on length mismatch.
    The returned value is clipped to [-1, 1] to absorb roundoff.
    """
    x = as_vector(xs, "xs")
    y = as_vector(ys, "ys")
    if x.shape[0] != y.shape[0]:
        raise DimMismatchError(
            "length mismatch: %d vs %d" % (x.shape[0], y.shape[0])
        )
    dx = x - x.mean()
    dy = y - y.mean()
    sx = float(np.sqrt(np.dot(dx, dx)))
    sy = float(np.sqrt(np.dot(dy, dy)))
    if sx == 0.0 or sy == 0.0:
        raise ZeroVarianceError("correlation is undefined for a constant series")
    r = float(np.dot(dx, dy)) / (sx * sy)
    return min(1.0, max(-1.0, r))


@dataclass(frozen=True)
class CorrelationSummary:
    """Pearson coefficients among sweep series; None marks a coefficient
    that is undefined because one of its series is constant."""

    r_eigsum_shrinkage: float | None
    r_eigsum_accuracy: float | None
    r_shrinkage_accuracy: float | None
    sample_count: int

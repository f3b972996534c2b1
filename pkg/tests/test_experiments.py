"""CSV ingestion, the k-NN cross-validation classifier, retained
dimension sweeps, and the correlation summary."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from pcashrink import (
    BadFoldsError,
    DatasetIOError,
    DatasetParseError,
    Dataset,
    DegenerateLabelsError,
    DimMismatchError,
    InsufficientRowsError,
    STRONG_CORRELATION,
    anisotropic_gaussian,
    correlate,
    covariance,
    jacobi_eigendecomposition,
    knn_accuracy,
    load_csv,
    run_sweep,
)
from pcashrink.experiments import SweepResult, SweepRow


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


class TestLoadCsv:
    def test_default_last_column_is_label(self, tmp_path):
        path = write(tmp_path / "iris-ish.csv", "1.0,2.0,a\n3.0,4.0,b\n5.0,6.0,a\n")
        ds = load_csv(path)
        assert ds.features.shape == (3, 2)
        assert ds.labels == ("a", "b", "a")
        assert ds.name == "iris-ish"

    def test_header_and_named_label(self, tmp_path):
        path = write(tmp_path / "t.csv", "x,species,y\n1,a,2\n3,b,4\n")
        ds = load_csv(path, label_column="species", header=True)
        assert_allclose(ds.features, [[1.0, 2.0], [3.0, 4.0]])
        assert ds.labels == ("a", "b")

    def test_positive_label_index(self, tmp_path):
        path = write(tmp_path / "t.csv", "a,1,2\nb,3,4\n")
        ds = load_csv(path, label_column=0)
        assert_allclose(ds.features, [[1.0, 2.0], [3.0, 4.0]])
        assert ds.labels == ("a", "b")

    def test_no_label_column(self, tmp_path):
        path = write(tmp_path / "t.csv", "1,2\n3,4\n")
        ds = load_csv(path, label_column=None)
        assert ds.labels is None
        assert ds.features.shape == (2, 2)

    def test_blank_lines_skipped(self, tmp_path):
        path = write(tmp_path / "t.csv", "1,2,a\n\n3,4,b\n\n")
        assert load_csv(path).features.shape == (2, 2)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetIOError):
            load_csv(tmp_path / "absent.csv")

    def test_non_numeric_cell_reports_location(self, tmp_path):
        path = write(tmp_path / "t.csv", "1,2,a\n3,oops,b\n")
        with pytest.raises(DatasetParseError) as info:
            load_csv(path)
        assert "line 2" in str(info.value)
        assert "column 2" in str(info.value)

    def test_non_finite_cell_rejected(self, tmp_path):
        path = write(tmp_path / "t.csv", "1,2,a\n3,inf,b\n")
        with pytest.raises(DatasetParseError):
            load_csv(path)

    def test_ragged_rows_rejected(self, tmp_path):
        path = write(tmp_path / "t.csv", "1,2,a\n3,b\n")
        with pytest.raises(DatasetParseError) as info:
            load_csv(path)
        assert "line 2" in str(info.value)

    def test_empty_file_rejected(self, tmp_path):
        with pytest.raises(DatasetParseError):
            load_csv(write(tmp_path / "t.csv", ""))

    def test_named_label_needs_header(self, tmp_path):
        path = write(tmp_path / "t.csv", "1,2,a\n")
        with pytest.raises(DatasetParseError):
            load_csv(path, label_column="species")

    def test_label_index_out_of_range(self, tmp_path):
        path = write(tmp_path / "t.csv", "1,2,a\n")
        with pytest.raises(DatasetParseError):
            load_csv(path, label_column=7)

    def test_only_label_column(self, tmp_path):
        with pytest.raises(DatasetParseError):
            load_csv(write(tmp_path / "t.csv", "a\nb\n"))

    def test_alternate_delimiter(self, tmp_path):
        path = write(tmp_path / "t.csv", "1;2;a\n3;4;b\n")
        ds = load_csv(path, delimiter=";")
        assert_allclose(ds.features, [[1.0, 2.0], [3.0, 4.0]])


class TestDataset:
    def test_label_count_must_match(self):
        with pytest.raises(DimMismatchError):
            Dataset(features=np.ones((3, 2)), labels=("a", "b"))

    def test_features_read_only(self):
        ds = Dataset(features=np.ones((2, 2)))
        with pytest.raises(ValueError):
            ds.features[0, 0] = 9.0


def two_blob_dataset(n_per_class=20, gap=10.0, seed=0):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n_per_class, 2))
    b = rng.standard_normal((n_per_class, 2)) + gap
    features = np.vstack([a, b])
    labels = ("a",) * n_per_class + ("b",) * n_per_class
    return Dataset(features=features, labels=labels, name="blobs")


class TestKnnAccuracy:
    def test_separated_blobs_are_perfect(self):
        assert knn_accuracy(two_blob_dataset(), k=3, folds=4, seed=1) == 1.0

    def test_deterministic_for_fixed_seed(self):
        ds = two_blob_dataset(gap=1.0, seed=5)
        first = knn_accuracy(ds, k=5, folds=5, seed=7)
        second = knn_accuracy(ds, k=5, folds=5, seed=7)
        assert first == second

    def test_seed_changes_folds(self):
        ds = two_blob_dataset(gap=0.5, seed=5)
        results = {knn_accuracy(ds, k=3, folds=5, seed=s) for s in range(8)}
        assert len(results) > 1, "fold assignment ignored the seed"

    def test_leave_one_out_allowed(self):
        ds = two_blob_dataset(n_per_class=4)
        assert knn_accuracy(ds, k=1, folds=8, seed=0) == 1.0

    def test_bad_folds(self):
        ds = two_blob_dataset(n_per_class=3)
        with pytest.raises(BadFoldsError):
            knn_accuracy(ds, folds=1)
        with pytest.raises(BadFoldsError):
            knn_accuracy(ds, folds=7)

    def test_degenerate_labels(self):
        ds = Dataset(features=np.ones((4, 2)), labels=("a",) * 4)
        with pytest.raises(DegenerateLabelsError):
            knn_accuracy(ds, folds=2)
        with pytest.raises(DegenerateLabelsError):
            knn_accuracy(Dataset(features=np.ones((4, 2))), folds=2)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            knn_accuracy(two_blob_dataset(), k=0)


class TestRunSweep:
    def test_rows_cover_range_in_order(self):
        ds = anisotropic_gaussian(n_samples=60, variances=(4.0, 1.0, 0.25), seed=2)
        result = run_sweep(ds, seed=2, folds=3)
        assert [row.m for row in result.rows] == [1, 2, 3]
        assert result.dataset_name == ds.name
        assert result.classifier_config == "knn k=5 folds=3"
        eigsums = [row.eigsum for row in result.rows]
        assert all(a >= b for a, b in zip(eigsums, eigsums[1:]))
        assert all(0.0 <= row.accuracy <= 1.0 for row in result.rows)
        assert result.negative_shrinkage_pairs == 0
        assert result.bound_violation_pairs == 0

    def test_explicit_sub_range(self):
        ds = anisotropic_gaussian(n_samples=40, variances=(4.0, 1.0, 0.25, 0.1), seed=3)
        result = run_sweep(ds, m_range=(2, 3), seed=3, folds=4)
        assert [row.m for row in result.rows] == [2, 3]

    def test_deterministic(self):
        ds = anisotropic_gaussian(n_samples=50, variances=(2.0, 0.5), seed=6)
        a = run_sweep(ds, seed=6, folds=5)
        b = run_sweep(ds, seed=6, folds=5)
        assert a == b

    def test_range_validation(self):
        ds = anisotropic_gaussian(n_samples=30, variances=(2.0, 0.5), seed=1)
        with pytest.raises(DimMismatchError):
            run_sweep(ds, m_range=(0, 2))
        with pytest.raises(DimMismatchError):
            run_sweep(ds, m_range=(1, 3))
        with pytest.raises(DimMismatchError):
            run_sweep(ds, m_range=(2, 1))

    def test_constituent_error_names_the_m(self):
        ds = anisotropic_gaussian(n_samples=20, variances=(2.0, 0.5), seed=1)
        with pytest.raises(BadFoldsError) as info:
            run_sweep(ds, folds=25, seed=1)
        assert str(info.value).startswith("m=1:")


class TestCorrelate:
    @staticmethod
    def result_from_columns(eigsum, shrink, accuracy):
        rows = tuple(
            SweepRow(
                m=k + 1,
                eigsum=float(e),
                mean_shrinkage=float(s),
                median_shrinkage=float(s),
                max_shrinkage=float(s),
                accuracy=float(a),
            )
            for k, (e, s, a) in enumerate(zip(eigsum, shrink, accuracy))
        )
        return SweepResult(
            dataset_name="synthetic",
            seed=0,
            classifier_config="knn k=5 folds=5",
            rows=rows,
            pair_count=10,
            pairs_sampled=False,
            negative_shrinkage_pairs=0,
            bound_violation_pairs=0,
        )

    def test_known_coefficients(self):
        result = self.result_from_columns([3.0, 2.0, 1.0], [3.0, 2.0, 1.0], [1.0, 2.0, 2.0])
        summary = correlate(result)
        assert_allclose(summary.r_eigsum_shrinkage, 1.0, atol=1e-12)
        assert_allclose(summary.r_eigsum_accuracy, -0.86602540378443849, atol=1e-12)
        assert summary.sample_count == 3

    def test_constant_series_yields_none(self):
        result = self.result_from_columns([3.0, 2.0, 1.0], [3.0, 2.0, 1.0], [0.9, 0.9, 0.9])
        summary = correlate(result)
        assert_allclose(summary.r_eigsum_shrinkage, 1.0, atol=1e-12)
        assert summary.r_eigsum_accuracy is None
        assert summary.r_shrinkage_accuracy is None

    def test_too_few_rows(self):
        result = self.result_from_columns([1.0], [1.0], [1.0])
        with pytest.raises(InsufficientRowsError):
            correlate(result)


class TestAnisotropicGaussian:
    def test_shape_and_labels(self):
        ds = anisotropic_gaussian(n_samples=100, seed=0)
        assert ds.features.shape == (100, 8)
        assert set(ds.labels) == {"pos", "neg"}

    def test_covariance_matches_variance_profile(self):
        """With plenty of samples the sample covariance eigenvalues land
        on the requested profile (mixing rotation notwithstanding)."""
        profile = (8.0, 4.0, 2.0, 1.0, 0.5, 0.25, 0.1, 0.05)
        ds = anisotropic_gaussian(n_samples=20000, variances=profile, seed=12)
        values = jacobi_eigendecomposition(covariance(ds.features)).values
        assert_allclose(values, profile, rtol=0.15)

    def test_deterministic(self):
        a = anisotropic_gaussian(n_samples=30, seed=4)
        b = anisotropic_gaussian(n_samples=30, seed=4)
        c = anisotropic_gaussian(n_samples=30, seed=5)
        assert np.array_equal(a.features, b.features)
        assert a.labels == b.labels
        assert not np.array_equal(a.features, c.features)

    def test_bad_variances(self):
        with pytest.raises(ValueError):
            anisotropic_gaussian(variances=())
        with pytest.raises(ValueError):
            anisotropic_gaussian(variances=(1.0, -2.0))


def test_strong_correlation_threshold():
    assert STRONG_CORRELATION == 0.7

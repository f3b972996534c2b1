import numpy as np
import pytest

from pcashrink import fit


def random_dataset(rng, max_features=10, max_samples=50):
    """One random anisotropic dataset: 2..max_features dims, 3..max_samples rows."""
    n = int(rng.integers(2, max_features + 1))
    n_samples = int(rng.integers(3, max_samples + 1))
    scales = rng.uniform(0.1, 4.0, size=n)
    shift = rng.uniform(-5.0, 5.0, size=n)
    return rng.standard_normal((n_samples, n)) * scales + shift


@pytest.fixture(scope="session")
def small_corpus():
    """20 fitted datasets for property-style unit tests."""
    rng = np.random.default_rng(1729)
    corpus = []
    for _ in range(20):
        X = random_dataset(rng)
        corpus.append((X, fit(X)))
    return corpus

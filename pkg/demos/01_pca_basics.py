"""Fit a PCA model from scratch, look at what it learned, and round-trip
it through the JSON persistence format.

Run:  python3 demos/01_pca_basics.py
"""

import tempfile
from pathlib import Path

import numpy as np

from pcashrink import fit, load_model, reconstruct, save_model, transform

rng = np.random.default_rng(0)

# 300 correlated 3-D points: mostly spread along (1, 1, 0.5)
direction = np.array([1.0, 1.0, 0.5])
X = np.outer(rng.standard_normal(300) * 3.0, direction)
X += rng.standard_normal((300, 3)) * 0.3
X += [10.0, -5.0, 2.0]

model = fit(X)
print("mean:        ", np.round(model.mean, 3))
print("eigenvalues: ", np.round(model.eigenvalues, 4))
print("first axis:  ", np.round(model.components[:, 0], 4))
print()

# the transform centers the data and rotates it onto the eigenbasis;
# keeping one coordinate is the best 1-D summary of each point
x = X[0]
print("point:             ", np.round(x, 4))
print("full coordinates:  ", np.round(transform(model, x), 4))
print("1-D coordinate:    ", np.round(transform(model, x, m=1), 4))
print("reconstructed from 1-D:", np.round(reconstruct(model, transform(model, x, m=1)), 4))
print("reconstruction error:  %.4f" % np.linalg.norm(x - reconstruct(model, transform(model, x, m=1))))
print()

# models persist as deterministic JSON and load back bit-identically
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "model.json"
    save_model(model, path)
    loaded = load_model(path)
    print("saved %d bytes, round trip exact: %s"
          % (path.stat().st_size, np.array_equal(loaded.components, model.components)))

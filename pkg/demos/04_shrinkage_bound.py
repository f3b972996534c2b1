"""How much can a pair's distance shrink? Never more than the two
points' own reconstruction errors, summed.

Each point sits some distance from its truncated reconstruction; the
triangle inequality caps the pair's distance loss by the sum of those
two gaps. The bound is loose for most pairs but tight when both points
stick far out of the retained subspace in opposite directions.

Run:  python3 demos/04_shrinkage_bound.py
"""

import numpy as np

from pcashrink import fit, pair_shrinkage, shrinkage_table

rng = np.random.default_rng(3)
X = rng.standard_normal((200, 6)) * [4.0, 2.0, 1.0, 0.5, 0.25, 0.1]
model = fit(X)

table = shrinkage_table(model, X, m=2)
stats = table.summary()
print("pairs checked:            %d" % stats.pair_count)
print("bound violations:         %d" % stats.bound_violations)
ratio = table.shrinkage / table.recon_error
print("shrinkage / bound ratio:  median %.3f, max %.3f"
      % (np.median(ratio), np.max(ratio)))
print()

# the tightest pair, spelled out
k = int(np.argmax(ratio))
rec = pair_shrinkage(model, X[table.i[k]], X[table.j[k]], m=2,
                     i=int(table.i[k]), j=int(table.j[k]))
print("tightest pair (%d, %d):" % (rec.i, rec.j))
print("  distance before truncation  %.4f" % rec.dist_original)
print("  distance after              %.4f" % rec.dist_truncated)
print("  shrinkage                   %.4f" % rec.shrinkage)
print("  reconstruction-error bound  %.4f" % rec.recon_error)

"""
Data-driven choice of alpha
===========================

The tuning parameter is picked by minimizing a Cramer-von Mises
distance between leave-one-out fitted CDFs and the plotting positions
(i - 0.5)/n. Clean data should ask for little robustness; planting a
few outliers should push the chosen alpha up.
"""

import numpy as np

from dpdfit import (
    EXPONENTIAL,
    ContaminationScheme,
    ParamVector,
    quantile,
    sample_family,
    select_alpha,
    simulate_contaminated,
)

theta0 = ParamVector(EXPONENTIAL, (1.0,))
n = 500
# 10% of observations moved to 20x the 99th percentile: far enough out
# that the non-robust fit visibly chases them.
point = 20.0 * float(quantile(theta0, 0.99))

clean = sample_family(EXPONENTIAL, theta0, n, seed=5)
dirty = simulate_contaminated(
    EXPONENTIAL, theta0, ContaminationScheme(0.1, point, seed=5), n
)

for label, sample in (("clean", clean), ("contaminated", dirty)):
    res = select_alpha(EXPONENTIAL, sample, refine=False)
    grid = sorted(res.cvmd_curve)
    print(f"\n{label} exponential sample, n={n}:")
    print("  alpha: " + " ".join(f"{a:6.2f}" for a in grid[::4]))
    print("  cvmd : " + " ".join(f"{res.cvmd_curve[a]:6.4f}" for a in grid[::4]))
    print(f"  chosen alpha* = {res.alpha_star:.3f}, cvmd* = {res.cvmd_star:.5f}, "
          f"rate estimate = {res.fit_star.theta_hat.values[0]:.4f}")

print("\nThe contaminated sample demands a larger alpha*, and its rate")
print("estimate stays near 1 where the MLE would collapse toward the")
print("sample mean of the contaminated data.")

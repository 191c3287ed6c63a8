"""Self-duality of Hermitian surfaces: the three curvature-component
residuals vanish exactly when the anti-self-dual Weyl operator W_- does.

Every catalog chart is self-dual (this is why they appear in the
classification); a product of factor curvatures with unequal magnitudes is
the simplest metric that is not.
"""

import numpy as np

import gauduchon as gd

charts = [gd.euclidean_chart(2), gd.hopf_chart(2), gd.fs_bergman_chart(),
          gd.fubini_study_chart(2), gd.complex_hyperbolic_chart(2),
          gd.admissible_chart(gd.hopf_spec(2, 0.5, A=[[0.2, 0], [0, 0.1]]))]

# disk of curvature -1 times sphere of curvature +1/2: not self-dual
g11 = gd.const(2.0) / (gd.const(1.0) - gd.z(0) * gd.zbar(0)) ** 2
g22 = gd.const(4.0) / (gd.const(1.0) + gd.z(1) * gd.zbar(1)) ** 2
zero = gd.const(0.0)
charts.append(gd.inline_chart(2, [[g11, zero], [zero, g22]],
                              label="unbalanced_product"))

print(f"{'chart':28s} {'selfdual residual':>18s} {'||W_-||':>12s} {'s_g':>9s}")
for chart in charts:
    p = gd.sample_points(chart, 1, seed=7)[0]
    sd = max(gd.selfdual_residual(chart, p))
    w = np.linalg.norm(gd.weyl_minus(chart, p), 2)
    print(f"{chart.label:28s} {sd:18.2e} {w:12.2e} "
          f"{gd.scalar_curvature(chart, p):+9.4f}")

# Self-duality is conformally invariant: rescaling the Fubini-Study chart by
# an arbitrary factor cannot break it.
fs = gd.fubini_study_chart(2)
pair = gd.rescale(fs, 0.05 * (gd.z(0) ** 3 + gd.zbar(0) ** 3))
p = gd.sample_points(fs, 1, seed=8)[0]
print(f"\nFS rescaled by exp(0.1 Re z1^3): selfdual residual "
      f"{max(gd.selfdual_residual(pair.rescaled, p)):.2e} (invariant, as it must be)")

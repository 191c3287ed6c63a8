"""The standard Hopf metric |z|^-2 (Euclidean): flat for the Strominger
connection (t = -1), curved but with identically zero holomorphic sectional
curvature for t = 3.

This is the desk-scale version of the statement that compact Hermitian
surfaces can have zero Gauduchon holomorphic sectional curvature with a
nonvanishing curvature tensor.
"""

import numpy as np

import gauduchon as gd

hopf = gd.hopf_chart(2)
pts = gd.sample_points(hopf, 25, seed=1)

# t = -1: the whole tensor vanishes.
worst = max(np.max(np.abs(gd.gauduchon_curvature(hopf, -1.0, p).R)) for p in pts)
print(f"t = -1 (Strominger): max ||R|| over 25 points = {worst:.2e}")

# t = 3: nonzero tensor ...
R = gd.gauduchon_curvature(hopf, 3.0, [0, 1]).R
print(f"\nt = 3 at z = (0, 1): R_{{1 1bar 2 2bar}} = {R[0, 0, 1, 1].real:+.6f}")

# ... matching the closed-form reference in the frame |z| d/dz ...
worst = max(np.max(np.abs(gd.gauduchon_curvature(hopf, 3.0, p).R
                          - gd.hopf_t3_reference(p).R)) for p in pts)
print(f"t = 3 vs closed-form tensor: {worst:.2e}")

# ... whose symmetrization (the part HSC sees) is identically zero.
for p in pts[:5]:
    c, res = gd.constancy_residual(gd.gauduchon_curvature(hopf, 3.0, p))
    eta = np.random.default_rng(5).standard_normal(2) + 0j
    h = gd.hsc(gd.gauduchon_curvature(hopf, 3.0, p), eta)
    print(f"  |z| = {np.linalg.norm(p):.3f}:  c = {c:+.1e}  residual = {res:.1e}"
          f"  H(eta) = {h:+.1e}")

# Off the constancy circle the HSC genuinely varies with the direction.
c, res = gd.constancy_residual(gd.gauduchon_curvature(hopf, 0.0, pts[0]))
print(f"\nt = 0 (Lichnerowicz) at the first point: residual = {res:.3f} "
      "(constancy fails, as it must)")

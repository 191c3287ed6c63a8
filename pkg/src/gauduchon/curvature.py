"""Curvature tensors of the Chern, Levi-Civita, Gauduchon and canonical
connection families, symmetrization, holomorphic sectional curvature,
pointwise-constancy residuals and the self-duality checks in dimension 2.

Component convention (Curv4): R[k, l, i, j] = R_{k lbar i jbar}
= R(e_k, ebar_l, e_i, ebar_j) with R(X,Y)Z = nab_X nab_Y Z - nab_Y nab_X Z
- nab_[X,Y] Z and R(X,Y,Z,W) = g(R(X,Y)Z, W).

Levi-Civita curvature is computed analytically from the complexified
Christoffel symbols in Wirtinger coordinates (indices 0..n-1 unbarred,
n..2n-1 barred); the full complexified Riemann tensor and the Riemannian
scalar curvature fall out of the same computation.  An independent oracle
(`lc_curvature_fd`, `scalar_curvature_fd`) redoes everything with
finite-difference Christoffel symbols of the realified metric in the 2n real
coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .connection import (MetricChart, as_params, chern_torsion, metric_values,
                         torsion_cov_deriv, _as_key, _frame_matrix,
                         _metric_point)
from .errors import DimensionError, ZeroVector


@dataclass(eq=False)
class Curv4:
    """Mixed-type curvature components R[k,l,i,j] = R_{k lbar i jbar} in a
    stated unitary frame."""

    R: np.ndarray
    connection: str = ""
    frame: str = "cholesky"

    @property
    def n(self) -> int:
        return self.R.shape[0]


def tensor_of(C) -> np.ndarray:
    return C.R if isinstance(C, Curv4) else np.asarray(C, dtype=complex)


# ---------------------------------------------------------------------------
# Chern curvature


def chern_curvature(chart: MetricChart, z, frame=None) -> Curv4:
    """Curvature of the Chern connection.

    Coordinate formula R_{k lbar i jbar} = -d_k dbar_l g_{i jbar}
    + g^{a bbar} (d_k g_{i bbar}) (dbar_l g_{a jbar}), frame-transformed.
    """
    pd = _metric_point(chart, _as_key(z))
    n = chart.n
    dG = np.empty((n, n, n), dtype=complex)
    dbarG = np.empty((n, n, n), dtype=complex)
    ddbarG = np.empty((n, n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            dG[:, i, j] = pd.jets[i][j].d
            dbarG[:, i, j] = pd.jets[i][j].dbar
            ddbarG[:, :, i, j] = pd.jets[i][j].ddbar
    R = -ddbarG + np.einsum("ab,kib,laj->klij", pd.ginv, dG, dbarG)
    E = _frame_matrix(chart, z, frame)
    Rf = np.einsum("ka,lb,ic,jd,klij->abcd", E, E.conj(), E, E.conj(), R)
    return Curv4(Rf, connection="chern")


# ---------------------------------------------------------------------------
# Complexified Levi-Civita data


@dataclass(eq=False)
class _LCData:
    M: np.ndarray        # complexified metric, (2n, 2n)
    Minv: np.ndarray
    Gamma: np.ndarray    # Gamma[a, b, c] = Gamma^a_bc
    Riem: np.ndarray     # Riem[c, d, b, f] = R(d_c, d_d, d_b, d_f)
    s_g: float


@lru_cache(maxsize=2048)
def _lc_point(chart: MetricChart, zkey: tuple) -> _LCData:
    pd = _metric_point(chart, zkey)
    n = chart.n
    N = 2 * n
    M = np.zeros((N, N), dtype=complex)
    dM = np.zeros((N, N, N), dtype=complex)     # dM[a, b, c] = d_a M[b, c]
    ddM = np.zeros((N, N, N, N), dtype=complex)
    for i in range(n):
        for j in range(n):
            J = pd.jets[i][j]
            M[i, n + j] = J.value
            dM[:n, i, n + j] = J.d
            dM[n:, i, n + j] = J.dbar
            ddM[:n, :n, i, n + j] = J.dd
            ddM[:n, n:, i, n + j] = J.ddbar
            ddM[n:, :n, i, n + j] = J.ddbar.T
            ddM[n:, n:, i, n + j] = J.dbardbar
    # The metric tensor is symmetric: mirror the (unbarred, barred) block.
    M = M + M.T
    dM = dM + dM.transpose(0, 2, 1)
    ddM = ddM + ddM.transpose(0, 1, 3, 2)
    Minv = np.linalg.inv(M)

    S = dM + dM.transpose(2, 1, 0) - dM.transpose(1, 0, 2)
    Gamma = 0.5 * np.einsum("ad,bdc->abc", Minv, S)

    dS = ddM + ddM.transpose(0, 3, 2, 1) - ddM.transpose(0, 2, 1, 3)
    dMinv = -np.einsum("ab,ebc,cd->ead", Minv, dM, Minv)
    dGamma = 0.5 * (np.einsum("ead,bdc->eabc", dMinv, S)
                    + np.einsum("ad,ebdc->eabc", Minv, dS))

    # R(d_c, d_d) d_b = Rup[a, b, c, d] d_a
    X = np.einsum("cadb->abcd", dGamma)
    Y = np.einsum("dacb->abcd", dGamma)
    P = np.einsum("ace,edb->abcd", Gamma, Gamma)
    Q = np.einsum("ade,ecb->abcd", Gamma, Gamma)
    Rup = X - Y + P - Q
    Riem = np.einsum("abcd,af->cdbf", Rup, M)
    s_g = float(np.real(np.einsum("ac,bd,abdc->", Minv, Minv, Riem)))
    return _LCData(M, Minv, Gamma, Riem, s_g)


def lc_curvature(chart: MetricChart, z, frame=None) -> Curv4:
    """Mixed components R(e_k, ebar_l, e_i, ebar_j) of the complexified
    Riemann tensor of the underlying Riemannian metric."""
    lc = _lc_point(chart, _as_key(z))
    n = chart.n
    block = lc.Riem[:n, n:, :n, n:]
    E = _frame_matrix(chart, z, frame)
    Rf = np.einsum("ka,lb,ic,jd,klij->abcd", E, E.conj(), E, E.conj(), block)
    return Curv4(Rf, connection="levi-civita")


def lc_full(chart: MetricChart, z) -> np.ndarray:
    """Full complexified Riemann tensor in the Wirtinger coordinate frame
    (2n axes each: 0..n-1 unbarred, n..2n-1 barred)."""
    return _lc_point(chart, _as_key(z)).Riem.copy()


def scalar_curvature(chart: MetricChart, z) -> float:
    """Riemannian scalar curvature of the realified metric."""
    return _lc_point(chart, _as_key(z)).s_g


def lc_mixed_christoffel(chart: MetricChart, z) -> np.ndarray:
    """Coordinate coefficients C[m, l, k] of the (1,0) part of
    nab^LC_{dbar_l} d_k (used for covariant derivatives of conformal
    factors)."""
    lc = _lc_point(chart, _as_key(z))
    n = chart.n
    return lc.Gamma[:n, n:, :n].copy()


# ---------------------------------------------------------------------------
# Gauduchon and canonical families (assembled from LC + torsion)


def canonical_curvature(chart: MetricChart, params, z, frame=None) -> Curv4:
    """Curvature of the canonical connection D^t_s.

    R^D_{k lbar i jbar} = R_{k lbar i jbar} + p (T^j_{ik,lbar}
    + conj(T^i_{jl,kbar})) + (p^2 - 2p)(T^r_ik conj(T^r_jl)
    - T^j_rk conj(T^i_rl)) + (s^2 - 1) conj(T^k_rj) T^l_ir,  p = t - t s.
    """
    pr = as_params(params)
    R = lc_curvature(chart, z, frame).R
    T = chern_torsion(chart, z, frame)
    TD = torsion_cov_deriv(chart, z, frame)
    p, s = pr.p, pr.s
    term1 = np.einsum("jikl->klij", TD) + np.einsum("ijlk->klij", np.conj(TD))
    term2 = np.einsum("rik,rjl->klij", T, np.conj(T)) \
        - np.einsum("jrk,irl->klij", T, np.conj(T))
    term3 = np.einsum("krj,lir->klij", np.conj(T), T)
    RD = R + p * term1 + (p * p - 2 * p) * term2 + (s * s - 1) * term3
    return Curv4(RD, connection=f"canonical(t={pr.t:g}, s={pr.s:g})")


def gauduchon_curvature(chart: MetricChart, t: float, z, frame=None) -> Curv4:
    """Curvature of the Gauduchon connection nab^t (= D^t_0)."""
    C = canonical_curvature(chart, (t, 0.0), z, frame)
    C.connection = f"gauduchon(t={t:g})"
    return C


# ---------------------------------------------------------------------------
# Symmetrization, HSC, constancy


def symmetrize(C) -> Curv4:
    """Symmetrization Rhat_{i jbar k lbar} = (R_{i jbar k lbar}
    + R_{k jbar i lbar} + R_{i lbar k jbar} + R_{k lbar i jbar}) / 4."""
    R = tensor_of(C)
    # Two nested pair-symmetrizations keep the i<->k and j<->l symmetries
    # exact (a flat 4-term sum would round differently across permutations).
    S = R + np.einsum("kjil->ijkl", R)
    Rh = 0.25 * (S + np.einsum("ilkj->ijkl", S))
    name = C.connection if isinstance(C, Curv4) else ""
    return Curv4(Rh, connection=f"sym({name})" if name else "sym")


def hsc(C, eta) -> float:
    """Holomorphic sectional curvature H(eta) = R(eta, etabar, eta, etabar)
    / |eta|^4 for a (1,0) vector eta given in the same unitary frame as C."""
    R = tensor_of(C)
    eta = np.asarray(eta, dtype=complex)
    norm2 = float(np.sum(np.abs(eta) ** 2))
    if norm2 < 1e-30:
        raise ZeroVector("hsc needs a nonzero direction")
    val = np.einsum("klij,k,l,i,j->", R, eta, np.conj(eta), eta, np.conj(eta))
    scale = max(1.0, abs(val))
    assert abs(val.imag) <= 1e-9 * scale, f"hsc contraction not real: {val}"
    return float(val.real) / norm2**2


@dataclass(eq=False)
class HSCReport:
    """Constancy scan summary: mean estimated constant, worst residual and a
    per-point table of (point, c, residual)."""

    c_mean: float
    residual_max: float
    rows: list


def hsc_report(chart: MetricChart, params, points) -> HSCReport:
    """Constancy scan of the canonical curvature over the given points."""
    rows = []
    for p in points:
        c, res = constancy_residual(canonical_curvature(chart, params, p))
        rows.append((np.asarray(p, dtype=complex), c, res))
    return HSCReport(
        c_mean=float(np.mean([r[1] for r in rows])),
        residual_max=float(max(r[2] for r in rows)),
        rows=rows)


def constancy_residual(C) -> tuple[float, float]:
    """Estimate (c, residual) of pointwise HSC constancy.

    c is the normalized diagonal average of the symmetrized tensor (exact
    whenever constancy holds); residual is the max-norm of
    Rhat - c/2 (delta delta + delta delta).
    """
    Rh = symmetrize(C).R
    n = Rh.shape[0]
    total = 0.0
    for i in range(n):
        for k in range(i, n):
            total += 2.0 * Rh[i, i, k, k].real / (1.0 + (i == k))
    c = 2.0 * total / (n * (n + 1))
    eye = np.eye(n)
    target = 0.5 * c * (np.einsum("kl,ij->klij", eye, eye)
                        + np.einsum("kj,il->klij", eye, eye))
    residual = float(np.max(np.abs(Rh - target)))
    return c, residual


# ---------------------------------------------------------------------------
# Self-duality (n = 2)


def selfdual_residual(chart: MetricChart, z) -> tuple[float, float, float]:
    """The three self-duality residuals |R_{1 2bar 1 2bar}|,
    |R_{1 2bar 2 2bar} - R_{1 2bar 1 1bar}| and |2 R_{1 2bar 2 1bar}
    + 2 R_{1 1bar 2 2bar} - R_{1 1bar 1 1bar} - R_{2 2bar 2 2bar}| of the
    Levi-Civita curvature in a unitary frame; all vanish iff the metric is
    self-dual at z."""
    if chart.n != 2:
        raise DimensionError("self-duality requires complex dimension 2")
    R = lc_curvature(chart, z).R
    r1 = abs(R[0, 1, 0, 1])
    r2 = abs(R[0, 1, 1, 1] - R[0, 1, 0, 0])
    r3 = abs(2 * R[0, 1, 1, 0] + 2 * R[0, 0, 1, 1] - R[0, 0, 0, 0] - R[1, 1, 1, 1])
    return float(r1), float(r2), float(r3)


def weyl_minus(chart: MetricChart, z) -> np.ndarray:
    """Gram matrix of the anti-self-dual Weyl operator W_- on the unitary
    basis {e1 ^ ebar2, (e1 ^ ebar1 - e2 ^ ebar2)/sqrt2, ebar1 ^ e2} of
    Lambda^2_- tensor C.

    Entries are <W_- u_a, u_b> = g(curv_op(u_a), conj(u_b)) - s_g/12
    delta_ab with g(curv_op(X ^ Y), Z ^ W) = -R(X, Y, Z, W).  Hermitian up
    to numerical error by the Riemann pair symmetry.
    """
    if chart.n != 2:
        raise DimensionError("W_- requires complex dimension 2")
    R = lc_curvature(chart, z).R
    s_g = scalar_curvature(chart, z)
    rt2 = np.sqrt(2.0)
    W = np.empty((3, 3), dtype=complex)
    W[0, 0] = R[0, 1, 1, 0]
    W[0, 1] = (R[0, 1, 0, 0] - R[0, 1, 1, 1]) / rt2
    W[0, 2] = -R[0, 1, 0, 1]
    W[1, 0] = (R[0, 0, 1, 0] - R[1, 1, 1, 0]) / rt2
    W[1, 1] = 0.5 * (R[0, 0, 0, 0] + R[1, 1, 1, 1]) \
        - 0.5 * (R[0, 0, 1, 1] + R[1, 1, 0, 0])
    W[1, 2] = (R[1, 1, 0, 1] - R[0, 0, 0, 1]) / rt2
    W[2, 0] = -R[1, 0, 1, 0]
    W[2, 1] = (R[1, 0, 1, 1] - R[1, 0, 0, 0]) / rt2
    W[2, 2] = R[1, 0, 0, 1]
    W -= (s_g / 12.0) * np.eye(3)
    return W


# ---------------------------------------------------------------------------
# Real-coordinate finite-difference oracle


def _real_metric(chart: MetricChart, x: np.ndarray) -> np.ndarray:
    """Realified metric matrix at real coordinates x = (x_1..x_n, y_1..y_n).

    With g_{k lbar} = g(d_k, dbar_l): g(dx_k, dx_l) = g(dy_k, dy_l)
    = 2 Re g_{k lbar} and g(dx_k, dy_l) = 2 Im g_{k lbar}.
    """
    n = chart.n
    G = metric_values(chart, x[:n] + 1j * x[n:])
    re, im = 2.0 * G.real, 2.0 * G.imag
    return np.block([[re, im], [im.T, re]])


def _real_christoffel(chart: MetricChart, x: np.ndarray, h: float) -> np.ndarray:
    m = 2 * chart.n
    G0 = _real_metric(chart, x)
    Ginv = np.linalg.inv(G0)
    dG = np.zeros((m, m, m))
    for c in range(m):
        vals = []
        for off in (-2.0, -1.0, 1.0, 2.0):
            xs = x.copy()
            xs[c] += off * h
            vals.append(_real_metric(chart, xs))
        fm2, fm1, fp1, fp2 = vals
        dG[c] = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h)
    S = dG + dG.transpose(2, 1, 0) - dG.transpose(1, 0, 2)
    return 0.5 * np.einsum("ad,bdc->abc", Ginv, S)


def _real_riemann(chart: MetricChart, x: np.ndarray, h: float):
    """Riemann tensor R[c,d,b,f] = R(d_c, d_d, d_b, d_f) of the realified
    metric, by central finite differences of real Christoffel symbols."""
    m = 2 * chart.n
    G0 = _real_metric(chart, x)
    Gamma0 = _real_christoffel(chart, x, h)
    dGamma = np.zeros((m, m, m, m))
    for c in range(m):
        xp, xm = x.copy(), x.copy()
        xp[c] += h
        xm[c] -= h
        dGamma[c] = (_real_christoffel(chart, xp, h)
                     - _real_christoffel(chart, xm, h)) / (2 * h)
    X = np.einsum("cadb->abcd", dGamma)
    Y = np.einsum("dacb->abcd", dGamma)
    P = np.einsum("ace,edb->abcd", Gamma0, Gamma0)
    Q = np.einsum("ade,ecb->abcd", Gamma0, Gamma0)
    Rup = X - Y + P - Q
    Riem = np.einsum("abcd,af->cdbf", Rup, G0)
    return Riem, G0


def lc_curvature_fd(chart: MetricChart, z, frame=None, h: float = 1e-4) -> Curv4:
    """Independent Levi-Civita oracle: Christoffel symbols of the realified
    metric by finite differences in the 2n real coordinates, complexified
    against the unitary frame."""
    pt = np.asarray(z, dtype=complex)
    n = chart.n
    x = np.concatenate([pt.real, pt.imag])
    Riem, _ = _real_riemann(chart, x, h)
    E = _frame_matrix(chart, z, frame)
    # e_a = sum_m E[m,a] (dx_m - i dy_m)/2,  ebar_a its conjugate
    w = np.zeros((2 * n, n), dtype=complex)
    w[:n] = 0.5 * E
    w[n:] = -0.5j * E
    v = np.conj(w)
    Rf = np.einsum("pa,qb,rc,sd,pqrs->abcd", w, v, w, v, Riem)
    return Curv4(Rf, connection="levi-civita (fd oracle)")


def scalar_curvature_fd(chart: MetricChart, z, h: float = 1e-4) -> float:
    """Scalar curvature from the real-coordinate finite-difference oracle."""
    pt = np.asarray(z, dtype=complex)
    x = np.concatenate([pt.real, pt.imag])
    Riem, G0 = _real_riemann(chart, x, h)
    Ginv = np.linalg.inv(G0)
    return float(np.einsum("ac,bd,abdc->", Ginv, Ginv, Riem))


# ---------------------------------------------------------------------------
# Curv4 dump format


def curv4_rows(C) -> list[tuple[int, int, int, int, float, float]]:
    """Rows (k, l, i, j, re, im) of a curvature tensor, 1-based indices,
    lexicographic order."""
    R = tensor_of(C)
    n = R.shape[0]
    rows = []
    for k in range(n):
        for l in range(n):
            for i in range(n):
                for j in range(n):
                    v = R[k, l, i, j]
                    rows.append((k + 1, l + 1, i + 1, j + 1,
                                 float(v.real), float(v.imag)))
    return rows

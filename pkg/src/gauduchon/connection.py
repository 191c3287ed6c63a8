"""Metric charts, pointwise unitary frames, Chern torsion and related tensors.

A Hermitian metric on an open chart of C^n is given by the matrix of scalar
fields g[i][j] = g(d/dz_i, d/dzbar_j).  All tensors are computed in the
coordinate frame from metric jets and transformed pointwise into a unitary
frame, so frame derivatives never appear.

Torsion convention: the Chern connection has coordinate Christoffel symbols
Gamma^k_ij = g^{k lbar} d_i g_{j lbar} and torsion coefficients
T^k_ij = (Gamma^k_ij - Gamma^k_ji)/2, the coefficients of the torsion forms
tau^k = T^k_ij phi^i ^ phi^j with full (antisymmetrized) summation.  The
factor 1/2 is pinned by requiring the conformal transformation law
Ttilde^i_jk = e^-f (T^i_jk + f_j delta_ik - f_k delta_ij) to hold with
coefficient exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, NotPositiveDefinite
from .wjet import ScalarField, as_point, eval_jet

HERMITIAN_TOL = 1e-9
FRAME_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ConnectionParams:
    """Parameter pair (t, s) of the canonical connection D^t_s.

    s = 0 is the Gauduchon line; (t, s) = (1, 0), (-1, 0), (0, 0) are the
    Chern, Strominger and Lichnerowicz connections, s = 1 is Levi-Civita.
    p and b are always derived, never stored.
    """

    t: float
    s: float = 0.0

    @property
    def p(self) -> float:
        return self.t - self.t * self.s

    @property
    def b(self) -> float:
        return self.p**2 - 2 * self.p - 1 + self.s**2


def as_params(params) -> ConnectionParams:
    if isinstance(params, ConnectionParams):
        return params
    t, s = params
    return ConnectionParams(float(t), float(s))


@dataclass(frozen=True, eq=False)
class MetricChart:
    """Hermitian metric on an open chart of C^n.

    g is an n x n nested tuple of ScalarField with g[i][j] = g_{i jbar};
    it must be Hermitian (g[j][i] evaluates to conj(g[i][j])) and positive
    definite on the domain.  `sampler(rng) -> point` draws from the chart's
    safe sampling region.
    """

    n: int
    g: tuple
    label: str = "chart"
    domain: Callable[[np.ndarray], bool] | None = None
    sampler: Callable[[np.random.Generator], np.ndarray] | None = None

    def component(self, i: int, j: int) -> ScalarField:
        return self.g[i][j]

    def __repr__(self):
        return f"<MetricChart {self.label} n={self.n}>"


@dataclass(eq=False)
class FrameAtPoint:
    """Columns of E express unitary (1,0) frame vectors in the coordinate
    basis: e_a = sum_i E[i,a] d/dz_i.  G is the metric value matrix."""

    E: np.ndarray
    G: np.ndarray

    def rotated(self, U: np.ndarray) -> "FrameAtPoint":
        """Frame e'_a = sum_b e_b U[b,a] for unitary U."""
        return FrameAtPoint(self.E @ U, self.G)


@dataclass(eq=False)
class _PointData:
    z: np.ndarray
    jets: list            # jets[i][j] = WJet2 of g_{i jbar}
    G: np.ndarray
    ginv: np.ndarray      # ginv[k,j] = g^{k jbar},  sum_j g_{i jbar} g^{k jbar} = delta_ik
    E: np.ndarray


def _as_key(z) -> tuple:
    return tuple(complex(c) for c in as_point(z))


@lru_cache(maxsize=2048)
def _metric_point(chart: MetricChart, zkey: tuple) -> _PointData:
    z = np.array(zkey, dtype=complex)
    if len(z) != chart.n:
        raise DomainError(f"point of dim {len(z)} on chart of dim {chart.n}")
    if chart.domain is not None and not chart.domain(z):
        raise DomainError(f"point {z} outside domain of {chart.label}")
    n = chart.n
    jets = [[eval_jet(chart.g[i][j], z) for j in range(n)] for i in range(n)]
    G = np.array([[jets[i][j].value for j in range(n)] for i in range(n)], dtype=complex)
    herm_defect = np.max(np.abs(G - G.conj().T))
    if herm_defect > HERMITIAN_TOL * max(1.0, np.max(np.abs(G))):
        raise NotPositiveDefinite(
            f"metric of {chart.label} is not Hermitian at {z} (defect {herm_defect:.2e})")
    Gh = 0.5 * (G + G.conj().T)
    eigmin = float(np.linalg.eigvalsh(Gh).min())
    if eigmin <= 0:
        raise NotPositiveDefinite(
            f"metric of {chart.label} has smallest eigenvalue {eigmin:.3e} at {z}")
    ginv = np.linalg.inv(G).T
    L = np.linalg.cholesky(Gh)          # G = L L^H, deterministic, no pivoting
    # Unitarity of a (1,0) frame means g(e_a, ebar_b) = (E^T G conj(E))[a,b]
    # = delta_ab; conjugation sits on the barred slot.
    E = np.linalg.inv(L.T)
    defect = np.max(np.abs(E.T @ G @ E.conj() - np.eye(n)))
    assert defect < FRAME_TOL, f"frame unitarity defect {defect:.3e}"
    return _PointData(z, jets, G, ginv, E)


def metric_jet(chart: MetricChart, z):
    """Jets of every g_{i jbar} at z, plus the inverse metric there.

    Returns (jets, ginv) with jets[i][j] a WJet2 and ginv[k,j] = g^{k jbar}.
    Raises NotPositiveDefinite if the value matrix fails the PD check.
    """
    pd = _metric_point(chart, _as_key(z))
    return pd.jets, pd.ginv


def metric_values(chart: MetricChart, z) -> np.ndarray:
    """Value matrix G without derivative propagation (used by FD oracles)."""
    pt = as_point(z)
    if chart.domain is not None and not chart.domain(pt):
        raise DomainError(f"point {pt} outside domain of {chart.label}")
    n = chart.n
    return np.array([[chart.g[i][j]._value(pt) for j in range(n)] for i in range(n)],
                    dtype=complex)


def unitary_frame(chart: MetricChart, z) -> FrameAtPoint:
    """Deterministic pointwise unitary frame from the Cholesky factor of G."""
    pd = _metric_point(chart, _as_key(z))
    return FrameAtPoint(pd.E.copy(), pd.G.copy())


def _frame_matrix(chart: MetricChart, z, frame) -> np.ndarray:
    if frame is None:
        return _metric_point(chart, _as_key(z)).E
    if isinstance(frame, FrameAtPoint):
        return frame.E
    return np.asarray(frame, dtype=complex)


def _coordinate_torsion(pd: _PointData):
    """Coordinate torsion T^k_ij and first-derivative data used by both the
    torsion and its dbar covariant derivative."""
    n = len(pd.z)
    # dG[a, i, j] = d_a g_{i jbar},  dbarG[a, i, j] = dbar_a g_{i jbar}
    dG = np.empty((n, n, n), dtype=complex)
    dbarG = np.empty((n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            dG[:, i, j] = pd.jets[i][j].d
            dbarG[:, i, j] = pd.jets[i][j].dbar
    # Gamma[k, i, j] = g^{k lbar} d_i g_{j lbar}
    Gamma = np.einsum("kl,ijl->kij", pd.ginv, dG)
    T = 0.5 * (Gamma - Gamma.transpose(0, 2, 1))
    return T, dG, dbarG


def _frame_torsion(T_coord: np.ndarray, E: np.ndarray) -> np.ndarray:
    Einv = np.linalg.inv(E)
    T = np.einsum("ck,kij,ia,jb->cab", Einv, T_coord, E, E)
    return 0.5 * (T - T.transpose(0, 2, 1))   # exact antisymmetry


def chern_torsion(chart: MetricChart, z, frame=None) -> np.ndarray:
    """Chern torsion coefficients T[i,j,k] = T^i_jk in the given unitary frame.

    Exactly antisymmetric in (j, k).  Defaults to the Cholesky frame.
    """
    pd = _metric_point(chart, _as_key(z))
    T_coord, _, _ = _coordinate_torsion(pd)
    return _frame_torsion(T_coord, _frame_matrix(chart, z, frame))


def torsion_cov_deriv(chart: MetricChart, z, frame=None) -> np.ndarray:
    """Chern-covariant dbar derivative of the torsion.

    Returns TD[j, i, k, l] = T^j_{ik, lbar} in the given unitary frame.  In
    holomorphic coordinates the Chern connection has no mixed Christoffel
    symbols, so the coordinate components are plain dbar_l derivatives; the
    result is then frame-transformed as a (1,3)-tensor.
    """
    pd = _metric_point(chart, _as_key(z))
    n = len(pd.z)
    _, dG, dbarG = _coordinate_torsion(pd)
    # ddbarG[a, b, i, j] = d_a dbar_b g_{i jbar}
    ddbarG = np.empty((n, n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            ddbarG[:, :, i, j] = pd.jets[i][j].ddbar
    # dbar_l g^{k qbar} = - g^{k bbar} (dbar_l g_{a bbar}) g^{a qbar}
    dginv = -np.einsum("kb,lab,aq->lkq", pd.ginv, dbarG, pd.ginv)
    # dbar_l Gamma^k_ij = (dbar_l g^{k qbar}) d_i g_{j qbar} + g^{k qbar} d_i dbar_l g_{j qbar}
    dGamma = np.einsum("lkq,ijq->kijl", dginv, dG) \
        + np.einsum("kq,iljq->kijl", pd.ginv, ddbarG)
    TD_coord = 0.5 * (dGamma - dGamma.transpose(0, 2, 1, 3))
    E = _frame_matrix(chart, z, frame)
    Einv = np.linalg.inv(E)
    TD = np.einsum("aj,jikl,ib,kc,ld->abcd", Einv, TD_coord, E, E, E.conj())
    return 0.5 * (TD - TD.transpose(0, 2, 1, 3))


def gamma_theta2(chart: MetricChart, z, frame=None):
    """Coefficient arrays of the 1-forms gamma and theta_2 against the unitary
    coframe (phi^1..phi^n, phibar^1..phibar^n).

    gamma[j, i, k] (k < n) multiplies phi^k and equals T^j_ik;
    gamma[j, i, n + k] multiplies phibar^k and equals -conj(T^i_jk).
    theta2[j, i, k] multiplies phi^k and equals conj(T^k_ij); its phibar part
    vanishes on integrable charts.
    """
    n = chart.n
    T = chern_torsion(chart, z, frame)
    gamma = np.zeros((n, n, 2 * n), dtype=complex)
    for j in range(n):
        for i in range(n):
            gamma[j, i, :n] = T[j, i, :]
            gamma[j, i, n:] = -np.conj(T[i, j, :])
    theta2 = np.transpose(np.conj(T), (2, 1, 0))  # theta2[j,i,k] = conj(T[k,i,j])
    return gamma, theta2

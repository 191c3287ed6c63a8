import numpy as np
import pytest

import gauduchon as gd
from gauduchon.connection import metric_values
from gauduchon.errors import BaseNotKahler, NonRealConformalFactor

from conftest import pts_of

TS_GRID = [(-1.0, 0.0), (0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (2.0, 0.0),
           (3.0, 0.0), (-1.0, 2.0), (0.0, np.sqrt(3.0)), (2.0, 1.0),
           (1.3, -0.7)]


def maxabs(x):
    return float(np.max(np.abs(x)))


def log_norm_factor(scale=-0.5):
    return scale * gd.log(gd.abs2(2))


# ---------------------------------------------------------------------------
# rescale


def test_rescale_identity(flat):
    pair = gd.rescale(flat, gd.const(0.0))
    for p in pts_of(flat, 5, 0):
        np.testing.assert_allclose(metric_values(pair.rescaled, p),
                                   metric_values(flat, p), atol=1e-15)


def test_rescale_flat_to_hopf(flat, hopf):
    pair = gd.rescale(flat, log_norm_factor(),
                      check_points=pts_of(hopf, 4, 1))
    for p in pts_of(hopf, 10, 2):
        np.testing.assert_allclose(metric_values(pair.rescaled, p),
                                   metric_values(hopf, p), atol=1e-14)


def test_rescale_flat_to_admissible(flat, adm, adm_spec):
    f = -0.5 * gd.log(gd.xi_field(adm_spec))
    pair = gd.rescale(flat, f, check_points=pts_of(adm, 4, 3))
    for p in pts_of(adm, 10, 4):
        np.testing.assert_allclose(metric_values(pair.rescaled, p),
                                   metric_values(adm, p), atol=1e-14)


def test_rescale_rejects_non_real_factor(flat):
    with pytest.raises(NonRealConformalFactor):
        gd.rescale(flat, gd.z(0))


def test_paired_frames_are_unitary(flat):
    pair = gd.rescale(flat, log_norm_factor())
    for p in pts_of(gd.hopf_chart(2), 5, 5):
        fb, fr = gd.paired_frames(pair, p)
        assert maxabs(fr.E.T @ fr.G @ fr.E.conj() - np.eye(2)) < 1e-12
        np.testing.assert_allclose(fr.E, np.exp(-pair.f(p).real) * fb.E,
                                   atol=1e-15)


# ---------------------------------------------------------------------------
# torsion transformation law


def test_torsion_transform_zero_factor(flat):
    pair = gd.rescale(flat, gd.const(0.0))
    assert gd.torsion_transform_residual(pair, [0.4, 0.3]) < 1e-15


def test_torsion_transform_flat_to_hopf(flat, hopf):
    pair = gd.rescale(flat, log_norm_factor())
    for p in pts_of(hopf, 50, 6):
        assert gd.torsion_transform_residual(pair, p) < 1e-8
    # witness: predicted Ttilde^2_12 = -1/2 at (1,0)
    _, fr = gd.paired_frames(pair, [1, 0])
    T = gd.chern_torsion(pair.rescaled, [1, 0], fr)
    assert T[1, 0, 1] == pytest.approx(-0.5, abs=1e-12)


def test_torsion_transform_fs_base(fs):
    f = 0.05 * (gd.z(0) + gd.zbar(0))   # 0.1 Re z1
    pair = gd.rescale(fs, f)
    for p in pts_of(fs, 20, 7):
        assert gd.torsion_transform_residual(pair, p) < 1e-8


# ---------------------------------------------------------------------------
# Gauduchon-family delta (s = 0)


def test_delta_zero_factor(flat):
    pair = gd.rescale(flat, gd.const(0.0))
    D = gd.delta_gauduchon_predicted(pair, 2.0, [0.3, 0.1])
    assert maxabs(D.R) < 1e-15


def test_delta_gauduchon_flat_to_hopf_t1(flat):
    # hand reduction at t = 1: e^2f Rtilde = -2 f_{k lbar} delta_ij,
    # giving Rtilde^1_{2 2bar i jbar} = delta_ij at (1, 0)
    pair = gd.rescale(flat, log_norm_factor())
    D = gd.delta_gauduchon_predicted(pair, 1.0, [1, 0]).R
    np.testing.assert_allclose(D[1, 1], np.eye(2), atol=1e-12)
    direct = gd.delta_direct(pair, (1.0, 0.0), [1, 0]).R
    np.testing.assert_allclose(direct, D, atol=1e-12)


@pytest.mark.parametrize("t", [-1.0, 0.0, 0.5, 1.0, 2.0, 3.0])
def test_delta_gauduchon_predicted_vs_direct(flat, fs, t):
    factors = [log_norm_factor(-0.5),
               0.1 * (gd.z(0) + gd.zbar(0)) + 0.05 * gd.abs2(2)]
    charts = [gd.hopf_chart(2), fs]
    for base, f, chart in zip((flat, fs), factors, charts):
        pair = gd.rescale(base, f, check_points=pts_of(chart, 3, 8))
        for p in pts_of(chart, 4, 9):
            d = maxabs(gd.delta_gauduchon_predicted(pair, t, p).R
                       - gd.delta_direct(pair, (t, 0.0), p).R)
            assert d < 1e-7


# ---------------------------------------------------------------------------
# canonical-family delta


def test_delta_canonical_s0_equals_gauduchon(flat):
    pair = gd.rescale(flat, log_norm_factor())
    p = [0.8, 0.3 - 0.2j]
    for t in (-1.0, 2.0, 3.0):
        D1 = gd.delta_canonical_predicted(pair, (t, 0.0), p).R
        D2 = gd.delta_gauduchon_predicted(pair, t, p).R
        np.testing.assert_array_equal(D1, D2)


def test_delta_canonical_flat_to_admissible(flat, adm, adm_spec):
    f = -0.5 * gd.log(gd.xi_field(adm_spec))
    pair = gd.rescale(flat, f, check_points=pts_of(adm, 3, 10))
    for p in pts_of(adm, 20, 11):
        d = maxabs(gd.delta_canonical_predicted(pair, (-1.0, 2.0), p).R
                   - gd.delta_direct(pair, (-1.0, 2.0), p).R)
        assert d < 1e-7


def test_delta_canonical_fuzz_grid(hopf, flat):
    pair = gd.rescale(flat, log_norm_factor())
    for p in pts_of(hopf, 3, 12):
        for ts in TS_GRID:
            d = maxabs(gd.delta_canonical_predicted(pair, ts, p).R
                       - gd.delta_direct(pair, ts, p).R)
            assert d < 1e-7, ts


def test_delta_constant_factor(fs):
    """Constant f: delta vanishes and curvature scales by e^-2f."""
    pair = gd.rescale(fs, gd.const(0.3))
    p = [0.4, -0.2 + 0.3j]
    D = gd.delta_canonical_predicted(pair, (2.0, 0.5), p).R
    assert maxabs(D) < 1e-14
    assert maxabs(gd.delta_direct(pair, (2.0, 0.5), p).R) < 1e-9
    fb, fr = gd.paired_frames(pair, p)
    Rb = gd.canonical_curvature(fs, (2.0, 0.5), p, fb).R
    Rt = gd.canonical_curvature(pair.rescaled, (2.0, 0.5), p, fr).R
    np.testing.assert_allclose(Rt, np.exp(-0.6) * Rb, atol=1e-9)


def test_delta_frame_rotation_robust(flat, hopf):
    """The curvature deltas are tensorial: they hold in rotated unitary frames."""
    pair = gd.rescale(flat, log_norm_factor())
    rng = np.random.default_rng(13)
    for p in pts_of(hopf, 3, 14):
        Q, _ = np.linalg.qr(rng.standard_normal((2, 2))
                            + 1j * rng.standard_normal((2, 2)))
        fb, fr = gd.paired_frames(pair, p)
        fbQ, frQ = fb.rotated(Q), fr.rotated(Q)
        for ts in [(3.0, 0.0), (-1.0, 2.0)]:
            pred = gd.delta_canonical_predicted(pair, ts, p, fbQ).R
            Rb = gd.canonical_curvature(pair.base, ts, p, fbQ).R
            Rt = gd.canonical_curvature(pair.rescaled, ts, p, frQ).R
            direct = np.exp(2 * pair.f(p).real) * Rt - Rb
            assert maxabs(pred - direct) < 1e-7


# ---------------------------------------------------------------------------
# Kahler-base symmetrized delta


def test_delta_kahler_flat_base(flat, hopf):
    fq = 0.2 * gd.abs2(2) + 0.1 * (gd.z(0) * gd.z(1) + gd.zbar(0) * gd.zbar(1))
    pair = gd.rescale(flat, fq)
    for p in pts_of(hopf, 3, 15):
        for ts in [(3.0, 0.0), (-1.0, 2.0), (0.5, 0.5)]:
            d = maxabs(gd.delta_kahler_predicted(pair, ts, p).R
                       - gd.delta_direct_symmetrized(pair, ts, p).R)
            assert d < 1e-7


def test_delta_kahler_zero_factor(fs):
    pair = gd.rescale(fs, gd.const(0.0))
    assert maxabs(gd.delta_kahler_predicted(pair, (2.0, 1.0), [0.3, 0.1]).R) < 1e-15


def test_delta_kahler_s0_coefficient_identity(flat):
    """At s = 0 the coefficient collapses to (1-t)^2: any params with equal
    (p-1)^2 + s^2 give the identical prediction."""
    pair = gd.rescale(flat, 0.1 * gd.abs2(2))
    p = [0.5, 0.2 - 0.4j]
    # params (2, 0.5) have p = 1, coeff = 0 + 0.25; params with s = 0 and
    # the same (p-1)^2 + s^2 give the identical prediction
    D1 = gd.delta_kahler_predicted(pair, (2.0, 0.5), p).R
    D2 = gd.delta_kahler_predicted(pair, (0.5, 0.0), p).R   # (1-0.5)^2 = 0.25
    np.testing.assert_allclose(D1, D2, atol=1e-15)


def test_delta_kahler_rejects_non_kahler_base(hopf):
    pair = gd.rescale(hopf, gd.const(0.1))
    with pytest.raises(BaseNotKahler):
        gd.delta_kahler_predicted(pair, (2.0, 0.0), [0.8, 0.1])


# ---------------------------------------------------------------------------
# commutation rule


def test_commutation_kahler(kahler_charts):
    f = 0.2 * (gd.z(0) + gd.zbar(0)) + 0.1 * gd.abs2(2)
    for chart in kahler_charts:
        for p in pts_of(chart, 5, 16):
            for t in (-1.0, 0.0, 2.0):
                assert gd.commutation_residual(chart, f, t, p) < 1e-10


def test_commutation_chern_case(hopf):
    f = 0.3 * (gd.z(0) * gd.z(1) + gd.zbar(0) * gd.zbar(1))
    for p in pts_of(hopf, 10, 17):
        assert gd.commutation_residual(hopf, f, 1.0, p) < 1e-9


@pytest.mark.parametrize("seed", range(5))
def test_commutation_hopf_random_factors(hopf, seed):
    rng = np.random.default_rng(800 + seed)
    c = rng.standard_normal(3).round(3)
    f = (c[0] * (gd.z(0) + gd.zbar(0)) + c[1] * gd.abs2(2)
         + c[2] * 0.5 * (gd.z(0) * gd.z(1) + gd.zbar(0) * gd.zbar(1)))
    for p in pts_of(hopf, 4, 18):
        assert gd.commutation_residual(hopf, f, 3.0, p) < 1e-8


# ---------------------------------------------------------------------------
# conformal invariance of self-duality


def test_selfdual_conformal_invariance(flat, fsb):
    cases = [(flat, log_norm_factor(), gd.hopf_chart(2)),
             (fsb, 0.05 * (gd.z(0) + gd.zbar(0)) + 0.02 * gd.abs2(2), fsb)]
    for base, f, sample_chart in cases:
        pair = gd.rescale(base, f, check_points=pts_of(sample_chart, 3, 19))
        for p in pts_of(sample_chart, 5, 20):
            assert max(gd.selfdual_residual(base, p)) < 1e-8
            assert max(gd.selfdual_residual(pair.rescaled, p)) < 1e-6

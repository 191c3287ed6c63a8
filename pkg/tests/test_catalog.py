import numpy as np
import pytest

import gauduchon as gd
from gauduchon.connection import metric_values
from gauduchon.errors import InvalidSpec, ZeroPoint

from conftest import pts_of


def maxabs(x):
    return float(np.max(np.abs(x)))


# ---------------------------------------------------------------------------
# make_chart and constructors


def test_hopf_components_at_unit_point(hopf):
    G = metric_values(hopf, [1, 0])
    assert G[0, 0] == pytest.approx(1.0)
    assert G[0, 1] == pytest.approx(0.0)


def test_admissible_components(adm):
    G = metric_values(adm, [1, 0])
    np.testing.assert_allclose(G, np.eye(2) / 1.4, atol=1e-15)


def test_fs_bergman_components(fsb):
    rng = np.random.default_rng(0)
    for p in pts_of(fsb, 10, 1):
        G = metric_values(fsb, p)
        assert G[0, 0] == pytest.approx(2.0 / (1 - abs(p[0]) ** 2) ** 2)
        assert G[1, 1] == pytest.approx(2.0 / (1 + abs(p[1]) ** 2) ** 2)
        assert G[0, 1] == 0 and G[1, 0] == 0


def test_catalog_positive_definite_everywhere(catalog_charts):
    for chart in catalog_charts:
        for p in pts_of(chart, 200, 2):
            G = metric_values(chart, p)
            eig = np.linalg.eigvalsh(0.5 * (G + G.conj().T))
            assert eig.min() > 0, chart.label


def test_make_chart_json_tags(adm_spec):
    specs = [
        {"chart": "euclidean", "n": 2},
        {"chart": "hopf_standard", "n": 2, "a": 0.5},
        {"chart": "fs_bergman"},
        {"chart": "fubini_study", "n": 2},
        {"chart": "complex_hyperbolic", "n": 2},
        {"chart": "admissible", "n": 2, "a": 0.5,
         "multipliers": [[0.5, 0], [0.5, 0]],
         "A": [[[0.2, 0], [0, 0]], [[0, 0], [0.1, 0]]], "c0": 1.0},
        {"chart": "conformal", "base": {"chart": "euclidean", "n": 2},
         "f": "(mul 0.1 (add z1 zbar1))"},
        {"chart": "inline", "n": 2,
         "g": [["(add 1 (mul z1 zbar1))", "0"], ["0", "1"]]},
    ]
    for spec in specs:
        chart = gd.make_chart(spec)
        p = gd.sample_points(chart, 1, 3)[0]
        metric_values(chart, p)


def test_make_chart_admissible_matches_constructor(adm, adm_spec):
    chart = gd.make_chart({"chart": "admissible", "n": 2, "a": 0.5,
                           "multipliers": [[0.5, 0], [0.5, 0]],
                           "A": [[[0.2, 0], [0, 0]], [[0, 0], [0.1, 0]]]})
    p = [0.7, 0.2 - 0.1j]
    np.testing.assert_allclose(metric_values(chart, p), metric_values(adm, p),
                               atol=1e-15)


@pytest.mark.parametrize("bad", [
    {"chart": "nope"},
    {"chart": "conformal", "base": {"chart": "euclidean", "n": 2}},
    {"chart": "inline", "n": 2},
    "euclidean",
])
def test_make_chart_rejects_bad_specs(bad):
    with pytest.raises(InvalidSpec):
        gd.make_chart(bad)


# ---------------------------------------------------------------------------
# validate_admissible


def test_validate_admissible_valid(adm_spec):
    assert gd.validate_admissible(adm_spec) == []


def test_validate_spectral_bound_violation():
    spec = gd.hopf_spec(2, 0.5, A=[[0.6, 0], [0, 0]])
    out = gd.validate_admissible(spec)
    assert any("spectral bound" in v and "0.36" in v for v in out)


def test_validate_equivariance_violation():
    spec = gd.hopf_spec(2, 0.5, multipliers=(0.5j, 0.5), A=[[0.2, 0], [0, 0]])
    out = gd.validate_admissible(spec)
    assert any("equivariance" in v for v in out)
    # the actual defect: (a_1)^2 0.2 = -0.05 vs a^2 0.2 = +0.05
    D = np.diag(spec.mult_vector())
    A = spec.matrix()
    assert (D @ A @ D)[0, 0] == pytest.approx(-0.05)
    assert (0.25 * A)[0, 0] == pytest.approx(0.05)


def test_validate_modulus_and_symmetry():
    assert any("modulus" in v for v in
               gd.validate_admissible(gd.hopf_spec(2, 1.5)))
    bad_sym = gd.hopf_spec(2, 0.5, A=[[0.0, 0.1], [0.0, 0.0]])
    assert any("symmetry" in v for v in gd.validate_admissible(bad_sym))


def test_admissible_chart_rejects_invalid():
    with pytest.raises(InvalidSpec):
        gd.admissible_chart(gd.hopf_spec(2, 0.5, A=[[0.6, 0], [0, 0]]))


def test_xi_equivariance_under_deck_map(adm_spec):
    """sigma^* xi_A = a^2 xi_A on samples (the chart-level deck relation)."""
    xi = gd.xi_field(adm_spec)
    mult = adm_spec.mult_vector()
    rng = np.random.default_rng(4)
    for _ in range(20):
        p = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        assert xi(mult * p) == pytest.approx(adm_spec.a ** 2 * xi(p), rel=1e-12)


# ---------------------------------------------------------------------------
# admissible_hsc_reference


def test_hsc_reference_zero_matrix():
    spec = gd.hopf_spec(2, 0.5)
    assert gd.admissible_hsc_reference(spec, [0.7, 0.2 + 0.1j]) == 0.0


def test_hsc_reference_pinned_value(adm_spec):
    assert gd.admissible_hsc_reference(adm_spec, [1, 0]) == pytest.approx(-0.4)


def test_hsc_reference_real_and_finite(adm_spec):
    rng = np.random.default_rng(5)
    for _ in range(100):
        p = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        v = gd.admissible_hsc_reference(adm_spec, p)
        assert isinstance(v, float) and np.isfinite(v)


def test_hsc_reference_nonconstant_for_nonzero_A(adm_spec, adm):
    vals = [gd.admissible_hsc_reference(adm_spec, p) for p in pts_of(adm, 200, 6)]
    assert max(vals) - min(vals) > 1e-3


def test_hsc_reference_scales_with_c0():
    spec1 = gd.hopf_spec(2, 0.5, A=[[0.2, 0], [0, 0.1]])
    spec2 = gd.hopf_spec(2, 0.5, A=[[0.2, 0], [0, 0.1]], c0=2.0)
    assert gd.admissible_hsc_reference(spec2, [1, 0]) == pytest.approx(
        0.5 * gd.admissible_hsc_reference(spec1, [1, 0]))


# ---------------------------------------------------------------------------
# hopf_t3_reference


def test_t3_reference_pinned_values():
    R = gd.hopf_t3_reference([0, 1]).R
    assert R[0, 0, 1, 1] == pytest.approx(4.0)
    assert R[1, 1, 0, 0] == pytest.approx(0.0)
    assert R[0, 1, 0, 1] == pytest.approx(0.0)
    R10 = gd.hopf_t3_reference([1, 0]).R
    assert R10[0, 0, 1, 1] == pytest.approx(0.0)   # 3 - 3


def test_t3_reference_zero_point_raises():
    with pytest.raises(ZeroPoint):
        gd.hopf_t3_reference([0, 0])


def test_t3_reference_constancy(hopf):
    for p in pts_of(hopf, 50, 7):
        c, res = gd.constancy_residual(gd.hopf_t3_reference(p))
        assert abs(c) < 1e-12 and res < 1e-12


def test_t3_reference_matches_direct(hopf):
    for p in pts_of(hopf, 50, 8):
        d = maxabs(gd.gauduchon_curvature(hopf, 3.0, p).R
                   - gd.hopf_t3_reference(p).R)
        assert d < 1e-8


def test_t3_reference_general_dimension():
    hopf3 = gd.hopf_chart(3)
    for p in pts_of(hopf3, 5, 9):
        d = maxabs(gd.gauduchon_curvature(hopf3, 3.0, p).R
                   - gd.hopf_t3_reference(p).R)
        assert d < 1e-8


# ---------------------------------------------------------------------------
# circle_residual


@pytest.mark.parametrize("t,s,expected", [
    (-1.0, 0.0, 0.0), (3.0, 0.0, 0.0), (-1.0, 2.0, 0.0),
    (1.0, 0.0, -4.0), (0.0, 0.0, -3.0),
])
def test_circle_residual_values(t, s, expected):
    assert gd.circle_residual(t, s) == pytest.approx(expected)


def test_circle_residual_sqrt3():
    assert gd.circle_residual(0.0, np.sqrt(3.0)) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("t", [-2.0, 0.0, 1.0, 5.0])
def test_levi_civita_always_off_circle(t):
    assert gd.circle_residual(t, 1.0) == pytest.approx(-2.0)


# ---------------------------------------------------------------------------
# circle law on the admissible chart


def test_circle_params_match_reference(adm, adm_spec):
    pts = pts_of(adm, 50, 10)
    for ts in [(-1.0, 0.0), (3.0, 0.0), (-1.0, 2.0), (0.0, np.sqrt(3.0))]:
        assert abs(gd.circle_residual(*ts)) < 1e-12
        for p in pts:
            c, res = gd.constancy_residual(gd.canonical_curvature(adm, ts, p))
            assert res < 1e-7
            assert c == pytest.approx(gd.admissible_hsc_reference(adm_spec, p),
                                      abs=1e-7)


@pytest.mark.parametrize("spec_kwargs", [
    # non-diagonal symmetric A, equal real multipliers
    dict(A=[[0.15, 0.1], [0.1, -0.05]]),
    # sign-flipped multiplier: a_1 a_1 = a^2 still holds for diagonal A
    dict(multipliers=(-0.5, 0.5), A=[[0.2, 0], [0, 0.1]]),
    # complex phase pair: a_1 a_1 = (0.5i)^2 = -0.25 needs A_11 = 0
    dict(multipliers=(0.5j, 0.5), A=[[0.0, 0], [0, 0.1]]),
])
def test_circle_law_generalizes_over_specs(spec_kwargs):
    spec = gd.hopf_spec(2, 0.5, **spec_kwargs)
    assert gd.validate_admissible(spec) == []
    chart = gd.admissible_chart(spec)
    pts = pts_of(chart, 10, 13)
    for ts in [(-1.0, 0.0), (3.0, 0.0), (-1.0, 2.0)]:
        for p in pts:
            c, res = gd.constancy_residual(gd.canonical_curvature(chart, ts, p))
            assert res < 1e-7
            assert c == pytest.approx(gd.admissible_hsc_reference(spec, p),
                                      abs=1e-7)


def test_off_circle_params_fail_constancy(adm):
    pts = pts_of(adm, 20, 11)
    for ts in [(1.0, 0.0), (0.0, 0.0), (2.0, 1.0)]:
        worst = max(gd.constancy_residual(gd.canonical_curvature(adm, ts, p))[1]
                    for p in pts)
        assert worst > 1e-3, ts


def test_sampler_respects_safe_regions(catalog_charts):
    for chart in catalog_charts:
        for p in pts_of(chart, 100, 12):
            r = np.linalg.norm(p)
            if chart.label.startswith(("hopf", "admissible")):
                assert 0.55 - 1e-12 <= r <= 0.95 + 1e-12
            if chart.label.startswith("complex_hyperbolic"):
                assert r <= 0.9 + 1e-12
            if chart.label == "fs_bergman":
                assert abs(p[0]) <= 0.9 + 1e-12

import numpy as np
import pytest

import gauduchon as gd


@pytest.fixture(scope="session")
def flat():
    return gd.euclidean_chart(2)


@pytest.fixture(scope="session")
def hopf():
    return gd.hopf_chart(2)


@pytest.fixture(scope="session")
def fsb():
    return gd.fs_bergman_chart()


@pytest.fixture(scope="session")
def fs():
    return gd.fubini_study_chart(2)


@pytest.fixture(scope="session")
def chyp():
    return gd.complex_hyperbolic_chart(2)


@pytest.fixture(scope="session")
def adm_spec():
    return gd.hopf_spec(2, 0.5, A=[[0.2, 0.0], [0.0, 0.1]])


@pytest.fixture(scope="session")
def adm(adm_spec):
    return gd.admissible_chart(adm_spec)


@pytest.fixture(scope="session")
def kahler_charts(flat, fs, fsb, chyp):
    return [flat, fs, fsb, chyp]


@pytest.fixture(scope="session")
def catalog_charts(flat, hopf, adm, fs, fsb, chyp):
    return [flat, hopf, adm, fs, fsb, chyp]


@pytest.fixture(scope="session")
def non_selfdual():
    """Kaehler product of curvatures -1 and +1/2: not conformally flat, not
    constant-HSC, hence W_- != 0 (the negative control for self-duality)."""
    g11 = gd.const(2.0) / (gd.const(1.0) - gd.z(0) * gd.zbar(0)) ** 2
    g22 = gd.const(4.0) / (gd.const(1.0) + gd.z(1) * gd.zbar(1)) ** 2
    zero = gd.const(0.0)
    return gd.inline_chart(2, [[g11, zero], [zero, g22]], label="unbalanced_product")


def pts_of(chart, count, seed):
    return gd.sample_points(chart, count, np.random.default_rng(seed))

import warnings

import numpy as np
import pytest
from numpy.testing import assert_allclose

from centerlab.lib.datagen import TwoBlockSpec, gen_two_block
from centerlab.lib.decomposition import pearson_correlation
from centerlab.lib.errors import BoundsError, DimensionError, InvalidInputError, PartialModelWarning
from centerlab.lib.integration import (
    PlsMethod,
    TwoBlockData,
    abs_cosine,
    cross_covariance,
    fit_pls,
    pls_sequential,
    pls_svd,
)
from centerlab.lib.matrix import CenteringKind, center


def centered_unit(rng, size):
    v = rng.standard_normal(size)
    v -= v.mean()
    return v / np.linalg.norm(v)


@pytest.fixture
def blocks(rng):
    return TwoBlockData(rng.standard_normal((12, 30)), rng.standard_normal((8, 30)))


@pytest.fixture(scope="module")
def planted():
    return gen_two_block(TwoBlockSpec(seed=1))


def test_cross_covariance_examples():
    C = cross_covariance(TwoBlockData([[-1.0, 0.0, 1.0]], [[-2.0, 0.0, 2.0]]))
    assert_allclose(C, [[4.0 / 3.0]])

    constant = TwoBlockData([[1.0, 5.0, 2.0]], [[3.0, 3.0, 3.0], [1.0, 1.0, 1.0]])
    assert not cross_covariance(constant).any()


def test_cross_covariance_of_a_block_with_itself(rng):
    X = rng.standard_normal((5, 40)) + 2.0
    XO = center(X, CenteringKind.OBJECT).values
    assert_allclose(cross_covariance(TwoBlockData(X, X)), XO @ XO.T / 40, atol=1e-13)


def test_blocks_must_share_objects(rng):
    with pytest.raises(DimensionError):
        TwoBlockData(rng.standard_normal((3, 10)), rng.standard_normal((3, 11)))
    with pytest.raises(DimensionError):
        cross_covariance(TwoBlockData([[1.0]], [[2.0]]))


def test_trait_centering_is_rejected(blocks):
    for method in PlsMethod:
        with pytest.raises(InvalidInputError) as info:
            fit_pls(blocks, 1, CenteringKind.TRAIT, method)
        assert info.value.pointer == "/centering"


def test_svd_pls_recovers_rank_one_signal(rng):
    a, b, s = centered_unit(rng, 50), centered_unit(rng, 40), centered_unit(rng, 100)
    X1 = 100 * np.outer(a, s) + rng.standard_normal((50, 100))
    X2 = 100 * np.outer(b, s) + rng.standard_normal((40, 100))
    model = pls_svd(TwoBlockData(X1, X2), 1)
    assert abs_cosine(model.w1[:, 0], a) >= 0.95
    assert abs_cosine(model.w2[:, 0], b) >= 0.95


def test_svd_pls_with_identical_blocks(rng):
    X = rng.standard_normal((6, 50))
    model = pls_svd(TwoBlockData(X, X), 1, CenteringKind.OBJECT)
    assert_allclose(model.w1, model.w2, atol=1e-10)
    XO = center(X, CenteringKind.OBJECT).values
    _, vecs = np.linalg.eigh(XO @ XO.T / 50)
    assert abs_cosine(model.w1[:, 0], vecs[:, -1]) == pytest.approx(1.0, abs=1e-10)


def test_svd_pls_invariants(blocks):
    model = pls_svd(blocks, 4, CenteringKind.DOUBLE)
    assert np.all(np.diff(model.covariances) <= 1e-12)
    assert_allclose(model.w1.T @ model.w1, np.eye(4), atol=1e-12)
    # con doble centrado los pesos de cada bloque están incorrelados
    for W in (model.w1, model.w2):
        for i in range(4):
            for j in range(i + 1, 4):
                assert abs(pearson_correlation(W[:, i], W[:, j])) <= 1e-10
    with pytest.raises(BoundsError):
        pls_svd(blocks, 9)


@pytest.mark.parametrize("centering", [CenteringKind.OBJECT, CenteringKind.DOUBLE])
def test_sequential_first_component_matches_svd(blocks, centering):
    a = pls_svd(blocks, 1, centering)
    b = pls_sequential(blocks, 1, centering)
    for name in ("w1", "w2", "t1", "t2"):
        assert_allclose(getattr(a, name), getattr(b, name), atol=1e-12)
    assert b.covariances[0] == pytest.approx(a.covariances[0])


@pytest.mark.parametrize("centering", [CenteringKind.OBJECT, CenteringKind.DOUBLE])
def test_sequential_scores_are_orthogonal_and_centered(blocks, centering):
    model = pls_sequential(blocks, 4, centering)
    assert model.n_components == 4
    for T in (model.t1, model.t2):
        G = T.T @ T
        assert_allclose(G - np.diag(np.diag(G)), 0.0, atol=1e-10)
        assert_allclose(T.mean(axis=0), 0.0, atol=1e-12)


def test_sequential_loadings_are_not_orthogonal(blocks):
    model = pls_sequential(blocks, 3, CenteringKind.DOUBLE)
    G = model.p1.T @ model.p1
    assert np.abs(G - np.diag(np.diag(G))).max() > 1e-6


def test_sequential_stops_early_with_warning(rng):
    a, s = centered_unit(rng, 10), centered_unit(rng, 25)
    blocks = TwoBlockData(5 * np.outer(a, s), rng.standard_normal((7, 25)))
    with pytest.warns(PartialModelWarning):
        model = pls_sequential(blocks, 3, CenteringKind.DOUBLE)
    assert model.n_components == 1


def test_sequential_on_null_cross_covariance():
    blocks = TwoBlockData([[1.0, 2.0, 3.0]], [[4.0, 4.0, 4.0]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PartialModelWarning)
        with pytest.raises(BoundsError):
            pls_sequential(blocks, 1, CenteringKind.OBJECT)


def test_planted_shapes(planted):
    data, truth = planted
    assert data.X1.shape == (300, 200)
    assert data.X2.shape == (500, 200)
    assert truth.loadings1.shape == (300, 2)
    assert truth.scores.shape == (200, 2)


def test_object_centering_is_dominated_by_trait_mean_gradient(planted):
    data, truth = planted
    model = pls_sequential(data, 2, CenteringKind.OBJECT)
    assert abs_cosine(model.w2[:, 0], truth.gradient_direction) >= 0.9


@pytest.mark.parametrize("method", list(PlsMethod))
def test_double_centering_recovers_planted_signal(planted, method):
    data, truth = planted
    model = fit_pls(data, 2, CenteringKind.DOUBLE, method)
    for k in range(2):
        assert abs_cosine(model.w1[:, k], truth.loadings1[:, k]) >= 0.9
        assert abs_cosine(model.w2[:, k], truth.loadings2[:, k]) >= 0.9


def test_noise_free_planted_recovery_is_exact():
    spec = TwoBlockSpec(noise=0.0, x1_step=0.0, x2_object_mean=0.0, x2_gradient=0.0, seed=0)
    data, truth = gen_two_block(spec)
    model = pls_svd(data, 2, CenteringKind.DOUBLE)
    for k in range(2):
        assert abs_cosine(model.w1[:, k], truth.loadings1[:, k]) >= 1 - 1e-8
        assert abs_cosine(model.w2[:, k], truth.loadings2[:, k]) >= 1 - 1e-8


def test_model_frames(blocks):
    frames = pls_svd(blocks, 2).to_frames()
    assert list(frames["block1_loadings"].columns) == ["w1", "w2", "p1", "p2"]
    assert frames["block2_scores"].shape == (30, 2)
    assert list(frames["covariances"]["component"]) == [1, 2]

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from scipy.integrate import trapezoid

from centerlab.lib.datagen import gen_gaussian
from centerlab.lib.decomposition import svd_modes
from centerlab.lib.diagnostics import (
    column_space_basis,
    constant_direction,
    direction_energy,
    energy_breakdown,
    energy_test,
    sample_null_directions,
    smooth_histogram,
)
from centerlab.lib.errors import (
    BoundsError,
    DegenerateInputError,
    InvalidInputError,
    UndefinedProportionError,
)
from centerlab.lib.matrix import CenteringKind, center


def planted_constant(rng, share: float, d: int = 50, n: int = 40) -> np.ndarray:
    """X_D más un efecto de medias de objeto cuya energía es `share` de ‖X_O‖²."""
    XD = center(rng.standard_normal((d, n)), CenteringKind.DOUBLE).values
    mu = rng.standard_normal(n)
    mu -= mu.mean()
    effect = np.outer(np.ones(d), mu)
    c = np.sqrt(share / (1 - share) * np.sum(XD ** 2) / np.sum(effect ** 2))
    return XD + c * effect


class TestDirections:

    def test_constant_direction(self):
        assert_allclose(constant_direction(4), [0.5, 0.5, 0.5, 0.5])
        assert_allclose(constant_direction(1), [1.0])
        with pytest.raises(BoundsError):
            constant_direction(0)

    @pytest.mark.parametrize("d", [2, 17, 1000, 10_000, 10 ** 6])
    def test_constant_direction_is_unit(self, d):
        u = constant_direction(d)
        # suma exacta: np.linalg.norm acumula redondeo con d
        assert abs(math.sqrt(math.fsum(u * u)) - 1.0) <= 1e-15

    def test_direction_energy_examples(self):
        XO = [[-1.0, 0.0, 1.0], [-1.0, 0.0, 1.0]]
        assert direction_energy(XO, constant_direction(2)) == pytest.approx(1.0)
        assert direction_energy(XO, np.array([1.0, -1.0]) / np.sqrt(2)) == pytest.approx(0.0, abs=1e-15)

    def test_first_loading_gets_first_share(self, gaussian):
        XO = center(gaussian, CenteringKind.OBJECT)
        modes = svd_modes(gaussian, CenteringKind.OBJECT)
        share = modes.energy_shares().proportions[0]
        assert direction_energy(XO, modes.loadings[:, 0]) == pytest.approx(share, rel=1e-12)

    def test_direction_energy_errors(self, gaussian):
        with pytest.raises(UndefinedProportionError):
            direction_energy(np.zeros((2, 3)), constant_direction(2))
        with pytest.raises(InvalidInputError):
            direction_energy(gaussian, np.ones(10))
        with pytest.raises(InvalidInputError):
            direction_energy(gaussian, constant_direction(9))

    def test_null_directions_rank_one(self, rng):
        a = rng.standard_normal(6)
        XO = np.outer(a, [-1.0, 0.5, 0.5])
        dirs = sample_null_directions(XO, 50, seed=1)
        a_hat = a / np.linalg.norm(a)
        assert_allclose(np.abs(dirs @ a_hat), 1.0, atol=1e-12)

    def test_null_directions_live_in_span_and_are_symmetric(self, rng):
        XO = center(rng.standard_normal((30, 12)), CenteringKind.OBJECT)
        B = 4000
        dirs = sample_null_directions(XO, B, seed=11)
        basis = column_space_basis(XO)
        assert_allclose(np.linalg.norm(dirs, axis=1), 1.0, atol=1e-12)
        coords = dirs @ basis
        # sin componente fuera del espacio de columnas
        assert_allclose(np.linalg.norm(coords, axis=1), 1.0, atol=1e-10)
        assert np.linalg.norm(coords.mean(axis=0)) <= 4 / np.sqrt(B)

    def test_null_directions_are_seeded(self, gaussian):
        XO = center(gaussian, CenteringKind.OBJECT)
        assert_array_equal(sample_null_directions(XO, 20, seed=5), sample_null_directions(XO, 20, seed=5))
        with pytest.raises(BoundsError):
            sample_null_directions(XO, 0)


class TestEnergyTest:

    def test_double_centered_input_has_no_constant_energy(self, gaussian):
        result = energy_test(center(gaussian, CenteringKind.DOUBLE), B=200, seed=0)
        assert result.observed == pytest.approx(0.0, abs=1e-12)
        assert result.reject is False
        assert result.p_value == pytest.approx(1.0)

    def test_planted_constant_effect_is_detected(self, rng):
        result = energy_test(planted_constant(rng, 0.4), B=500, seed=2)
        assert result.observed == pytest.approx(0.4, rel=1e-10)
        assert result.reject is True
        assert result.p_value == pytest.approx(1 / 501)
        assert 0.0 <= result.in_span_fraction <= 1.0 + 1e-12

    def test_result_fields(self, gaussian):
        result = energy_test(gaussian, B=300, seed=4, threshold=0.9)
        assert result.B == 300
        assert np.all((result.null_samples >= 0) & (result.null_samples <= 1))
        assert result.threshold_value == pytest.approx(np.quantile(result.null_samples, 0.9))
        expected_p = (1 + np.sum(result.null_samples >= result.observed)) / 301
        assert result.p_value == pytest.approx(expected_p)
        assert result.reject == (result.observed > result.threshold_value)

    def test_deterministic_and_independent_of_jobs(self, gaussian):
        a = energy_test(gaussian, B=300, seed=7)
        b = energy_test(gaussian, B=300, seed=7, n_jobs=2)
        assert_allclose(a.null_samples, b.null_samples, rtol=1e-14)
        assert (a.p_value, a.reject) == (b.p_value, b.reject)

    def test_json_can_omit_null(self, gaussian):
        out = energy_test(gaussian, B=10, seed=1).to_json(include_null=False)
        assert "null_samples" not in out
        assert out["B"] == 10

    def test_errors(self, gaussian):
        constant_rows = np.outer(np.arange(5.0), np.ones(8))
        with pytest.raises(DegenerateInputError):
            energy_test(constant_rows, B=10, seed=0)
        with pytest.raises(BoundsError):
            energy_test(gaussian, threshold=1.0)

    def test_monotone_along_constant_ray(self, rng):
        X = rng.standard_normal((20, 15))
        # el rayo apunta en el sentido del propio modo constante de X
        mu = X.sum(axis=0)
        observed = [
            energy_test(X + c * np.outer(np.ones(20), mu), B=5, seed=0).observed
            for c in (0.0, 0.5, 1.0, 2.0, 5.0)
        ]
        assert np.all(np.diff(observed) >= -1e-12)

    @pytest.mark.slow
    def test_size_under_gaussian_null(self):
        rejections = sum(
            energy_test(gen_gaussian(100, 100, seed=s), B=250, seed=1000 + s).reject
            for s in range(200)
        )
        assert 0 <= rejections / 200 <= 0.12

    @pytest.mark.slow
    def test_power_against_planted_constant_effect(self):
        rejections = 0
        for s in range(100):
            rng = np.random.default_rng(5000 + s)
            rejections += energy_test(planted_constant(rng, 0.3), B=250, seed=s).reject
        assert rejections >= 99


class TestEnergyBreakdown:

    def test_double_centered_input(self, gaussian):
        XD = center(gaussian, CenteringKind.DOUBLE)
        result = energy_breakdown(XD, 3)
        assert result.constant_direction_share == pytest.approx(0.0, abs=1e-14)
        assert_allclose(result.object_centered_shares, result.double_centered_shares, atol=1e-12)

    def test_pythagorean_accounting(self, gaussian):
        result = energy_breakdown(gaussian, 9)
        total = result.constant_direction_share + result.double_centered_shares.sum()
        assert total == pytest.approx(1.0, abs=1e-8)
        assert result.double_centered_residual == pytest.approx(0.0, abs=1e-8)

    def test_constant_share_grows_with_effect(self, rng):
        shares = [energy_breakdown(planted_constant(rng, s), 2).constant_direction_share for s in (0.2, 0.6, 0.95)]
        assert_allclose(shares, [0.2, 0.6, 0.95], rtol=1e-10)

    def test_drop_accounts_for_constant_share(self, rng):
        result = energy_breakdown(planted_constant(rng, 0.9), 3)
        assert result.first_component_drop > 0
        assert 0.8 < result.drop_fraction_of_constant < 1.05
        assert set(result.to_json()) >= {"object_centered_shares", "constant_direction_share", "drop_fraction_of_constant"}

    def test_bounds(self, gaussian):
        with pytest.raises(BoundsError):
            energy_breakdown(gaussian, 0)
        with pytest.raises(BoundsError):
            energy_breakdown(gaussian, 11)


def test_smooth_histogram(rng):
    samples = rng.standard_normal(500)
    grid, dens = smooth_histogram(samples)
    assert grid.shape == dens.shape == (256,)
    assert trapezoid(dens, grid) == pytest.approx(1.0, abs=0.02)

    grid, dens = smooth_histogram(np.full(10, 0.3))
    assert not dens.any()
    with pytest.raises(InvalidInputError):
        smooth_histogram([])

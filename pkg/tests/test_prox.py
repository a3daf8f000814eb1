import math

import numpy as np
import pytest

import polarpcp.hypermatrix as hm
from polarpcp import (
    COMPLEX,
    REAL,
    GroupedVector,
    HyperMatrix,
    TubeTransform,
    group_soft_threshold,
    prox_l1,
    prox_trace,
    singular_moduli,
    soft_threshold_real,
)

from helpers import random_hypermatrix


class TestSoftThresholdReal:
    def test_values(self):
        assert soft_threshold_real(0.5, 1.0) == 0.0
        assert soft_threshold_real(2.0, 1.0) == 1.0
        assert soft_threshold_real(-3.0, 1.0) == -2.0

    def test_vectorized(self):
        x = np.array([-2.0, -0.5, 0.0, 0.5, 2.0])
        assert np.array_equal(soft_threshold_real(x, 1.0), [-1.0, 0.0, 0.0, 0.0, 1.0])

    def test_negative_threshold(self):
        with pytest.raises(ValueError):
            soft_threshold_real(1.0, -0.1)


class TestGroupSoftThreshold:
    def test_small_group_zeroed(self):
        gv = GroupedVector(np.array([0.3, 0.4, 3.0, 4.0]), np.array([0, 2]))
        out = group_soft_threshold(gv, 1.0)
        assert np.array_equal(out.values[:2], [0.0, 0.0])       # norm 0.5 <= 1
        assert np.allclose(out.values[2:], [3.0 * 0.8, 4.0 * 0.8])

    def test_zero_threshold_is_identity(self):
        rng = np.random.default_rng(0)
        gv = GroupedVector(rng.standard_normal(10), np.array([0, 3, 7]))
        out = group_soft_threshold(gv, 0.0)
        assert np.array_equal(out.values, gv.values)

    def test_zero_group_maps_to_zero(self):
        gv = GroupedVector(np.zeros(4), np.array([0, 2]))
        out = group_soft_threshold(gv, 0.5)
        assert np.array_equal(out.values, np.zeros(4))

    def test_singleton_groups_match_soft_threshold(self):
        xs = np.linspace(-3.0, 3.0, 25)
        gv = GroupedVector(xs, np.arange(25))
        out = group_soft_threshold(gv, 1.0)
        assert np.allclose(out.values, soft_threshold_real(xs, 1.0), atol=1e-15)

    def test_negative_threshold(self):
        gv = GroupedVector(np.ones(2), np.array([0]))
        with pytest.raises(ValueError):
            group_soft_threshold(gv, -1.0)

    def test_partition_validation(self):
        with pytest.raises(ValueError):
            GroupedVector(np.ones(4), np.array([1, 2]))
        with pytest.raises(ValueError):
            GroupedVector(np.ones(4), np.array([0, 4]))
        with pytest.raises(ValueError):
            GroupedVector(np.ones(4), np.array([0, 2, 2]))


def _xi_grouped(Z):
    """Gather each entry's components contiguously, in slab order."""
    lm = Z.l * Z.m
    flat = np.ascontiguousarray(Z.data.reshape(lm, Z.n))
    comps = flat if Z.field == REAL else flat.view(np.float64)
    return GroupedVector(comps.ravel().copy(), np.arange(lm) * comps.shape[1])


class TestProxL1:
    def test_bicomplex_half_shrink(self):
        g = np.array([[[1 + 2j, 3 + 4j, 5 + 6j]]])
        Z = HyperMatrix(g)
        out = prox_l1(Z, math.sqrt(91) / 2)
        expected = np.array([[[0.5 + 1j, 1.5 + 2j, 2.5 + 3j]]])
        assert np.allclose(out.data, expected, atol=1e-12)

    def test_below_threshold_zeroes_entry(self):
        rng = np.random.default_rng(1)
        Z = random_hypermatrix(rng, 3, 3, 4, COMPLEX)
        mods = np.sqrt((np.abs(Z.data) ** 2).sum(axis=2))
        out = prox_l1(Z, mods.max() + 1.0)
        assert np.abs(out.data).max() == 0.0

    def test_n1_real_matches_scalar_soft_threshold(self):
        xs = np.linspace(-2.0, 2.0, 9).reshape(3, 3, 1)
        out = prox_l1(HyperMatrix(xs), 0.75)
        assert np.allclose(out.data, soft_threshold_real(xs, 0.75), atol=1e-15)

    @pytest.mark.parametrize("field", [REAL, COMPLEX])
    def test_bitwise_equals_grouped_threshold(self, field):
        rng = np.random.default_rng(2)
        Z = random_hypermatrix(rng, 4, 3, 3, field)
        lam = 1.3
        out = prox_l1(Z, lam)
        grouped = group_soft_threshold(_xi_grouped(Z), lam)
        got = _xi_grouped(out).values
        assert got.tobytes() == grouped.values.tobytes()

    def test_phase_preservation(self):
        rng = np.random.default_rng(3)
        Z = random_hypermatrix(rng, 4, 4, 3, COMPLEX)
        out = prox_l1(Z, 0.8)
        for i in range(4):
            for k in range(4):
                z = Z.data[i, k]
                x = out.data[i, k]
                if np.abs(x).max() == 0:
                    continue
                ratio = x / z  # collinear tubes: constant nonnegative real ratio
                assert np.abs(ratio - ratio[0]).max() <= 1e-12
                assert ratio[0].real > 0 and abs(ratio[0].imag) <= 1e-15

    def test_nonexpansive(self):
        rng = np.random.default_rng(4)
        for field in (REAL, COMPLEX):
            Z1 = random_hypermatrix(rng, 5, 4, 3, field)
            Z2 = random_hypermatrix(rng, 5, 4, 3, field)
            d_out = hm.frobenius(prox_l1(Z1, 0.7) - prox_l1(Z2, 0.7))
            assert d_out <= hm.frobenius(Z1 - Z2) + 1e-10

    def test_negative_threshold(self):
        with pytest.raises(ValueError):
            prox_l1(HyperMatrix.zeros(1, 1, 2), -1.0)


class TestProxTrace:
    def test_zero_threshold_identity(self):
        rng = np.random.default_rng(5)
        Z = random_hypermatrix(rng, 4, 3, 3, COMPLEX)
        out = prox_trace(Z, 0.0)
        assert np.abs(out.data - Z.data).max() <= 1e-12

    def test_n1_matches_singular_value_thresholding(self):
        rng = np.random.default_rng(6)
        Z = random_hypermatrix(rng, 5, 4, 1, REAL)
        lam = 0.9
        out = prox_trace(Z, lam)
        U, s, Vh = np.linalg.svd(Z.data[:, :, 0], full_matrices=False)
        svt = (U * np.maximum(s - lam, 0.0)) @ Vh
        assert np.abs(out.data[:, :, 0] - svt).max() <= 1e-12

    def test_singular_modulus_shrinkage(self):
        rng = np.random.default_rng(7)
        for field in (REAL, COMPLEX):
            Z = random_hypermatrix(rng, 6, 4, 3, field)
            lam = 0.6 * singular_moduli(Z).max()
            out = prox_trace(Z, lam)
            got = singular_moduli(out)
            expected = np.maximum(singular_moduli(Z) - lam, 0.0)
            assert np.abs(got - expected).max() <= 1e-8

    def test_local_optimality_by_sampling(self):
        rng = np.random.default_rng(8)
        Z = random_hypermatrix(rng, 4, 3, 3, REAL)
        lam = 0.5
        X = prox_trace(Z, lam)

        def objective(M):
            return 0.5 * hm.frobenius(Z - M) ** 2 + lam * singular_moduli(M).sum()

        base = objective(X)
        for _ in range(200):
            step = 10.0 ** rng.uniform(-4, -1)
            P = random_hypermatrix(rng, 4, 3, 3, REAL)
            assert base <= objective(X + P * (step / hm.frobenius(P))) + 1e-12

    def test_nonexpansive(self):
        rng = np.random.default_rng(9)
        Z1 = random_hypermatrix(rng, 5, 4, 2, COMPLEX)
        Z2 = random_hypermatrix(rng, 5, 4, 2, COMPLEX)
        d_out = hm.frobenius(prox_trace(Z1, 0.8) - prox_trace(Z2, 0.8))
        assert d_out <= hm.frobenius(Z1 - Z2) + 1e-10

    def test_alternate_transform(self):
        rng = np.random.default_rng(10)
        Z = random_hypermatrix(rng, 4, 4, 4, COMPLEX)
        T = TubeTransform.skew_dft(4)
        out = prox_trace(Z, 0.4, T)
        got = singular_moduli(out, T)
        expected = np.maximum(singular_moduli(Z, T) - 0.4, 0.0)
        assert np.abs(got - expected).max() <= 1e-8

    def test_negative_threshold(self):
        with pytest.raises(ValueError):
            prox_trace(HyperMatrix.zeros(2, 2, 2), -0.5)

    def test_matches_prox_l1_on_1x1(self):
        # A 1x1 matrix has a single singular tube whose modulus equals the
        # entry modulus, so both proxes solve the same problem.
        rng = np.random.default_rng(11)
        Z = random_hypermatrix(rng, 1, 1, 3, COMPLEX)
        lam = 0.4 * hm.frobenius(Z)
        a = prox_trace(Z, lam)
        b = prox_l1(Z, lam)
        assert np.abs(a.data - b.data).max() <= 1e-12

import math

import numpy as np
import pytest

from reparam import matrix_maps as mm
from reparam._errors import DomainError, NotPositiveDefiniteError, ShapeError
from reparam.linalg import jacobi_eigh

LOG2 = math.log(2.0)


class TestDiag:
    def test_pair(self):
        M = mm.reals_to_diag(np.array([1.0, 2.0]))
        np.testing.assert_array_equal(M, [[1.0, 0.0], [0.0, 2.0]])
        np.testing.assert_array_equal(mm.diag_to_reals(M), [1.0, 2.0])

    def test_zero(self):
        np.testing.assert_array_equal(mm.reals_to_diag(np.zeros(3)), np.zeros((3, 3)))

    def test_bitwise_roundtrip(self):
        x = np.random.default_rng(0).normal(size=5)
        assert np.array_equal(mm.diag_to_reals(mm.reals_to_diag(x)), x)

    def test_rejects_off_diagonal(self):
        with pytest.raises(DomainError):
            mm.diag_to_reals(np.array([[1.0, 0.1], [0.1, 1.0]]))


class TestDiagPd:
    def test_zero_scale_one(self):
        np.testing.assert_allclose(
            mm.reals_to_diag_pd(np.array([0.0])), [[LOG2]], atol=1e-15
        )

    def test_zero_vector_scales(self):
        M = mm.reals_to_diag_pd(np.zeros(2), s=np.array([2.0, 4.0]))
        np.testing.assert_allclose(M, np.diag([2 * LOG2, 4 * LOG2]), atol=1e-14)

    def test_roundtrip(self):
        x = np.random.default_rng(1).normal(size=4)
        for s in (1.0, 0.1, np.array([0.5, 1.0, 1.5, 2.0])):
            M = mm.reals_to_diag_pd(x, s)
            np.testing.assert_allclose(mm.diag_pd_to_reals(M, s), x, atol=1e-9)

    def test_rejects_nonpositive_diag(self):
        with pytest.raises(DomainError):
            mm.diag_pd_to_reals(np.diag([1.0, -0.5]))


class TestSym:
    def test_pair_n2(self):
        M = mm.reals_to_sym(np.array([1.0, 2.0, 3.0]))
        np.testing.assert_array_equal(M, [[1.0, 2.0], [2.0, 3.0]])
        np.testing.assert_array_equal(mm.sym_to_reals(M), [1.0, 2.0, 3.0])

    def test_rejects_asymmetric(self):
        with pytest.raises(DomainError):
            mm.sym_to_reals(np.array([[1.0, 2.0], [2.5, 1.0]]))

    def test_bad_length(self):
        with pytest.raises(ShapeError):
            mm.reals_to_sym(np.arange(4.0))


class TestSpd:
    def test_paper_pair(self):
        x = np.array([1.5373, 1.9485, 0.1972, 0.8165, 1.5, -1.765])
        M = np.array([[3.0, 1.0, 1.5], [1.0, 2.5, -1.0], [1.5, -1.0, 2.0]])
        np.testing.assert_allclose(mm.reals_to_spd(x), M, atol=2e-3)
        np.testing.assert_allclose(mm.spd_to_reals(M), x, atol=2e-3)

    def test_zero_vector_n2(self):
        # forced evaluation: L = diag(ln2, ln2/sqrt(2))
        M = mm.reals_to_spd(np.zeros(3))
        np.testing.assert_allclose(
            M, np.diag([LOG2**2, LOG2**2 / 2.0]), atol=1e-15
        )

    def test_scale_equivariance(self):
        x = np.random.default_rng(2).normal(size=6)
        s = np.array([0.5, 2.0, 3.0])
        np.testing.assert_allclose(
            mm.reals_to_spd(x, s),
            mm.reals_to_spd(x) * np.sqrt(s)[:, None] * np.sqrt(s)[None, :],
            rtol=1e-13,
        )

    def test_output_is_spd(self):
        rng = np.random.default_rng(3)
        for n in (2, 4, 6):
            x = rng.normal(size=n * (n + 1) // 2) * 3.0
            M = mm.reals_to_spd(x)
            np.testing.assert_allclose(M, M.T, atol=1e-14)
            w, _ = jacobi_eigh(M)
            assert np.all(w > 0)

    def test_roundtrip_suite(self):
        rng = np.random.default_rng(4)
        for n in range(1, 9):
            for s in (1.0, 0.1, np.linspace(0.5, 2.0, n)):
                for _ in range(500):
                    x = rng.normal(size=n * (n + 1) // 2)
                    back = mm.spd_to_reals(mm.reals_to_spd(x, s), s)
                    assert np.max(np.abs(back - x)) <= 1e-7

    def test_rejects_not_pd(self):
        with pytest.raises(NotPositiveDefiniteError):
            mm.spd_to_reals(np.array([[1.0, 2.0], [2.0, 1.0]]))


class TestCorr:
    def test_zero_is_identity(self):
        for k, n in ((1, 2), (3, 3), (6, 4)):
            np.testing.assert_allclose(
                mm.reals_to_corr(np.zeros(k)), np.eye(n), atol=1e-15
            )

    def test_dim1(self):
        np.testing.assert_array_equal(mm.reals_to_corr(np.zeros(0)), [[1.0]])
        assert mm.corr_to_reals(np.array([[1.0]])).shape == (0,)

    def test_n2_closed_form(self):
        for t in (-1.5, 0.0, 0.4, 2.0):
            rho = math.sin(0.5 * math.pi * math.tanh(0.5 * t))
            M = mm.reals_to_corr(np.array([t]))
            assert M[0, 1] == pytest.approx(rho, abs=1e-12)
            assert M[1, 0] == M[0, 1]

    def test_unit_diagonal_and_pd(self):
        rng = np.random.default_rng(5)
        for n in (2, 3, 5):
            x = rng.normal(size=n * (n - 1) // 2) * 2.0
            M = mm.reals_to_corr(x)
            np.testing.assert_allclose(np.diag(M), 1.0, atol=1e-12)
            w, _ = jacobi_eigh(M)
            assert np.all(w > 0)
            assert np.max(np.abs(M)) <= 1.0 + 1e-12

    def test_roundtrip(self):
        rng = np.random.default_rng(6)
        for n in range(2, 9):
            for _ in range(500):
                x = rng.normal(size=n * (n - 1) // 2)
                back = mm.corr_to_reals(mm.reals_to_corr(x))
                assert np.max(np.abs(back - x)) <= 1e-7

    def test_rejects_bad_diagonal(self):
        with pytest.raises(DomainError):
            mm.corr_to_reals(np.array([[1.0, 0.2], [0.2, 1.1]]))


class TestBatching:
    def test_spd_batch_shape(self):
        rng = np.random.default_rng(7)
        x = rng.normal(size=(11, 6))
        M = mm.vectorize_trailing2(mm.reals_to_spd, x)
        assert M.shape == (11, 3, 3)
        np.testing.assert_array_equal(M[7], mm.reals_to_spd(x[7]))

    def test_single_unchanged(self):
        x = np.random.default_rng(8).normal(size=6)
        np.testing.assert_array_equal(
            mm.vectorize_trailing2(mm.reals_to_spd, x), mm.reals_to_spd(x)
        )

    def test_matrix_to_vector_batch(self):
        rng = np.random.default_rng(9)
        x = rng.normal(size=(4, 6))
        M = mm.vectorize_trailing2(mm.reals_to_spd, x)
        back = mm.vectorize_trailing2(mm.spd_to_reals, M, in_ndim=2)
        np.testing.assert_allclose(back, x, atol=1e-8)

    def test_shape_error_propagates(self):
        with pytest.raises(ShapeError):
            mm.vectorize_trailing2(mm.reals_to_spd, np.zeros((3, 4)))

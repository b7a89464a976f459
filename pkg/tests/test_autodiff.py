import math

import numpy as np
import pytest

from reparam import scalar_maps as sm
from reparam import vector_maps as vm
from reparam.autodiff import (
    DualScalar,
    HyperDualScalar,
    fd_gradient,
    gradient,
    hessian,
    jacobian,
    value_grad,
    value_grad_hess,
)


def rel_err(a, b):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return np.max(np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b))))


class TestDualScalar:
    def test_arithmetic(self):
        x = DualScalar(3.0, 1.0)
        y = x * x + 2.0 * x - 5.0
        assert y.value == 10.0
        assert y.deriv == 8.0

    def test_division(self):
        x = DualScalar(2.0, 1.0)
        y = 1.0 / x
        assert y.value == 0.5
        assert y.deriv == -0.25

    def test_chain_through_numpy_object_array(self):
        arr = np.array([DualScalar(0.5, 1.0), DualScalar(-1.0, 2.0)], dtype=object)
        out = np.exp(arr)
        assert out[0].deriv == pytest.approx(math.exp(0.5))
        assert out[1].deriv == pytest.approx(2.0 * math.exp(-1.0))

    def test_comparison_uses_value(self):
        assert DualScalar(1.0, -100.0) > 0.5
        assert abs(DualScalar(-2.0, 3.0)).value == 2.0

    def test_pow(self):
        y = DualScalar(4.0, 1.0) ** 0.5
        assert y.value == 2.0
        assert y.deriv == pytest.approx(0.25)


class TestHyperDualScalar:
    def test_second_derivative_of_square(self):
        x = HyperDualScalar(3.0, 1.0, 1.0, 0.0)
        y = x * x
        assert y.value == 9.0
        assert y.d1 == 6.0
        assert y.d12 == 2.0

    def test_mixed_partial(self):
        # f(a, b) = a*b has d2f/dadb = 1
        a = HyperDualScalar(2.0, 1.0, 0.0, 0.0)
        b = HyperDualScalar(5.0, 0.0, 1.0, 0.0)
        y = a * b
        assert y.d12 == 1.0

    def test_exp_second_derivative(self):
        x = HyperDualScalar(0.7, 1.0, 1.0, 0.0)
        y = np.exp(np.array([x], dtype=object))[0]
        assert y.d12 == pytest.approx(math.exp(0.7))


class TestGradient:
    def test_sum_of_squares(self):
        g = gradient(lambda t: np.sum(t * t), np.array([1.0, 2.0]))
        np.testing.assert_allclose(g, [2.0, 4.0], atol=1e-14)

    def test_softplus_at_zero(self):
        g = gradient(lambda t: sm.softplus(t[0]), np.array([0.0]))
        assert g[0] == pytest.approx(0.5)

    def test_simplex_component_vs_fd(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            theta = rng.normal(size=2)
            f = lambda t: vm.reals_to_simplex(t)[0]
            assert rel_err(gradient(f, theta), fd_gradient(f, theta)) < 1e-6


class TestHessian:
    def test_cubic_mixed(self):
        H = hessian(lambda t: t[0] ** 2 * t[1], np.array([1.0, 1.0]))
        np.testing.assert_allclose(H, [[2.0, 2.0], [2.0, 0.0]], atol=1e-12)

    def test_log1pexp_curvature_at_zero(self):
        H = hessian(lambda t: sm.log1pexp(t[0]), np.array([0.0]))
        assert H[0, 0] == pytest.approx(0.25)

    def test_symmetry(self):
        rng = np.random.default_rng(3)
        theta = rng.normal(size=4)
        f = lambda t: np.sum(np.exp(t) * np.roll(t, 1))
        H = hessian(f, theta)
        np.testing.assert_allclose(H, H.T, atol=1e-12)


class TestFdGradient:
    def test_linear_exact(self):
        c = np.array([2.0, -3.0, 0.5])
        g = fd_gradient(lambda t: float(np.dot(c, t)), np.zeros(3))
        np.testing.assert_allclose(g, c, atol=1e-9)

    def test_quadratic_near_exact(self):
        g = fd_gradient(lambda t: float(np.sum(t * t)), np.array([1.0, -2.0]))
        np.testing.assert_allclose(g, [2.0, -4.0], atol=1e-8)

    def test_agrees_with_dual_gradient(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            k = rng.integers(1, 5)
            a = rng.normal(size=k)
            b = rng.normal(size=k)
            theta = rng.normal(size=k)

            def f(t, a=a, b=b):
                return np.sum(np.exp(a * t) * np.sin(b + t)) + np.sum(t * t)

            assert rel_err(gradient(f, theta), fd_gradient(f, theta)) < 1e-6


class TestJacobian:
    def test_simplex_rows_sum_to_zero(self):
        # output lives on the simplex, so each input direction moves mass
        # around without changing the total
        J = jacobian(vm.reals_to_simplex, np.array([0.3, -0.8]))
        assert J.shape == (3, 2)
        np.testing.assert_allclose(J.sum(axis=0), 0.0, atol=1e-12)

    def test_matches_fd_columns(self):
        x = np.array([0.5, -1.2, 0.3])
        J = jacobian(vm.reals_to_sphere, x)
        h = 1e-6
        for j in range(3):
            e = np.zeros(3)
            e[j] = h
            col = (vm.reals_to_sphere(x + e) - vm.reals_to_sphere(x - e)) / (2 * h)
            np.testing.assert_allclose(J[:, j], col, atol=1e-7)


class TestValueGrad:
    def test_value_grad_consistent(self):
        f = lambda t: np.sum(np.exp(t)) + t[0] * t[1]
        theta = np.array([0.2, -0.4, 1.1])
        v, g = value_grad(f, theta)
        assert v == pytest.approx(f(theta))
        np.testing.assert_allclose(g, gradient(f, theta), atol=1e-13)

    def test_value_grad_hess_consistent(self):
        f = lambda t: np.sum(np.exp(t)) + t[0] * t[1] ** 2
        theta = np.array([0.2, -0.4])
        v, g, H = value_grad_hess(f, theta)
        assert v == pytest.approx(f(theta))
        np.testing.assert_allclose(g, gradient(f, theta), atol=1e-12)
        np.testing.assert_allclose(H, hessian(f, theta), atol=1e-12)
        np.testing.assert_allclose(H, H.T, atol=1e-12)

import unittest

import numpy as np
from scipy import integrate

from wqed import exceptions
from wqed import kernel as wqed_kernel
from wqed.model import ModelParams


class KernelTests(unittest.TestCase):
    def test_kernel_values(self) -> None:
        params = ModelParams(g=0.2)
        self.assertEqual(0.0, wqed_kernel.kernel(1.0, params))
        self.assertEqual(0.0, wqed_kernel.kernel(-1.0, params))
        self.assertAlmostEqual(1 / 0.2 ** 4, wqed_kernel.kernel(0.0, params))
        values = wqed_kernel.kernel(np.linspace(-1, 1, 101), params)
        self.assertFalse(np.iscomplexobj(values))
        self.assertTrue(np.all(values >= 0))
        with self.assertRaises(ValueError):
            wqed_kernel.kernel(1.5, params)

    def test_lossy_kernel(self) -> None:
        lossless = ModelParams(g=0.5)
        lossy = lossless.replace(gamma_e=0.01)
        value = wqed_kernel.kernel(0.5, lossy)
        self.assertTrue(np.iscomplexobj(value))
        self.assertLess(
            abs(abs(value) - wqed_kernel.kernel(0.5, lossless))
            / wqed_kernel.kernel(0.5, lossless),
            0.05,
        )
        self.assertEqual(
            wqed_kernel.kernel(0.5, lossless), wqed_kernel.kernel(0.5, lossy, losses=False)
        )

    def test_approximations(self) -> None:
        params = ModelParams(delta=0.4, g=0.1)
        y = np.array([0.5, 0.7])
        np.testing.assert_allclose(
            wqed_kernel.kernel(y, params),
            wqed_kernel.kernel_no_coupling(y, params),
            rtol=1e-3,
        )
        edge = np.array([1 - 1e-9])
        np.testing.assert_allclose(
            wqed_kernel.kernel(edge, params), wqed_kernel.edge_kernel(edge, params), rtol=1e-3
        )

    def test_integral_at_zero(self) -> None:
        params = ModelParams(delta=0.3, g=0.5)
        expected, _error = integrate.quad(
            lambda y: float(wqed_kernel.kernel(y, params)),
            -1,
            1,
            points=[-0.15],
            epsabs=1e-13,
            epsrel=1e-13,
            limit=500,
        )
        expansion = wqed_kernel.KernelExpansion(params, tol=1e-12)
        self.assertLess(abs(expansion.integral(0.0)[0] - expected), 1e-9)

    def test_routes_agree(self) -> None:
        expansion = wqed_kernel.KernelExpansion(ModelParams(delta=-0.5, g=0.5), tol=1e-12)
        w = np.array([5.0, 120.0, 999.0])
        np.testing.assert_allclose(
            expansion.integral(w, method="trapezoid"),
            expansion.integral(w, method="bessel"),
            atol=1e-10,
        )
        with self.assertRaises(exceptions.ConfigError):
            expansion.integral(-1.0)
        with self.assertRaises(ValueError):
            expansion.integral(1.0, method="simpson")

    def test_expansion_limits(self) -> None:
        with self.assertRaises(exceptions.QuadratureError):
            wqed_kernel.KernelExpansion(ModelParams(g=0.05), max_order=512)
        with self.assertRaises(exceptions.QuadratureError):
            wqed_kernel.KernelExpansion(ModelParams(g=0.2, gamma_e=0.04))
        with self.assertRaises(exceptions.QuadratureError):
            wqed_kernel.KernelExpansion(ModelParams(g=0.0))

    def test_expansion_is_cached(self) -> None:
        params = ModelParams(g=0.7)
        self.assertIs(
            wqed_kernel.expansion(params, 1e-10), wqed_kernel.expansion(params, 1e-10)
        )

import unittest

import numpy as np

from wqed import emission, exceptions
from wqed.model import ModelParams


class EmissionTests(unittest.TestCase):
    def test_energy_conservation(self) -> None:
        for delta in [-1.5, -1.0, -0.5, 0.0]:
            for g in [0.2, 0.5, 1.0, 2.0]:
                coeffs = emission.coefficients(ModelParams(delta=delta, g=g))
                self.assertLess(abs(coeffs.completeness - 1), 1e-8)
                self.assertLess(abs(emission.mean_energy(coeffs) - delta), 1e-8)

    def test_two_routes_agree(self) -> None:
        for delta, g in [(-1.0, 0.5), (-0.5, 1.0), (0.3, 2.0)]:
            coeffs = emission.coefficients(ModelParams(delta=delta, g=g))
            self.assertLess(
                abs(
                    emission.mean_emitted_energy(coeffs)
                    - emission.mean_emitted_energy_quadrature(coeffs)
                ),
                1e-8,
            )

    def test_resonant_band_center(self) -> None:
        for g in [0.2, 0.5, 1.0, 2.0]:
            coeffs = emission.coefficients(ModelParams(g=g))
            self.assertAlmostEqual(0.0, emission.mean_emitted_energy(coeffs), places=10)
            self.assertAlmostEqual(
                coeffs.upper.weight * (coeffs.upper.omega - 0.0),
                coeffs.lower.weight * (0.0 - coeffs.lower.omega),
                places=12,
            )
            self.assertAlmostEqual(abs(coeffs.c_plus), abs(coeffs.c_minus), places=12)

    def test_emission_probability(self) -> None:
        strong_center = emission.coefficients(ModelParams(g=2.5)).p_emission
        strong_edge = emission.coefficients(ModelParams(delta=-1.5, g=2.5)).p_emission
        self.assertTrue(0.2 <= strong_center <= 0.32)
        self.assertTrue(0.2 <= strong_edge <= 0.32)
        self.assertLess(strong_edge, strong_center)
        self.assertGreater(emission.coefficients(ModelParams(g=0.05)).p_emission, 0.99)

    def test_emission_probability_sweep(self) -> None:
        rows = emission.emission_probability_sweep(
            ModelParams(), [-1.0, 0.0], [0.2, 0.5, 1.0, 2.0]
        )
        self.assertEqual(8, len(rows))
        self.assertEqual((-1.0, 0.2), rows[0][:2])
        for start in (0, 4):
            probabilities = [row[2] for row in rows[start : start + 4]]
            self.assertTrue(np.all(np.diff(probabilities) < 0))

    def test_emitted_energy_shift(self) -> None:
        rows = emission.emitted_energy_sweep(ModelParams(), [-1.0], [0.5, 2.0])
        weak, strong = rows[0][2], rows[1][2]
        self.assertEqual((0.5, -1.0), rows[0][:2])
        self.assertGreater(weak, -1.0)
        self.assertLess(abs(strong), abs(weak))

    def test_weight_density_is_even(self) -> None:
        params = ModelParams(delta=-0.7, g=0.4)
        k = np.linspace(0.01, 3.1, 100)
        np.testing.assert_array_equal(
            emission.weight_density(k, params), emission.weight_density(-k, params)
        )
        np.testing.assert_allclose(
            np.abs(emission.coefficient(k, params)) ** 2,
            emission.weight_density(k, params),
            rtol=1e-12,
        )

    def test_spectrum_peak(self) -> None:
        result = emission.spectrum(ModelParams(g=0.2), n_points=1000)
        self.assertEqual(1000, len(result.k))
        step = result.k[1] - result.k[0]
        peak = result.k[np.argmax(result.weights)]
        self.assertLessEqual(abs(peak - np.pi / 2), step)
        self.assertFalse(result.normalized)

    def test_spectrum_shift_near_edge(self) -> None:
        result = emission.spectrum(ModelParams(delta=-1.8, g=0.5), n_points=2000)
        self.assertGreater(result.omega[np.argmax(result.weights)] + 1.8, 0.02)
        self.assertGreater(result.omega_ph, -1.8)

    def test_spectrum_normalized(self) -> None:
        result = emission.spectrum(ModelParams(g=0.5), n_points=50, normalize_max=True)
        self.assertEqual(1.0, result.weights.max())
        self.assertTrue(result.normalized)
        with self.assertRaises(exceptions.ConfigError):
            emission.spectrum(ModelParams(g=0.5), n_points=0)

import math
import unittest

import numpy as np
from numpy.polynomial import polynomial as P

from wqed import bound_states, exceptions, oracle
from wqed.model import ModelParams


class BoundStatesTests(unittest.TestCase):
    def test_closed_form_at_zero_detuning(self) -> None:
        lower, upper = bound_states.bound_states(ModelParams(g=1.0))
        eta = math.sqrt((math.sqrt(5) - 1) / 2)
        self.assertAlmostEqual(eta, lower.eta, places=9)
        self.assertAlmostEqual(-eta, upper.eta, places=9)
        self.assertAlmostEqual(-(eta + 1 / eta), lower.omega, places=9)
        self.assertAlmostEqual(eta + 1 / eta, upper.omega, places=9)

    def test_quartic_residual(self) -> None:
        for delta, g in [(0.0, 0.2), (-1.0, 0.5), (0.7, 1.3), (-1.5, 2.5)]:
            params = ModelParams(delta=delta, g=g)
            coefficients = bound_states.quartic_coefficients(params)
            for state in bound_states.bound_states(params):
                self.assertLess(abs(P.polyval(state.eta, coefficients)), 1e-10)
                self.assertLess(abs(state.eta), 1)

    def test_energies_outside_band(self) -> None:
        params = ModelParams(delta=0.3, epsilon=0.1, j_hop=1.2, g=0.4)
        lower, upper = bound_states.bound_states(params)
        self.assertLess(lower.omega, 0.1 - 2.4)
        self.assertGreater(upper.omega, 0.1 + 2.4)
        self.assertEqual(bound_states.LOWER, lower.branch)
        self.assertEqual(bound_states.UPPER, upper.branch)

    def test_kappa(self) -> None:
        lower, upper = bound_states.bound_states(ModelParams(delta=-0.5, g=0.8))
        self.assertEqual(0.0, lower.kappa.imag)
        self.assertAlmostEqual(np.pi, upper.kappa.imag)
        self.assertGreater(lower.kappa.real, 0)
        self.assertGreater(upper.kappa.real, 0)
        self.assertAlmostEqual(lower.eta, np.exp(-lower.kappa).real, places=12)
        self.assertAlmostEqual(upper.eta, np.exp(-upper.kappa).real, places=12)

    def test_normalization(self) -> None:
        for state in bound_states.bound_states(ModelParams(delta=0.4, g=0.6)):
            photons = state.norm ** 2 * (1 + state.eta ** 2) / (1 - state.eta ** 2)
            self.assertAlmostEqual(1.0, photons + state.weight, places=12)
            self.assertAlmostEqual(state.norm * state.d_amp, state.c_overlap)
            self.assertAlmostEqual(state.norm, state.amplitude(0))
            self.assertAlmostEqual(state.norm * state.eta ** 3, state.amplitude(-3))

    def test_symmetric_overlaps_at_zero_detuning(self) -> None:
        for g in [0.2, 0.5, 1.0, 2.0]:
            lower, upper = bound_states.bound_states(ModelParams(g=g))
            self.assertAlmostEqual(abs(lower.c_overlap), abs(upper.c_overlap), places=12)
            self.assertAlmostEqual(0.0, lower.omega + upper.omega, places=12)

    def test_eigenvector_residual(self) -> None:
        for delta, g in [(0.0, 1.0), (-0.5, 0.5)]:
            params = ModelParams(delta=delta, g=g)
            for state in bound_states.bound_states(params):
                half = int(math.ceil(40 / state.kappa.real))
                chain = oracle.hamiltonian(params, 2 * half + 1)
                x = np.arange(-half, half + 1)
                vector = np.append(state.amplitude(x), state.c_overlap)
                residual = np.abs(chain @ vector - state.omega * vector)
                interior = np.append(np.abs(x) < half - 5, True)
                self.assertLess(residual[interior].max(), 1e-8)

    def test_select_physical(self) -> None:
        lower, upper = bound_states.select_physical([0.5, -0.25, 2.0, -4.0])
        self.assertEqual(0.5, lower)
        self.assertEqual(-0.25, upper)
        with self.assertRaises(exceptions.BoundStateError):
            bound_states.select_physical([0.5, 0.25, 2.0, -4.0])
        with self.assertRaises(exceptions.BoundStateError):
            bound_states.select_physical([0.5 + 0.1j, -0.25, 2.0, -4.0])

    def test_errors(self) -> None:
        with self.assertRaises(exceptions.BoundStateError):
            bound_states.bound_states(ModelParams(g=0.0))
        with self.assertRaises(exceptions.UnsupportedError):
            bound_states.bound_states(ModelParams(g=0.2, gamma_e=0.01))
        with self.assertRaises(exceptions.ConfigError):
            bound_states.bound_state(ModelParams(g=0.2), "middle")
        self.assertEqual(
            bound_states.UPPER,
            bound_states.bound_state(ModelParams(g=0.2), bound_states.UPPER).branch,
        )

    def test_sweep(self) -> None:
        g_grid = np.linspace(0.01, 3, 40)
        rows = bound_states.sweep_bound_energies(ModelParams(), g_grid)
        lower = np.array([row[1] for row in rows])
        upper = np.array([row[2] for row in rows])
        self.assertTrue(np.all(np.diff(lower) < 0))
        self.assertTrue(np.all(np.diff(upper) > 0))
        self.assertLess(abs(lower[0] + 2), 1e-3)
        self.assertLess(abs(upper[0] - 2), 1e-3)
        np.testing.assert_allclose(-lower, upper, atol=1e-12)
        with self.assertRaises(exceptions.ConfigError):
            bound_states.sweep_bound_energies(ModelParams(), [0.5, 0.2])

    def test_near_edge_exciton_repels_faster(self) -> None:
        params = ModelParams(delta=-1.0)
        weak_lower, weak_upper = bound_states.bound_states(params.replace(g=0.01))
        lower, upper = bound_states.bound_states(params.replace(g=1.0))
        lower_shift = (params.delta - lower.omega) - (params.delta - weak_lower.omega)
        upper_shift = (upper.omega - params.delta) - (weak_upper.omega - params.delta)
        self.assertGreater(lower_shift, upper_shift)

import unittest
from unittest.mock import Mock, patch

import numpy as np

from wqed import dynamics, exceptions, field
from wqed.model import ModelParams


class FieldTests(unittest.TestCase):
    def test_initial_profile_is_empty(self) -> None:
        profile = field.field_profile(0.0, ModelParams(g=0.2))
        self.assertEqual(101, len(profile.positions))
        self.assertLess(profile.photon_norm, 1e-12)

    def test_norm_and_symmetry(self) -> None:
        params = ModelParams(g=0.2)
        profile = field.field_profile(75.0, params)
        self.assertEqual(150.0, profile.x_max)
        np.testing.assert_array_equal(profile.amplitudes, profile.amplitudes[::-1])
        exciton = dynamics.c_e(75.0, params)[0]
        self.assertLess(field.profile_norm_check(profile, exciton), 1e-6)

    def test_wavefront_position(self) -> None:
        center = field.field_profile(75.0, ModelParams(g=0.2))
        positive = center.positions > 0
        peak = center.positions[positive][np.argmax(center.probabilities[positive])]
        self.assertTrue(140 <= peak <= 152)

        detuned = field.field_profile(75.0, ModelParams(delta=-1.0, g=0.2))
        positive = detuned.positions > 0
        peak = detuned.positions[positive][np.argmax(detuned.probabilities[positive])]
        self.assertTrue(100 <= peak < 140)

    def test_tail_beyond_cone(self) -> None:
        profile = field.field_profile(75.0, ModelParams(g=0.2))
        self.assertLess(field.tail_decay_slope(profile), 0)
        outside = np.abs(profile.positions) > 1.2 * profile.x_max
        self.assertLess(profile.probabilities[outside].max(), 1e-8)

    @patch.object(field.fmt, "echo_alert")
    def test_truncated_window(self, mock_alert: Mock) -> None:
        params = ModelParams(g=0.2)
        profile = field.field_profile(75.0, params, half_width=100)
        mock_alert.assert_called_once()
        exciton = dynamics.c_e(75.0, params)[0]
        self.assertGreater(field.profile_norm_check(profile, exciton), 1e-3)

    def test_half_widths(self) -> None:
        params = ModelParams(j_hop=2.0)
        self.assertEqual(40.0, field.causal_bound(10.0, params))
        self.assertEqual(90, field.minimal_half_width(10.0, params))
        self.assertEqual(110, field.default_half_width(10.0, params))

    def test_errors(self) -> None:
        with self.assertRaises(exceptions.UnsupportedError):
            field.field_profile(1.0, ModelParams(g=0.2, gamma_e=0.01))
        with self.assertRaises(exceptions.ConfigError):
            field.field_profile(-1.0, ModelParams(g=0.2))
        with self.assertRaises(exceptions.ConfigError):
            field.field_profile(1.0, ModelParams(g=0.2), half_width=-1)

"""
Single-photon scattering off the impurity.

Amplitudes are written for a photon incoming from the far side of the impurity
with speed |v_k|; the k<0 states are the mirror images of the k>0 ones, so every
quantity depends on k through ω_k and |v_k| only.
"""
import dataclasses
from typing import Sequence, Tuple

import numpy as np

from . import exceptions
from .model import FloatOrArray, ModelParams, dispersion, group_velocity, validate

# Resonance test for the g=0 degenerate point, relative to J
RESONANCE_TOLERANCE = 1e-14


@dataclasses.dataclass(frozen=True)
class ScatteringAmplitude:
    k: float
    t: complex
    r: complex
    d: complex

    @property
    def big_r(self) -> float:
        return abs(self.r) ** 2


def _exciton_energy(params: ModelParams) -> complex:
    if params.gamma_c != 0:
        raise exceptions.UnsupportedError(
            "plane-wave scattering is undefined with cavity losses (gamma_c > 0)"
        )
    return params.delta_tilde if params.gamma_e else params.delta


def amplitude_arrays(
    k: FloatOrArray, params: ModelParams
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised (t, r, d). The exciton amplitude uses the form
    d = i|v|g / (i|v|(ω-Δ) - g²), finite at resonance.
    """
    validate(params)
    delta = _exciton_energy(params)
    k = np.asarray(k, dtype=float)
    speed = np.abs(group_velocity(k, params))
    detuning = dispersion(k, params) - delta
    if params.g == 0:
        if np.any(np.abs(detuning) <= RESONANCE_TOLERANCE * params.j_hop):
            raise exceptions.ScatteringError(
                "degenerate scattering: g=0 with a momentum resonant with the exciton"
            )
        t = np.ones(k.shape, dtype=complex)
        return t, t - 1, np.zeros(k.shape, dtype=complex)
    denominator = 1j * speed * detuning - params.g ** 2
    t = 1j * speed * detuning / denominator
    d = 1j * speed * params.g / denominator
    return t, t - 1, d


def amplitudes(k: float, params: ModelParams) -> ScatteringAmplitude:
    t, r, d = amplitude_arrays(k, params)
    return ScatteringAmplitude(k=float(k), t=complex(t), r=complex(r), d=complex(d))


def reflection(k: FloatOrArray, params: ModelParams) -> np.ndarray:
    _t, r, _d = amplitude_arrays(k, params)
    return np.abs(r) ** 2


def reflection_map(
    delta_grid: Sequence[float], k_grid: Sequence[float], params: ModelParams
) -> np.ndarray:
    """
    Reflection probability for every (Δ, k), shape (len(delta_grid), len(k_grid)).
    Band-edge momenta get R=1 for g>0.
    """
    k_grid = np.asarray(k_grid, dtype=float)
    edges = np.isclose(np.abs(np.sin(k_grid)), 0.0, atol=1e-15)
    interior = k_grid[~edges]
    rows = np.empty((len(delta_grid), len(k_grid)))
    for index, delta in enumerate(delta_grid):
        local = params.replace(delta=float(delta))
        row = np.empty(len(k_grid))
        row[~edges] = reflection(interior, local)
        row[edges] = 1.0 if params.g > 0 else 0.0
        rows[index] = row
    return rows

"""
Spatial profile φ_x(t) of the emitted photon.

The scattering part (1/2π)∫c_k e^{-iω_k t}⟨x|Ψ_k⟩ dk is written with the
plane-wave forms of the k>0 and k<0 states folded onto k ∈ (0, π):

    (1/2π) c_k [(t_k + r_k) e^{ik|x|} + e^{-ik|x|}] e^{-iω_k t}.

Continued to k<0 with the signed velocity, this integrand is even, smooth and
2π-periodic, so a uniform trapezoid grid shared by all sites converges
exponentially; the grid is doubled until two estimates agree.
"""
import dataclasses
from typing import Optional

import numpy as np

from . import bound_states, dynamics, exceptions, fmt, scattering, utils
from .model import ModelParams, dispersion, validate

DEFAULT_TOL = 1e-10
MIN_MARGIN = 50
MAX_NODES = 2 ** 20
# Bound the size of the (sites × momenta) phase matrices
CHUNK_SIZE = 2 ** 22


@dataclasses.dataclass(frozen=True)
class FieldProfile:
    positions: np.ndarray
    amplitudes: np.ndarray
    time: float
    x_max: float

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @property
    def photon_norm(self) -> float:
        return float(self.probabilities.sum())


def causal_bound(t: float, params: ModelParams) -> float:
    """
    Distance v_max·t = 2Jt travelled by the fastest wavefront.
    """
    return 2 * params.j_hop * t


def minimal_half_width(t: float, params: ModelParams) -> int:
    return int(np.ceil(causal_bound(t, params))) + MIN_MARGIN


def default_half_width(t: float, params: ModelParams) -> int:
    """
    Wide enough to hold the causal cone and the decay of the tail beyond it.
    """
    return int(np.ceil(1.5 * causal_bound(t, params))) + MIN_MARGIN


def _scattering_part(
    distances: np.ndarray, t: float, params: ModelParams, nodes: int
) -> np.ndarray:
    # Interior trapezoid nodes of (0, π); the integrand vanishes at both ends
    k = np.pi * np.arange(1, nodes) / nodes
    transmission, reflection, exciton = scattering.amplitude_arrays(k, params)
    weights = (
        np.conj(exciton)
        * np.exp(-1j * dispersion(k, params) * t)
        / (2 * nodes)
    )
    forward = weights * (transmission + reflection)
    result = np.empty(len(distances), dtype=complex)
    rows = max(1, CHUNK_SIZE // len(k))
    for start in range(0, len(distances), rows):
        phase = np.exp(1j * np.outer(distances[start : start + rows], k))
        result[start : start + rows] = phase @ forward + np.conj(phase) @ weights
    return result


def _scattering_integral(
    distances: np.ndarray, t: float, params: ModelParams, tol: float
) -> np.ndarray:
    nodes = utils.next_power_of_two(
        max(1024, 4 * (distances.max() + causal_bound(t, params)) + 8 * params.j_hop ** 2 / params.g ** 2)
    )
    previous = _scattering_part(distances, t, params, nodes)
    while True:
        nodes *= 2
        current = _scattering_part(distances, t, params, nodes)
        error = float(np.abs(current - previous).max())
        if error <= tol:
            return current
        if nodes >= MAX_NODES:
            raise exceptions.QuadratureError(
                "field integral did not converge at t={}".format(t), error
            )
        previous = current


def field_profile(
    t: float,
    params: ModelParams,
    half_width: Optional[int] = None,
    tol: float = DEFAULT_TOL,
) -> FieldProfile:
    """
    φ_x(t) on sites -L..L, L = `half_width`.
    """
    validate(params)
    if not params.is_lossless:
        raise exceptions.UnsupportedError("field profiles need lossless parameters")
    if t < 0 or not np.isfinite(t):
        raise exceptions.ConfigError("time must be finite and non-negative")
    if half_width is None:
        half_width = default_half_width(t, params)
    if half_width < 0:
        raise exceptions.ConfigError("half width must be non-negative")
    positions = np.arange(-half_width, half_width + 1)
    distances = np.arange(half_width + 1, dtype=float)
    lower, upper = bound_states.bound_states(params)
    folded = _scattering_integral(distances, t, params, tol)
    for state in (lower, upper):
        folded += (
            state.c_overlap * np.exp(-1j * state.omega * t) * state.amplitude(distances)
        )
    profile = FieldProfile(
        positions=positions,
        amplitudes=folded[np.abs(positions)],
        time=float(t),
        x_max=causal_bound(t, params),
    )
    if half_width < minimal_half_width(t, params):
        exciton = dynamics.c_e(t, params)[0]
        fmt.echo_alert(
            "Site window ±{} does not hold the causal cone at t={}: estimated leaked norm {:.3e}".format(
                half_width, t, profile_norm_check(profile, exciton)
            )
        )
    return profile


def profile_norm_check(profile: FieldProfile, c_e_t: complex) -> float:
    """
    |Σ|φ_x|² + |c_e|² - 1|.
    """
    return abs(profile.photon_norm + abs(c_e_t) ** 2 - 1)


def tail_decay_slope(profile: FieldProfile) -> float:
    """
    Slope of log|φ_x|² against |x| on x_max < |x| < 1.5·x_max, skipping
    amplitudes below the floating-point floor.
    """
    distances = np.abs(profile.positions)
    mask = (
        (distances > profile.x_max)
        & (distances < 1.5 * profile.x_max)
        & (np.abs(profile.amplitudes) > 1e-14)
        & (profile.positions > 0)
    )
    if mask.sum() < 2:
        raise exceptions.ConfigError("not enough sites beyond the causal cone to fit")
    slope, _intercept = np.polyfit(
        distances[mask], np.log(profile.probabilities[mask]), 1
    )
    return float(slope)

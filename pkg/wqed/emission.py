"""
Decomposition of the excited impurity over scattering and bound eigenstates,
and the observables of the emitted photon.
"""
import dataclasses
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import integrate

from . import bound_states, exceptions
from .model import ModelParams, dispersion, group_velocity, in_band, validate

QUADRATURE_TOL = 1e-12
COMPLETENESS_TOL = 1e-6


def coefficient(k: np.ndarray, params: ModelParams) -> np.ndarray:
    """
    Overlap c_k = d_k* of the bare exciton with the scattering state k.
    """
    speed = np.abs(group_velocity(k, params))
    detuning = dispersion(k, params) - params.delta
    return speed * params.g / (speed * detuning - 1j * params.g ** 2)


def weight_density(k: np.ndarray, params: ModelParams) -> np.ndarray:
    """
    |c_k|², even in k.
    """
    speed2 = group_velocity(k, params) ** 2
    detuning = dispersion(k, params) - params.delta
    return speed2 * params.g ** 2 / (speed2 * detuning ** 2 + params.g ** 4)


def breakpoints(params: ModelParams) -> List[float]:
    """
    Points of (0, π) where the integrand of band integrals has structure: the
    resonance and the edge scales set by the coupling.
    """
    points = []
    if in_band(params.delta, params):
        resonance = float(
            np.arccos((params.epsilon - params.delta) / (2 * params.j_hop))
        )
        width = params.g ** 2 / (2 * params.j_hop * max(np.sin(resonance), 1e-3)) ** 2
        points += [resonance - width, resonance, resonance + width]
    edge = min(params.coupling, 0.5)
    points += [edge, np.pi - edge]
    return sorted(p for p in set(points) if 0 < p < np.pi)


def band_integral(
    func: Callable[[float], float], params: ModelParams, tol: float = QUADRATURE_TOL
) -> float:
    """
    (1/2π)∫_{-π}^{π} f(k) dk for an even f, as (1/π)∫_0^π.
    """
    value, error = integrate.quad(
        func,
        0.0,
        np.pi,
        points=breakpoints(params),
        epsabs=tol,
        epsrel=tol,
        limit=1000,
    )
    if not np.isfinite(value) or error > max(1e-9, 1e3 * tol):
        raise exceptions.QuadratureError("band integral did not converge", error)
    return value / np.pi


@dataclasses.dataclass(frozen=True)
class DecayCoefficients:
    params: ModelParams
    lower: bound_states.BoundState
    upper: bound_states.BoundState
    scattered_weight: float

    @property
    def c_plus(self) -> float:
        return self.upper.c_overlap

    @property
    def c_minus(self) -> float:
        return self.lower.c_overlap

    @property
    def p_lig(self) -> float:
        return self.upper.weight + self.lower.weight

    @property
    def p_emission(self) -> float:
        return 1.0 - self.p_lig

    @property
    def completeness(self) -> float:
        return self.scattered_weight + self.p_lig

    def c_k(self, k: np.ndarray) -> np.ndarray:
        return coefficient(k, self.params)


def coefficients(params: ModelParams, tol: float = QUADRATURE_TOL) -> DecayCoefficients:
    validate(params)
    lower, upper = bound_states.bound_states(params)
    scattered = band_integral(lambda k: float(weight_density(k, params)), params, tol)
    coeffs = DecayCoefficients(
        params=params, lower=lower, upper=upper, scattered_weight=scattered
    )
    if abs(coeffs.completeness - 1) > COMPLETENESS_TOL:
        raise exceptions.NumericalError(
            "completeness violated: scattered + bound weight = {:.12f}".format(
                coeffs.completeness
            )
        )
    return coeffs


def mean_emitted_energy(coeffs: DecayCoefficients) -> float:
    """
    Mean energy of the flying photon, from energy conservation:
    ω_ph = (Δ - |c₊|²ω₊ - |c₋|²ω₋) / (1 - P_lig).
    """
    p_emission = coeffs.p_emission
    if p_emission <= 0:
        raise exceptions.NumericalError("no emitted photon: P_emission = 0")
    return (
        coeffs.params.delta
        - coeffs.upper.weight * coeffs.upper.omega
        - coeffs.lower.weight * coeffs.lower.omega
    ) / p_emission


def mean_emitted_energy_quadrature(
    coeffs: DecayCoefficients, tol: float = QUADRATURE_TOL
) -> float:
    """
    Same quantity, integrating ω_k|c_k|² over the band.
    """
    params = coeffs.params
    if coeffs.p_emission <= 0:
        raise exceptions.NumericalError("no emitted photon: P_emission = 0")
    value = band_integral(
        lambda k: float(dispersion(k, params) * weight_density(k, params)),
        params,
        tol,
    )
    return value / coeffs.p_emission


def mean_energy(coeffs: DecayCoefficients, tol: float = QUADRATURE_TOL) -> float:
    """
    ⟨H⟩ of the initial state, rebuilt from the decomposition: equals Δ.
    """
    params = coeffs.params
    scattered = band_integral(
        lambda k: float(dispersion(k, params) * weight_density(k, params)),
        params,
        tol,
    )
    return (
        scattered
        + coeffs.upper.weight * coeffs.upper.omega
        + coeffs.lower.weight * coeffs.lower.omega
    )


def emission_probability_sweep(
    params: ModelParams, delta_list: Sequence[float], g_grid: Sequence[float]
) -> List[Tuple[float, float, float]]:
    """
    Rows of (Δ, g, P_emission).
    """
    rows = []
    for delta in delta_list:
        for g in g_grid:
            local = params.replace(delta=float(delta), g=float(g))
            rows.append((float(delta), float(g), coefficients(local).p_emission))
    return rows


def emitted_energy_sweep(
    params: ModelParams, delta_grid: Sequence[float], g_list: Sequence[float]
) -> List[Tuple[float, float, float]]:
    """
    Rows of (g, Δ, ω_ph).
    """
    rows = []
    for g in g_list:
        for delta in delta_grid:
            local = params.replace(delta=float(delta), g=float(g))
            rows.append(
                (float(g), float(delta), mean_emitted_energy(coefficients(local)))
            )
    return rows


@dataclasses.dataclass(frozen=True)
class EmissionSpectrum:
    omega_ph: float
    k: np.ndarray
    omega: np.ndarray
    weights: np.ndarray
    normalized: bool


def spectrum(
    params: ModelParams, n_points: int = 1000, normalize_max: bool = False
) -> EmissionSpectrum:
    """
    |c_k|² sampled on n_points interior momenta of (0, π).
    """
    if n_points < 1:
        raise exceptions.ConfigError("spectrum needs at least one point")
    coeffs = coefficients(params)
    k = np.linspace(0, np.pi, n_points + 2)[1:-1]
    weights = weight_density(k, params)
    if normalize_max:
        weights = weights / weights.max()
    return EmissionSpectrum(
        omega_ph=mean_emitted_energy(coeffs),
        k=k,
        omega=dispersion(k, params),
        weights=weights,
        normalized=normalize_max,
    )

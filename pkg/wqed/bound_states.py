"""
Photon-impurity bound states: the two localized eigenstates whose energies lie
below and above the band.
"""
import dataclasses
from typing import List, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import linalg

from . import exceptions
from .model import FloatOrArray, ModelParams, validate

LOWER = "lower"
UPPER = "upper"
BRANCHES = (LOWER, UPPER)

# A root is "real and localized" inside these tolerances
IMAG_TOLERANCE = 1e-9
MODULUS_TOLERANCE = 1e-12


@dataclasses.dataclass(frozen=True)
class BoundState:
    branch: str
    eta: float
    kappa: complex
    omega: float
    d_amp: float
    norm: float
    c_overlap: float

    @property
    def weight(self) -> float:
        """
        Overlap probability |c|² with the bare exciton.
        """
        return self.c_overlap ** 2

    def amplitude(self, x: FloatOrArray) -> FloatOrArray:
        """
        Photon amplitude N·η^|x| on site x.
        """
        return self.norm * self.eta ** np.abs(x)


def quartic_coefficients(params: ModelParams) -> np.ndarray:
    """
    Coefficients, lowest degree first, of
    η⁴ + δη³ + γ²η² - δη - 1 with δ=(Δ-ε)/J and γ=g/J.
    """
    delta = params.detuning
    gamma = params.coupling
    return np.array([-1.0, -delta, gamma ** 2, delta, 1.0])


def quartic_roots(params: ModelParams) -> np.ndarray:
    coefficients = quartic_coefficients(params)
    roots = linalg.eigvals(P.polycompanion(coefficients))
    # One Newton step per root to clean up the eigenvalue residual
    derivative = P.polyder(coefficients)
    slopes = P.polyval(roots, derivative)
    safe = np.abs(slopes) > 0
    roots[safe] -= P.polyval(roots[safe], coefficients) / slopes[safe]
    return roots


def select_physical(roots: Sequence[complex]) -> Tuple[float, float]:
    roots = np.asarray(roots, dtype=complex)
    localized = roots[
        (np.abs(roots.imag) < IMAG_TOLERANCE)
        & (np.abs(roots) < 1 - MODULUS_TOLERANCE)
    ].real
    lower = localized[localized > 0]
    upper = localized[localized < 0]
    if len(lower) != 1 or len(upper) != 1:
        raise exceptions.BoundStateError(
            "branch selection failed: expected one root in (0, 1) and one in (-1, 0), got {} from quartic roots {}".format(
                list(localized), list(roots)
            )
        )
    return float(lower[0]), float(upper[0])


def _check(params: ModelParams) -> None:
    validate(params)
    if not params.is_lossless:
        raise exceptions.UnsupportedError(
            "bound states are only defined for lossless parameters"
        )
    if params.g == 0:
        raise exceptions.BoundStateError("no bound states at zero coupling")


def _build(params: ModelParams, branch: str, eta: float) -> BoundState:
    kappa = complex(-np.log(abs(eta)), np.pi if eta < 0 else 0.0)
    omega = params.epsilon - params.j_hop * (eta + 1 / eta)
    d_amp = params.g / (omega - params.delta)
    norm = ((1 + eta ** 2) / (1 - eta ** 2) + d_amp ** 2) ** -0.5
    return BoundState(
        branch=branch,
        eta=eta,
        kappa=kappa,
        omega=omega,
        d_amp=d_amp,
        norm=norm,
        c_overlap=norm * d_amp,
    )


def bound_states(params: ModelParams) -> Tuple[BoundState, BoundState]:
    """
    Return the (lower, upper) bound states.
    """
    _check(params)
    eta_lower, eta_upper = select_physical(quartic_roots(params))
    return _build(params, LOWER, eta_lower), _build(params, UPPER, eta_upper)


def bound_state(params: ModelParams, branch: str) -> BoundState:
    if branch not in BRANCHES:
        raise exceptions.ConfigError("unknown branch: {}".format(branch))
    lower, upper = bound_states(params)
    return lower if branch == LOWER else upper


def sweep_bound_energies(
    params: ModelParams, g_grid: Sequence[float]
) -> List[Tuple[float, float, float]]:
    """
    Rows of (g, ω₋, ω₊) along an ascending coupling grid.
    """
    if np.any(np.diff(g_grid) <= 0):
        raise exceptions.ConfigError("coupling grid must be strictly ascending")
    rows = []
    for g in g_grid:
        lower, upper = bound_states(params.replace(g=float(g)))
        rows.append((float(g), lower.omega, upper.omega))
    return rows

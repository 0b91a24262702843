"""
Model parameters of an impurity coupled to a tight-binding waveguide, together
with the band dispersion and momentum/energy conversions.
"""
import dataclasses
import math
from typing import Dict, Tuple, Union

import numpy as np

from . import exceptions

FloatOrArray = Union[float, np.ndarray]


@dataclasses.dataclass(frozen=True)
class ModelParams:
    """
    All energies share the units of the hopping amplitude `j_hop`; loss rates are
    full widths (the complex energies carry half of them).
    """

    delta: float = 0.0
    epsilon: float = 0.0
    j_hop: float = 1.0
    g: float = 0.2
    gamma_e: float = 0.0
    gamma_c: float = 0.0

    @property
    def is_lossless(self) -> bool:
        return self.gamma_e == 0 and self.gamma_c == 0

    @property
    def delta_tilde(self) -> complex:
        return complex(self.delta, -self.gamma_e / 2)

    @property
    def epsilon_tilde(self) -> complex:
        return complex(self.epsilon, -self.gamma_c / 2)

    @property
    def detuning(self) -> float:
        """
        Reduced detuning (Δ-ε)/J.
        """
        return (self.delta - self.epsilon) / self.j_hop

    @property
    def detuning_tilde(self) -> complex:
        return (self.delta_tilde - self.epsilon_tilde) / self.j_hop

    @property
    def coupling(self) -> float:
        """
        Reduced coupling g/J.
        """
        return self.g / self.j_hop

    @property
    def band(self) -> Tuple[float, float]:
        return self.epsilon - 2 * self.j_hop, self.epsilon + 2 * self.j_hop

    def lossless(self) -> "ModelParams":
        return self.replace(gamma_e=0.0, gamma_c=0.0)

    def replace(self, **changes: float) -> "ModelParams":
        return dataclasses.replace(self, **changes)

    def in_hopping_units(self) -> "ModelParams":
        j_hop = self.j_hop
        return ModelParams(
            delta=self.delta / j_hop,
            epsilon=self.epsilon / j_hop,
            j_hop=1.0,
            g=self.g / j_hop,
            gamma_e=self.gamma_e / j_hop,
            gamma_c=self.gamma_c / j_hop,
        )

    def as_dict(self) -> Dict[str, float]:
        return dataclasses.asdict(self)


def validate(params: ModelParams) -> ModelParams:
    for field in dataclasses.fields(params):
        value = getattr(params, field.name)
        if not math.isfinite(value):
            raise exceptions.ConfigError(
                "non-finite parameter: {}={}".format(field.name, value)
            )
    if params.j_hop == 0:
        raise exceptions.ConfigError("zero bandwidth: the hopping J must be > 0")
    if params.j_hop < 0:
        raise exceptions.ConfigError(
            "negative hopping: J={} must be > 0".format(params.j_hop)
        )
    if params.g < 0:
        raise exceptions.ConfigError("negative coupling: g={}".format(params.g))
    if params.gamma_e < 0 or params.gamma_c < 0:
        raise exceptions.ConfigError(
            "negative loss rate: gamma_e={}, gamma_c={}".format(
                params.gamma_e, params.gamma_c
            )
        )
    return params


def wrap_momentum(k: FloatOrArray) -> FloatOrArray:
    """
    Map any real momentum into [-π, π).
    """
    return np.mod(np.add(k, np.pi), 2 * np.pi) - np.pi


def dispersion(k: FloatOrArray, params: ModelParams) -> FloatOrArray:
    return params.epsilon - 2 * params.j_hop * np.cos(k)


def group_velocity(k: FloatOrArray, params: ModelParams) -> FloatOrArray:
    return 2 * params.j_hop * np.sin(k)


def in_band(omega: float, params: ModelParams) -> bool:
    bottom, top = params.band
    return bottom < omega < top


def momentum_at_energy(omega: float, params: ModelParams) -> float:
    """
    Positive-momentum branch k ∈ (0, π) of the dispersion. Band edges are
    excluded.
    """
    if not in_band(omega, params):
        bottom, top = params.band
        raise exceptions.OutOfBandError(
            "energy {} is outside the open band ({}, {})".format(omega, bottom, top)
        )
    return float(np.arccos((params.epsilon - omega) / (2 * params.j_hop)))

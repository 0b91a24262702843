"""
The spectral kernel F(y) of the exciton amplitude and the oscillatory integral

    I(w) = ∫_{-1}^{1} F(y) e^{iwy} dy,   w = 2Jt.

With y = -cos θ the integrand becomes h(θ)·e^{-iw cos θ} on [0, π], where
h(θ) = sin θ·F(-cos θ) is smooth, even and 2π-periodic. h is expanded in a cosine
series; small w uses the periodic trapezoid rule and large w sums the series
against Bessel functions, which treats the oscillating factor exactly.
"""
import functools
from typing import Tuple

import numpy as np
from scipy import fft, special

from . import exceptions
from .model import FloatOrArray, ModelParams

# Above this value of w=2Jt the Bessel-series route is used
BESSEL_THRESHOLD = 1e3
MAX_ORDER = 2 ** 20
MIN_ORDER = 256
# Bound the size of the (times × orders) Bessel matrices
CHUNK_SIZE = 2 ** 22


def reduced_detuning(params: ModelParams, losses: bool = True) -> complex:
    if losses and not params.is_lossless:
        return params.detuning_tilde
    return params.detuning


def kernel(y: FloatOrArray, params: ModelParams, losses: bool = True) -> np.ndarray:
    """
    F(y) = √(1-y²) / [4(1-y²)(δ+2y)² + (g/J)⁴], with δ the (possibly complex)
    reduced detuning.
    """
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) > 1):
        raise ValueError("kernel is defined on [-1, 1] only")
    delta = reduced_detuning(params, losses)
    one_minus = 1 - y ** 2
    values = np.sqrt(one_minus) / (
        4 * one_minus * (delta + 2 * y) ** 2 + params.coupling ** 4
    )
    if np.iscomplexobj(values) and delta.imag == 0:
        return values.real
    return values


def kernel_no_coupling(y: FloatOrArray, params: ModelParams) -> np.ndarray:
    """
    Kernel with the (g/J)⁴ term dropped, singular at the resonance.
    """
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore"):
        return 1 / (4 * np.sqrt(1 - y ** 2) * (params.detuning + 2 * y) ** 2)


def edge_kernel(y: FloatOrArray, params: ModelParams) -> np.ndarray:
    """
    Kernel near the band edges, where (1-y²) terms of the denominator vanish.
    """
    y = np.asarray(y, dtype=float)
    return np.sqrt(1 - y ** 2) / params.coupling ** 4


class KernelExpansion:
    """
    Cosine series h(θ) = Σ_n ĥ_n cos(nθ). Coefficients are obtained by FFT on
    2M samples, M doubled until the upper half of the spectrum is negligible.
    """

    def __init__(
        self, params: ModelParams, tol: float = 1e-12, max_order: int = MAX_ORDER
    ) -> None:
        self.params = params
        self.delta = reduced_detuning(params)
        self.tol = tol
        self.floor = 0.0
        self._check_denominator()
        self.coefficients, self.error_estimate = self._expand(tol, max_order)

    def integrand(self, theta: np.ndarray) -> np.ndarray:
        cos = np.cos(theta)
        sin2 = np.sin(theta) ** 2
        return sin2 / (
            4 * sin2 * (self.delta - 2 * cos) ** 2 + self.params.coupling ** 4
        )

    def _check_denominator(self) -> None:
        theta = np.linspace(0, np.pi, 4097)
        sin2 = np.sin(theta) ** 2
        denominator = (
            4 * sin2 * (self.delta - 2 * np.cos(theta)) ** 2
            + self.params.coupling ** 4
        )
        if self.params.coupling == 0 or np.min(np.abs(denominator)) <= (
            1e-12 * self.params.coupling ** 4
        ):
            raise exceptions.QuadratureError(
                "kernel denominator vanishes on the real axis", float("inf")
            )

    def _expand(self, tol: float, max_order: int) -> Tuple[np.ndarray, float]:
        order = MIN_ORDER
        while True:
            theta = np.pi * np.arange(2 * order) / order
            spectrum = fft.fft(self.integrand(theta))
            coefficients = spectrum[: order + 1] / order
            coefficients[0] /= 2
            coefficients[order] /= 2
            magnitudes = np.abs(coefficients)
            tail = np.pi * magnitudes[order // 2 :].sum()
            floor = 1e3 * np.finfo(float).eps * np.pi * magnitudes.sum()
            if tail <= max(tol, floor):
                self.floor = floor
                break
            if 2 * order > max_order:
                raise exceptions.QuadratureError(
                    "cosine expansion of the kernel did not converge with {} terms".format(
                        order
                    ),
                    tail,
                )
            order *= 2
        significant = np.nonzero(magnitudes > np.finfo(float).eps * magnitudes.max())
        last = int(significant[0][-1]) + 1
        return coefficients[:last], tail

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def trapezoid(self, w: float) -> Tuple[complex, float]:
        """
        ∫_0^π h(θ) e^{-iw cos θ} dθ by the periodic trapezoid rule, doubling the
        number of nodes until two estimates agree.
        """
        nodes = 2 * max(
            self.order, int(2 ** np.ceil(np.log2(w + 10 * w ** (1 / 3) + 64)))
        )
        previous = self._trapezoid(w, nodes)
        while True:
            nodes *= 2
            current = self._trapezoid(w, nodes)
            error = abs(current - previous)
            if error <= max(self.tol, self.floor):
                return current, error
            if nodes > 4 * MAX_ORDER:
                raise exceptions.QuadratureError(
                    "trapezoid rule did not converge at w={}".format(w), error
                )
            previous = current

    def _trapezoid(self, w: float, nodes: int) -> complex:
        theta = 2 * np.pi * np.arange(nodes) / nodes
        values = self.integrand(theta) * np.exp(-1j * w * np.cos(theta))
        return complex(np.pi / nodes * values.sum())

    def bessel(self, w: np.ndarray) -> np.ndarray:
        """
        π Σ_n ĥ_n (-i)^n J_n(w), the exact integral of the truncated series.
        """
        w = np.atleast_1d(np.asarray(w, dtype=float))
        orders = np.arange(self.order)
        weights = self.coefficients * np.array([1, -1j, -1, 1j])[orders % 4]
        rows = max(1, CHUNK_SIZE // self.order)
        result = np.empty(len(w), dtype=complex)
        for start in range(0, len(w), rows):
            chunk = w[start : start + rows]
            result[start : start + rows] = np.pi * (
                special.jv(orders[None, :], chunk[:, None]) @ weights
            )
        return result

    def integral(self, w: FloatOrArray, method: str = "auto") -> np.ndarray:
        """
        ∫_{-1}^{1} F(y) e^{iwy} dy for w ≥ 0.
        """
        w = np.atleast_1d(np.asarray(w, dtype=float))
        if np.any(w < 0):
            raise exceptions.ConfigError("negative times are not supported")
        if method not in ("auto", "trapezoid", "bessel"):
            raise ValueError("unknown method: {}".format(method))
        result = np.empty(len(w), dtype=complex)
        if method == "bessel":
            large = np.ones(len(w), dtype=bool)
        elif method == "trapezoid":
            large = np.zeros(len(w), dtype=bool)
        else:
            large = w > BESSEL_THRESHOLD
        if large.any():
            result[large] = self.bessel(w[large])
        for index in np.nonzero(~large)[0]:
            result[index] = self.trapezoid(w[index])[0]
        return result


@functools.lru_cache(maxsize=64)
def expansion(params: ModelParams, tol: float) -> KernelExpansion:
    return KernelExpansion(params, tol=tol)

"""
Exciton amplitude after the impurity is excited at t=0,

    c_e(t) = c_e^s(t) + c_e^b(t),

with c_e^s the scattering-state integral over the kernel and c_e^b the
persistent bound-state oscillation, plus the analysis of its exponential,
power-law and asymptotic regimes.
"""
import dataclasses
from typing import Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import optimize, signal, special

from . import bound_states, exceptions, fmt
from . import kernel as wqed_kernel
from .model import FloatOrArray, ModelParams, momentum_at_energy, validate

DEFAULT_TOL = 1e-10

C_E = "c_e"
C_E_S = "c_e_s"
C_E_B = "c_e_b"

# Pole search
POLE_TOLERANCE = 1e-12
MAX_NEWTON_STEPS = 100
# Edge-peak search, on u = 1 ∓ y
EDGE_SEARCH_BOUNDS = (1e-15, 0.1)


@dataclasses.dataclass(frozen=True)
class TimeSeries:
    times: np.ndarray
    values: np.ndarray
    label: str
    params: ModelParams

    @property
    def is_probability(self) -> bool:
        return self.label.startswith("P")

    def probability(self) -> "TimeSeries":
        if self.is_probability:
            return self
        return TimeSeries(
            times=self.times,
            values=np.abs(self.values) ** 2,
            label="P" + self.label[1:],
            params=self.params,
        )

    def window(self, start: float, stop: float) -> "TimeSeries":
        mask = (self.times >= start) & (self.times <= stop)
        return TimeSeries(self.times[mask], self.values[mask], self.label, self.params)


def _times(t: FloatOrArray) -> np.ndarray:
    times = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(times < 0) or not np.all(np.isfinite(times)):
        raise exceptions.ConfigError("times must be finite and non-negative")
    return times


def c_e_scattering(
    t: FloatOrArray, params: ModelParams, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """
    c_e^s(t) = e^{-iε̃t}(4g²/πJ²) ∫_{-1}^{1} F(y) e^{i2yJt} dy, to absolute
    accuracy `tol`. Cavity losses enter through ε̃, which also produces the global
    factor e^{-γ_c t/2}.
    """
    validate(params)
    times = _times(t)
    if params.g == 0:
        raise exceptions.UnsupportedError(
            "the eigenstate decomposition needs a nonzero coupling"
        )
    prefactor = 4 * params.g ** 2 / (np.pi * params.j_hop ** 2)
    expansion = wqed_kernel.expansion(params, tol / prefactor)
    integral = expansion.integral(2 * params.j_hop * times)
    return np.exp(-1j * params.epsilon_tilde * times) * prefactor * integral


def c_e_bound(t: FloatOrArray, params: ModelParams) -> np.ndarray:
    """
    c_e^b(t) = Σ_± |c_±|² e^{-iω_± t}.
    """
    if not params.is_lossless:
        raise exceptions.UnsupportedError(
            "the bound-state amplitude is not defined with losses"
        )
    times = _times(t)
    lower, upper = bound_states.bound_states(params)
    return lower.weight * np.exp(-1j * lower.omega * times) + upper.weight * np.exp(
        -1j * upper.omega * times
    )


def c_e(t: FloatOrArray, params: ModelParams, tol: float = DEFAULT_TOL) -> np.ndarray:
    return c_e_scattering(t, params, tol) + c_e_bound(t, params)


def amplitude_series(
    label: str, t_grid: Sequence[float], params: ModelParams, tol: float = DEFAULT_TOL
) -> TimeSeries:
    times = _grid(t_grid)
    if label == C_E:
        values = c_e(times, params, tol)
    elif label == C_E_S:
        values = c_e_scattering(times, params, tol)
    elif label == C_E_B:
        values = c_e_bound(times, params)
    else:
        raise exceptions.ConfigError("unknown amplitude: {}".format(label))
    return TimeSeries(times, values, label, params)


def _grid(t_grid: Sequence[float]) -> np.ndarray:
    times = _times(t_grid)
    if len(times) == 0:
        raise exceptions.ConfigError("empty time grid")
    if np.any(np.diff(times) <= 0):
        raise exceptions.ConfigError("time grid must be strictly ascending")
    return times


@dataclasses.dataclass(frozen=True)
class Dynamics:
    p_e_s: TimeSeries
    p_e: Optional[TimeSeries] = None
    p_e_b: Optional[TimeSeries] = None


def full_dynamics(
    params: ModelParams, t_grid: Sequence[float], tol: float = DEFAULT_TOL
) -> Dynamics:
    """
    Probabilities P_e, P_e^s and P_e^b. With losses only P_e^s is available.
    """
    times = _grid(t_grid)
    scattering = c_e_scattering(times, params, tol)
    p_e_s = TimeSeries(times, np.abs(scattering) ** 2, "P_e_s", params)
    if not params.is_lossless:
        return Dynamics(p_e_s=p_e_s)
    bound = c_e_bound(times, params)
    return Dynamics(
        p_e_s=p_e_s,
        p_e=TimeSeries(times, np.abs(scattering + bound) ** 2, "P_e", params),
        p_e_b=TimeSeries(times, np.abs(bound) ** 2, "P_e_b", params),
    )


def fgr(params: ModelParams) -> Tuple[float, float]:
    """
    Golden-rule lifetime J·sin(k_Δ)/g² and phase Δ.
    """
    validate(params)
    if params.g == 0:
        raise exceptions.ConfigError("golden-rule lifetime is infinite at g=0")
    k_delta = momentum_at_energy(params.delta, params)
    return params.j_hop * np.sin(k_delta) / params.g ** 2, params.delta


@dataclasses.dataclass(frozen=True)
class DecayAnalysis:
    y_p: complex
    a_p: complex
    tau0: float
    phi: float
    delta_phi: float
    tau0_fgr: float
    y_star_minus: float
    y_star_plus: float
    dy_minus: float
    dy_plus: float
    tau1_minus: float
    tau1_plus: float
    a_minus: complex
    a_plus: complex
    ill_conditioned: bool = False


def denominator_coefficients(params: ModelParams) -> np.ndarray:
    """
    4(1-y²)(δ+2y)² + (g/J)⁴ as a quartic in y, lowest degree first.
    """
    delta = wqed_kernel.reduced_detuning(params)
    return np.array(
        [
            4 * delta ** 2 + params.coupling ** 4,
            16 * delta,
            16 - 4 * delta ** 2,
            -16 * delta,
            -16.0,
        ],
        dtype=complex,
    )


def find_pole(params: ModelParams) -> complex:
    """
    Damped Newton iteration from the weak-coupling seed
    y₀ = -δ̃/2 + i·g²/(4J² sin k_Δ).
    """
    try:
        k_delta = momentum_at_energy(params.delta, params)
    except exceptions.OutOfBandError as e:
        raise exceptions.PoleError(
            "no decaying pole: the exciton energy lies outside the band"
        ) from e
    coefficients = denominator_coefficients(params)
    derivative = P.polyder(coefficients)
    y = -wqed_kernel.reduced_detuning(params) / 2 + 1j * params.coupling ** 2 / (
        4 * np.sin(k_delta)
    )
    value = P.polyval(y, coefficients)
    for _ in range(MAX_NEWTON_STEPS):
        if abs(value) < POLE_TOLERANCE:
            break
        step = value / P.polyval(y, derivative)
        damping = 1.0
        while True:
            trial = y - damping * step
            trial_value = P.polyval(trial, coefficients)
            if abs(trial_value) < abs(value):
                break
            damping /= 2
            if damping < 1e-8:
                raise exceptions.PoleError(
                    "pole search stalled at y={} with |D(y)|={:.3e}".format(
                        y, abs(value)
                    )
                )
        y, value = trial, trial_value
    else:
        raise exceptions.PoleError(
            "pole search did not converge: y={}, |D(y)|={:.3e}".format(y, abs(value))
        )
    if y.imag <= 0 or abs(y.real) >= 1:
        raise exceptions.PoleError("pole left the physical sheet: y_p={}".format(y))
    return complex(y)


def _edge_peak(params: ModelParams, side: int) -> Tuple[float, bool]:
    """
    Distance u = 1 ∓ y from the band edge y = side·1 to the local maximum of |F|.
    """
    delta = wqed_kernel.reduced_detuning(params)
    quartic = params.coupling ** 4

    def objective(log_u: float) -> float:
        u = np.exp(log_u)
        one_minus = u * (2 - u)
        y = side * (1 - u)
        return -abs(np.sqrt(one_minus) / (4 * one_minus * (delta + 2 * y) ** 2 + quartic))

    low, high = np.log(EDGE_SEARCH_BOUNDS[0]), np.log(EDGE_SEARCH_BOUNDS[1])
    result = optimize.minimize_scalar(
        objective, bounds=(low, high), method="bounded", options={"xatol": 1e-10}
    )
    at_bound = min(result.x - low, high - result.x) < 1e-3
    return float(np.exp(result.x)), at_bound


def pole_analysis(params: ModelParams) -> DecayAnalysis:
    validate(params)
    if params.g == 0:
        raise exceptions.ConfigError("pole analysis needs g > 0")
    y_p = find_pole(params)
    j_hop = params.j_hop
    derivative = P.polyval(y_p, P.polyder(denominator_coefficients(params)))
    a_p = complex(np.sqrt(1 - y_p ** 2) / derivative)
    tau0 = 1 / (4 * j_hop * y_p.imag + params.gamma_c)
    phi = params.epsilon - 2 * j_hop * y_p.real
    tau0_fgr, _phi_fgr = fgr(params)
    dy_minus, minus_at_bound = _edge_peak(params, -1)
    dy_plus, plus_at_bound = _edge_peak(params, 1)
    detuning = params.delta_tilde - params.epsilon_tilde
    scale = 2 * np.sqrt(2 * np.pi * j_hop)
    ill_conditioned = (
        minus_at_bound or plus_at_bound or 1 - abs(y_p.real) < 10 * y_p.imag
    )
    if ill_conditioned:
        fmt.echo_alert(
            "Pole analysis is ill-conditioned: the pole y_p={:.6g} or an edge peak sits close to the band edge".format(
                y_p
            )
        )
    return DecayAnalysis(
        y_p=y_p,
        a_p=a_p,
        tau0=tau0,
        phi=phi,
        delta_phi=phi - params.delta,
        tau0_fgr=tau0_fgr,
        y_star_minus=-1 + dy_minus,
        y_star_plus=1 - dy_plus,
        dy_minus=dy_minus,
        dy_plus=dy_plus,
        tau1_minus=1 / (4 * j_hop * dy_minus),
        tau1_plus=1 / (4 * j_hop * dy_plus),
        a_minus=complex(params.g ** 2 / (scale * (detuning - 2 * j_hop) ** 2)),
        a_plus=complex(params.g ** 2 / (scale * (detuning + 2 * j_hop) ** 2)),
        ill_conditioned=bool(ill_conditioned),
    )


def lorentzian(y: FloatOrArray, analysis: DecayAnalysis) -> np.ndarray:
    """
    Single-pole approximation of the kernel on the real axis.
    """
    y = np.asarray(y, dtype=float)
    return 2 * np.real(analysis.a_p / (y - analysis.y_p))


def pole_prediction(
    t: FloatOrArray, params: ModelParams, analysis: DecayAnalysis
) -> np.ndarray:
    """
    Residue of the pole alone: 8i·a_p·(g/J)²·e^{-iε̃t}·e^{i2y_pJt}.
    """
    times = _times(t)
    return (
        8j
        * analysis.a_p
        * params.coupling ** 2
        * np.exp(-1j * params.epsilon_tilde * times)
        * np.exp(2j * analysis.y_p * params.j_hop * times)
    )


INTERMEDIATE = "intermediate"
POWER = "power"
ASYMPTOTIC = "asymptotic"
REGIMES = (INTERMEDIATE, POWER, ASYMPTOTIC)


def tail_prediction(
    t: FloatOrArray,
    params: ModelParams,
    analysis: DecayAnalysis,
    regime: str = INTERMEDIATE,
) -> np.ndarray:
    """
    Long-time forms of c_e^s:

    - intermediate: t^{-1/2}(a₋e^{-i2Jt}e^{-t/2τ₁₋} + a₊e^{i2Jt}e^{-t/2τ₁₊})e^{-iε̃t}
    - power: the same without the τ₁ damping
    - asymptotic: (2J/g²)·e^{-iε̃t}·J₁(2Jt)/t
    """
    times = _times(t)
    if np.any(times == 0):
        raise exceptions.ConfigError("tail predictions are singular at t=0")
    if regime not in REGIMES:
        raise exceptions.ConfigError("unknown regime: {}".format(regime))
    j_hop = params.j_hop
    phase = np.exp(-1j * params.epsilon_tilde * times)
    if regime == ASYMPTOTIC:
        return phase * 2 * j_hop * special.j1(2 * j_hop * times) / (params.g ** 2 * times)
    minus = analysis.a_minus * np.exp(-2j * j_hop * times)
    plus = analysis.a_plus * np.exp(2j * j_hop * times)
    if regime == INTERMEDIATE:
        minus = minus * np.exp(-times / (2 * analysis.tau1_minus))
        plus = plus * np.exp(-times / (2 * analysis.tau1_plus))
    return phase * (minus + plus) / np.sqrt(times)


def exponential_fit(
    series: TimeSeries, window: Tuple[float, float]
) -> Tuple[float, float]:
    """
    Least-squares fit of log|c|² and of the unwrapped phase over `window`.
    Returns (τ, φ) with |c|² ∝ e^{-t/τ} and c ∝ e^{-iφt}; φ is NaN for
    probability series.
    """
    selected = series.window(*window)
    if len(selected.times) < 3:
        raise exceptions.ConfigError(
            "fit window [{}, {}] holds fewer than 3 samples".format(*window)
        )
    magnitude = np.abs(selected.values)
    if selected.is_probability:
        magnitude = np.sqrt(magnitude)
    if np.any(np.diff(magnitude) > 0):
        fmt.echo_alert(
            "Fit window [{}, {}] is not monotone: the decay is not purely exponential there".format(
                *window
            )
        )
    slope, _intercept = np.polyfit(selected.times, np.log(magnitude ** 2), 1)
    tau = -1 / slope
    if selected.is_probability:
        return float(tau), float("nan")
    phase_slope, _intercept = np.polyfit(
        selected.times, np.unwrap(np.angle(selected.values)), 1
    )
    return float(tau), float(-phase_slope)


def fit_window(
    analysis: DecayAnalysis, points: int = 200
) -> np.ndarray:
    """
    Time grid on [τ₀/2, 3τ₀], fine enough to unwrap the phase.
    """
    start, stop = 0.5 * analysis.tau0, 3 * analysis.tau0
    frequency = max(abs(analysis.phi), 1e-12)
    points = max(points, int(np.ceil((stop - start) * frequency / 0.5)) + 1)
    return np.linspace(start, stop, points)


def fit_decay(
    params: ModelParams, analysis: DecayAnalysis, tol: float = DEFAULT_TOL
) -> Tuple[float, float]:
    times = fit_window(analysis)
    series = amplitude_series(C_E_S, times, params, tol)
    return exponential_fit(series, (times[0], times[-1]))


def envelope(series: TimeSeries, period: Optional[float] = None) -> TimeSeries:
    """
    Maxima of a probability series over consecutive windows of length
    `period` (π/2J by default).
    """
    series = series.probability()
    if period is None:
        period = np.pi / (2 * series.params.j_hop)
    bins = np.floor((series.times - series.times[0]) / period).astype(int)
    times = []
    values = []
    for index in np.unique(bins):
        members = np.nonzero(bins == index)[0]
        best = members[np.argmax(series.values[members])]
        times.append(series.times[best])
        values.append(series.values[best])
    return TimeSeries(np.array(times), np.array(values), series.label, series.params)


def sample_envelope(
    params: ModelParams,
    centers: Sequence[float],
    tol: float = DEFAULT_TOL,
    samples_per_period: int = 32,
) -> TimeSeries:
    """
    Envelope of P_e^s evaluated only on one oscillation period after each
    center, so that long-time envelopes stay affordable.
    """
    period = np.pi / (2 * params.j_hop)
    centers = np.asarray(centers, dtype=float)
    offsets = period * np.arange(samples_per_period) / samples_per_period
    times = (centers[:, None] + offsets[None, :]).ravel()
    values = np.abs(c_e_scattering(times, params, tol)) ** 2
    values = values.reshape(len(centers), samples_per_period)
    best = np.argmax(values, axis=1)
    rows = np.arange(len(centers))
    return TimeSeries(
        times.reshape(len(centers), samples_per_period)[rows, best],
        values[rows, best],
        "P_e_s",
        params,
    )


def power_law_slope(series: TimeSeries, window: Tuple[float, float]) -> float:
    """
    Slope of log P against log t inside `window`.
    """
    selected = series.probability().window(*window)
    positive = selected.values > 0
    if positive.sum() < 2:
        raise exceptions.ConfigError(
            "power-law window [{}, {}] holds fewer than 2 samples".format(*window)
        )
    slope, _intercept = np.polyfit(
        np.log(selected.times[positive]), np.log(selected.values[positive]), 1
    )
    return float(slope)


@dataclasses.dataclass(frozen=True)
class Oscillation:
    mean: float
    peak_to_trough: float
    frequency: float


def stationary_oscillation(params: ModelParams) -> Oscillation:
    """
    Long-time P_e^b = |c₊|⁴ + |c₋|⁴ + 2|c₊c₋|²cos((ω₊-ω₋)t).
    """
    lower, upper = bound_states.bound_states(params)
    return Oscillation(
        mean=lower.weight ** 2 + upper.weight ** 2,
        peak_to_trough=4 * lower.weight * upper.weight,
        frequency=upper.omega - lower.omega,
    )


def measure_oscillation(series: TimeSeries) -> Oscillation:
    """
    Mean, peak-to-trough and angular frequency of a sampled periodic signal,
    measured over the whole periods between its first and last maxima.
    """
    series = series.probability()
    peaks, _properties = signal.find_peaks(series.values)
    if len(peaks) < 2:
        raise exceptions.NumericalError(
            "fewer than two oscillation maxima in the sampled window"
        )
    first, last = peaks[0], peaks[-1]
    values = series.values[first:last]
    span = series.times[last] - series.times[first]
    return Oscillation(
        mean=float(values.mean()),
        peak_to_trough=float(values.max() - values.min()),
        frequency=float(2 * np.pi * (len(peaks) - 1) / span),
    )

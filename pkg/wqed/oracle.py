"""
Finite-chain reference: exact single-excitation evolution on N photon sites plus
the exciton, by dense eigendecomposition of the truncated Hamiltonian.
"""
import dataclasses
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from . import exceptions, fmt
from .dynamics import C_E, C_E_S, TimeSeries
from .field import FieldProfile
from .model import ModelParams, validate

MIN_SITES = 51
SAFETY_FACTOR = 0.9
RESIDUAL_TOLERANCE = 1e-10


@dataclasses.dataclass(frozen=True)
class FiniteChain:
    """
    Basis: photon sites x = -(N-1)/2 .. (N-1)/2 at indices 0..N-1, then the
    exciton at index N.
    """

    params: ModelParams
    n_sites: int
    h_matrix: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    # Components of the initial exciton state on the eigenvectors
    initial: np.ndarray

    @property
    def impurity_index(self) -> int:
        return self.n_sites // 2

    @property
    def exciton_index(self) -> int:
        return self.n_sites

    @property
    def hermitian(self) -> bool:
        return self.params.is_lossless

    @property
    def positions(self) -> np.ndarray:
        half = (self.n_sites - 1) // 2
        return np.arange(-half, half + 1)

    @property
    def t_boundary(self) -> float:
        return SAFETY_FACTOR * self.n_sites / (4 * self.params.j_hop)

    def out_of_band(self) -> np.ndarray:
        """
        Indices of eigenvalues outside the closed band.
        """
        bottom, top = self.params.band
        real = self.eigenvalues.real
        return np.nonzero((real < bottom) | (real > top))[0]

    def bound_energies(self) -> np.ndarray:
        energies = np.sort(self.eigenvalues[self.out_of_band()].real)
        if self.params.g > 0 and len(energies) != 2:
            fmt.echo_alert(
                "Expected two out-of-band eigenvalues, found {}".format(len(energies))
            )
        return energies

    def exciton_weight(self, index: int) -> float:
        return float(abs(self.eigenvectors[self.exciton_index, index]) ** 2)


def hamiltonian(params: ModelParams, n_sites: int) -> np.ndarray:
    validate(params)
    if n_sites % 2 == 0:
        raise exceptions.ConfigError("the chain needs an odd number of sites")
    if n_sites < MIN_SITES:
        raise exceptions.ConfigError(
            "the chain needs at least {} sites".format(MIN_SITES)
        )
    dtype = float if params.is_lossless else complex
    matrix = np.zeros((n_sites + 1, n_sites + 1), dtype=dtype)
    sites = np.arange(n_sites)
    matrix[sites, sites] = params.epsilon_tilde if not params.is_lossless else params.epsilon
    matrix[sites[:-1], sites[1:]] = -params.j_hop
    matrix[sites[1:], sites[:-1]] = -params.j_hop
    matrix[n_sites, n_sites] = params.delta_tilde if not params.is_lossless else params.delta
    center = n_sites // 2
    matrix[n_sites, center] = params.g
    matrix[center, n_sites] = params.g
    return matrix


def build(params: ModelParams, n_sites: int) -> FiniteChain:
    matrix = hamiltonian(params, n_sites)
    exciton = np.zeros(n_sites + 1)
    exciton[n_sites] = 1.0
    if params.is_lossless:
        eigenvalues, eigenvectors = linalg.eigh(matrix)
        initial = eigenvectors[n_sites].copy()
    else:
        eigenvalues, eigenvectors = linalg.eig(matrix)
        initial = linalg.solve(eigenvectors, exciton)
    residual = np.abs(matrix @ eigenvectors - eigenvectors * eigenvalues).max()
    if residual > RESIDUAL_TOLERANCE * max(params.j_hop, params.g, 1.0):
        raise exceptions.NumericalError(
            "eigendecomposition residual too large: {:.3e}".format(residual)
        )
    return FiniteChain(
        params=params,
        n_sites=n_sites,
        h_matrix=matrix,
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        initial=initial,
    )


def evolve(chain: FiniteChain, t: float) -> Tuple[complex, np.ndarray]:
    """
    (c_e, φ_x) at time t from the exciton initial state.
    """
    if t > chain.t_boundary:
        fmt.echo_alert(
            "t={} is past the boundary time {:.6g}: reflections from the chain ends reach the impurity".format(
                t, chain.t_boundary
            )
        )
    state = chain.eigenvectors @ (np.exp(-1j * chain.eigenvalues * t) * chain.initial)
    return complex(state[chain.exciton_index]), state[: chain.n_sites]


def exciton_amplitude(chain: FiniteChain, times: np.ndarray) -> np.ndarray:
    """
    c_e(t) on a whole time grid.
    """
    return _spectral_sum(chain, times, np.arange(len(chain.eigenvalues)))


def scattering_part(chain: FiniteChain, times: np.ndarray) -> np.ndarray:
    """
    c_e(t) without the out-of-band eigen-contributions.
    """
    out = set(chain.out_of_band().tolist())
    inside = np.array([m for m in range(len(chain.eigenvalues)) if m not in out])
    return _spectral_sum(chain, times, inside)


def _spectral_sum(
    chain: FiniteChain, times: np.ndarray, indices: np.ndarray
) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    weights = chain.eigenvectors[chain.exciton_index, indices] * chain.initial[indices]
    phases = np.exp(-1j * np.outer(times, chain.eigenvalues[indices]))
    return phases @ weights


@dataclasses.dataclass(frozen=True)
class Comparison:
    max_deviation: float
    late_deviation: float
    n_late: int

    def passed(self, tolerance: float) -> bool:
        return self.max_deviation < tolerance


def compare(chain: FiniteChain, analytic_series: TimeSeries) -> Comparison:
    """
    Sup-norm deviation of |c_e(t)| (or |c_e^s(t)|) between the chain and an
    analytic series. Times past the boundary are reported separately.
    """
    if analytic_series.label == C_E:
        if not chain.params.is_lossless:
            raise exceptions.UnsupportedError(
                "lossy chains can only be compared on the scattering part"
            )
        reference = exciton_amplitude(chain, analytic_series.times)
    elif analytic_series.label == C_E_S:
        reference = scattering_part(chain, analytic_series.times)
    else:
        raise exceptions.ConfigError(
            "cannot compare series '{}' against the chain".format(
                analytic_series.label
            )
        )
    deviation = np.abs(np.abs(reference) - np.abs(analytic_series.values))
    late = analytic_series.times > chain.t_boundary
    if late.any():
        fmt.echo_alert(
            "{} times past the boundary time {:.6g} are reported separately".format(
                int(late.sum()), chain.t_boundary
            )
        )
    return Comparison(
        max_deviation=float(deviation[~late].max()) if (~late).any() else 0.0,
        late_deviation=float(deviation[late].max()) if late.any() else 0.0,
        n_late=int(late.sum()),
    )


def compare_field(
    chain: FiniteChain, profile: FieldProfile, t: Optional[float] = None
) -> float:
    """
    Site-wise sup-norm deviation of |φ_x| on the sites shared by both.
    """
    t = profile.time if t is None else t
    _c_e, amplitudes = evolve(chain, t)
    positions = chain.positions
    shared = np.isin(profile.positions, positions)
    if not shared.any():
        raise exceptions.ConfigError("grid mismatch: no common sites")
    offset = (chain.n_sites - 1) // 2
    indices = profile.positions[shared] + offset
    return float(
        np.abs(np.abs(amplitudes[indices]) - np.abs(profile.amplitudes[shared])).max()
    )

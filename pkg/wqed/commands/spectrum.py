from typing import Any, Dict, List

import click
import numpy as np

from .. import bound_states, emission, runner, scattering, utils
from ..config import Grid
from ..model import dispersion
from .context import Context
from .options import grid_options, make_grid, model_options, output_options


@click.command(
    name="bound-energies", help="Bound-state energies ω₋, ω₊ along a coupling grid"
)
@model_options
@output_options
@grid_options("g", 0.01, 3.0, 100, "coupling g", log=False)
@click.pass_obj
def bound_energies(context: Context, **options: Any) -> None:
    run = context.run_config("bound-energies", options, {"g": make_grid("g", options)})
    rows = bound_states.sweep_bound_energies(run.reduced, run.reduced_energies("g"))
    run.write(
        [
            {
                "g": run.energy(g),
                "omega_minus": run.energy(omega_minus),
                "omega_plus": run.energy(omega_plus),
            }
            for g, omega_minus, omega_plus in rows
        ],
        ["g", "omega_minus", "omega_plus"],
    )


def _band_momenta(points: int) -> np.ndarray:
    """
    Interior momenta of (0, π) with both band edges appended.
    """
    interior = np.linspace(0, np.pi, points + 2)[1:-1]
    return np.concatenate([[0.0], interior, [np.pi]])


@click.command(help="Reflection probability R_k across the band")
@model_options
@output_options
@click.option(
    "--k-points", type=int, default=1001, show_default=True, help="Interior momenta"
)
@click.option(
    "--map", "as_map", is_flag=True, help="Scan the exciton energy along the Δ grid"
)
@grid_options("delta", -3.0, 3.0, 121, "exciton energy Δ")
@click.pass_obj
def reflection(context: Context, k_points: int, as_map: bool, **options: Any) -> None:
    grids = {"k": Grid(0.0, np.pi, k_points)}
    if as_map:
        grids["delta"] = make_grid("delta", options)
    run = context.run_config("reflection", options, grids)
    momenta = _band_momenta(k_points)
    omega = dispersion(momenta, run.reduced)
    deltas = run.reduced_energies("delta") if as_map else [run.reduced.delta]
    reflections = scattering.reflection_map(deltas, momenta, run.reduced)
    records: List[Dict[str, Any]] = []
    for delta, row in zip(deltas, reflections):
        for k, omega_k, big_r in zip(momenta, omega, row):
            record = {"k": float(k), "omega_k": run.energy(omega_k), "R": float(big_r)}
            if as_map:
                record = {"delta": run.energy(delta), **record}
            records.append(record)
    columns = ["k", "omega_k", "R"]
    run.write(records, ["delta"] + columns if as_map else columns)


@click.command(
    name="emission-spectrum", help="Emitted spectrum |c_k|² and mean photon energy"
)
@model_options
@output_options
@click.option(
    "--k-points", type=int, default=1000, show_default=True, help="Interior momenta"
)
@click.option(
    "--normalize", is_flag=True, help="Scale each spectrum to a unit maximum"
)
@click.option(
    "--map", "as_map", is_flag=True, help="Scan the exciton energy along the Δ grid"
)
@grid_options("delta", -1.9, 1.9, 39, "exciton energy Δ")
@click.pass_obj
def emission_spectrum(
    context: Context, k_points: int, normalize: bool, as_map: bool, **options: Any
) -> None:
    grids = {"k": Grid(0.0, np.pi, k_points)}
    if as_map:
        grids["delta"] = make_grid("delta", options)
    run = context.run_config("emission-spectrum", options, grids)
    deltas = run.reduced_energies("delta") if as_map else [run.reduced.delta]

    def compute(delta: float) -> emission.EmissionSpectrum:
        return emission.spectrum(
            run.with_reduced(delta=delta), k_points, normalize_max=normalize
        )

    spectra = runner.parallel_map(compute, deltas, run.threads)
    records = []
    for delta, spectrum in zip(deltas, spectra):
        for k, omega_k, weight in zip(spectrum.k, spectrum.omega, spectrum.weights):
            records.append(
                {
                    "delta": run.energy(delta),
                    "k": float(k),
                    "omega_k": run.energy(omega_k),
                    "weight": float(weight),
                    "omega_ph": run.energy(spectrum.omega_ph),
                }
            )
    run.write(records, ["delta", "k", "omega_k", "weight", "omega_ph"])


@click.command(
    name="emission-prob", help="Probability of emitting a flying photon vs coupling"
)
@model_options
@output_options
@click.option(
    "--deltas",
    default="-1.5,-1,-0.5,0",
    show_default=True,
    help="Comma-separated exciton energies Δ",
)
@grid_options("g", 0.01, 3.0, 100, "coupling g", log=False)
@click.pass_obj
def emission_prob(context: Context, deltas: str, **options: Any) -> None:
    run = context.run_config("emission-prob", options, {"g": make_grid("g", options)})
    delta_list = [value / run.params.j_hop for value in utils.split_list(deltas)]
    g_grid = run.reduced_energies("g")
    blocks = runner.parallel_map(
        lambda delta: emission.emission_probability_sweep(run.reduced, [delta], g_grid),
        delta_list,
        run.threads,
    )
    run.write(
        [
            {"delta": run.energy(delta), "g": run.energy(g), "p_emission": p_emission}
            for block in blocks
            for delta, g, p_emission in block
        ],
        ["delta", "g", "p_emission"],
    )


@click.command(
    name="emitted-energy", help="Mean emitted photon energy ω_ph vs exciton energy"
)
@model_options
@output_options
@click.option(
    "--gs",
    default="0.2,0.5,1,2",
    show_default=True,
    help="Comma-separated couplings g",
)
@grid_options("delta", -1.9, 1.9, 77, "exciton energy Δ")
@click.pass_obj
def emitted_energy(context: Context, gs: str, **options: Any) -> None:
    run = context.run_config(
        "emitted-energy", options, {"delta": make_grid("delta", options)}
    )
    g_list = [value / run.params.j_hop for value in utils.split_list(gs)]
    delta_grid = run.reduced_energies("delta")
    blocks = runner.parallel_map(
        lambda g: emission.emitted_energy_sweep(run.reduced, delta_grid, [g]),
        g_list,
        run.threads,
    )
    records = []
    for block in blocks:
        for g, delta, omega_ph in block:
            records.append(
                {
                    "g": run.energy(g),
                    "delta": run.energy(delta),
                    "omega_ph": run.energy(omega_ph),
                    "omega_ph_reduced": omega_ph - run.reduced.epsilon,
                }
            )
    run.write(records, ["g", "delta", "omega_ph", "omega_ph_reduced"])

import math
from typing import Any, Dict, Tuple

import click

from .. import dynamics, emission, exceptions, fmt, runner
from .context import Context
from .options import grid_options, make_grid, model_options, output_options

COLUMNS = ["delta", "g", "omega_minus", "omega_plus", "p_emission", "omega_ph"]
POLE_COLUMNS = ["tau0", "tau0_fgr", "delta_phi"]


@click.command(help="Cross-product scan of bound and emission observables over Δ × g")
@model_options
@output_options
@click.option(
    "--with-pole", is_flag=True, help="Add the lifetime τ₀ and Lamb shift δφ"
)
@grid_options("delta", -1.5, 0.0, 4, "exciton energy Δ")
@grid_options("g", 0.2, 2.0, 4, "coupling g", log=False)
@click.pass_obj
def sweep(context: Context, with_pole: bool, **options: Any) -> None:
    run = context.run_config(
        "sweep",
        options,
        {"delta": make_grid("delta", options), "g": make_grid("g", options)},
    )
    points = [
        (delta, g)
        for delta in run.reduced_energies("delta")
        for g in run.reduced_energies("g")
    ]

    def compute(point: Tuple[float, float]) -> Dict[str, Any]:
        delta, g = point
        params = run.with_reduced(delta=delta, g=g)
        coeffs = emission.coefficients(params)
        record: Dict[str, Any] = {
            "delta": run.energy(delta),
            "g": run.energy(g),
            "omega_minus": run.energy(coeffs.lower.omega),
            "omega_plus": run.energy(coeffs.upper.omega),
            "p_emission": coeffs.p_emission,
            "omega_ph": run.energy(emission.mean_emitted_energy(coeffs)),
        }
        if with_pole:
            try:
                analysis = dynamics.pole_analysis(params)
                record.update(
                    {
                        "tau0": analysis.tau0,
                        "tau0_fgr": float(analysis.tau0_fgr),
                        "delta_phi": run.energy(analysis.delta_phi),
                    }
                )
            except exceptions.NumericalError as e:
                fmt.echo_alert(
                    "no pole at delta={}, g={}: {}".format(record["delta"], record["g"], e)
                )
                record.update({column: math.nan for column in POLE_COLUMNS})
        return record

    records = runner.parallel_map(compute, points, run.threads)
    run.write(records, COLUMNS + (POLE_COLUMNS if with_pole else []))

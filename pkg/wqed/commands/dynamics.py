import math
from typing import Any, Dict, List, Optional

import click
import numpy as np

from .. import dynamics as wqed_dynamics
from .. import exceptions, field, fmt, kernel, runner
from ..config import Grid
from .context import Context
from .options import grid_options, make_grid, model_options, output_options


@click.command(help="Exciton probabilities P_e, P_e^s and P_e^b vs time (units 1/J)")
@model_options
@output_options
@click.option("--t-min", type=float, help="First time [default: 0, or 0.1 with --log-time]")
@click.option("--t-max", type=float, default=1000.0, show_default=True, help="Last time")
@click.option(
    "--t-points", type=int, default=400, show_default=True, help="Number of times"
)
@click.option("--log-time", is_flag=True, help="Logarithmic time spacing")
@click.pass_obj
def decay(
    context: Context,
    t_min: Optional[float],
    t_max: float,
    t_points: int,
    log_time: bool,
    **options: Any
) -> None:
    if t_min is None:
        t_min = 0.1 if log_time else 0.0
    run = context.run_config(
        "decay", options, {"t": Grid(t_min, t_max, t_points, log=log_time)}
    )
    series = wqed_dynamics.full_dynamics(run.reduced, run.grid("t"), run.tol)
    if series.p_e is None or series.p_e_b is None:
        run.write(
            [
                {"t": float(t), "P_e_s": float(p)}
                for t, p in zip(series.p_e_s.times, series.p_e_s.values)
            ],
            ["t", "P_e_s"],
        )
        return
    run.write(
        [
            {"t": float(t), "P_e": float(p), "P_e_s": float(p_s), "P_e_b": float(p_b)}
            for t, p, p_s, p_b in zip(
                series.p_e.times,
                series.p_e.values,
                series.p_e_s.values,
                series.p_e_b.values,
            )
        ],
        ["t", "P_e", "P_e_s", "P_e_b"],
    )


POLE_COLUMNS = [
    "delta",
    "tau0",
    "tau0_fgr",
    "tau0_ratio",
    "tau0_fgr_ratio",
    "delta_phi",
    "tau1_minus",
    "tau1_plus",
    "ill_conditioned",
]


@click.command(help="Exponential-regime lifetime τ₀ and Lamb shift δφ vs exciton energy")
@model_options
@output_options
@click.option(
    "--fit", is_flag=True, help="Add lifetimes and shifts fitted to the exact dynamics"
)
@grid_options("delta", -1.9, 1.9, 39, "exciton energy Δ")
@click.pass_obj
def pole(context: Context, fit: bool, **options: Any) -> None:
    run = context.run_config("pole", options, {"delta": make_grid("delta", options)})
    if run.reduced.g == 0:
        raise exceptions.ConfigError("pole analysis needs a nonzero coupling g")
    # Lifetimes are normalised by the golden-rule value at the band center
    reference = 1 / run.reduced.coupling ** 2

    def analyze(delta: float) -> Dict[str, Any]:
        params = run.with_reduced(delta=delta)
        analysis = wqed_dynamics.pole_analysis(params)
        record: Dict[str, Any] = {
            "delta": run.energy(delta),
            "tau0": analysis.tau0,
            "tau0_fgr": float(analysis.tau0_fgr),
            "tau0_ratio": analysis.tau0 / reference,
            "tau0_fgr_ratio": float(analysis.tau0_fgr) / reference,
            "delta_phi": run.energy(analysis.delta_phi),
            "tau1_minus": analysis.tau1_minus,
            "tau1_plus": analysis.tau1_plus,
            "ill_conditioned": analysis.ill_conditioned,
        }
        if fit:
            tau_fit, phi_fit = wqed_dynamics.fit_decay(params, analysis, run.tol)
            record["tau_fit"] = tau_fit
            record["delta_phi_fit"] = run.energy(phi_fit - params.delta)
        return record

    records = runner.parallel_map(analyze, run.reduced_energies("delta"), run.threads)
    run.write(records, POLE_COLUMNS + (["tau_fit", "delta_phi_fit"] if fit else []))


@click.command(name="kernel", help="Kernel F(y) and its approximations")
@model_options
@output_options
@grid_options("y", -1.0, 1.0, 2001, "y")
@click.pass_obj
def kernel_command(context: Context, **options: Any) -> None:
    run = context.run_config("kernel", options, {"y": make_grid("y", options)})
    y = np.asarray(run.grid("y"))
    if np.any(np.abs(y) > 1):
        raise exceptions.ConfigError("the kernel is defined on [-1, 1] only")
    values = np.asarray(kernel.kernel(y, run.reduced), dtype=complex)
    try:
        lorentzian = wqed_dynamics.lorentzian(
            y, wqed_dynamics.pole_analysis(run.reduced)
        )
    except exceptions.NumericalError as e:
        fmt.echo_alert("no pole approximation: {}".format(e))
        lorentzian = np.full(len(y), math.nan)
    no_coupling = kernel.kernel_no_coupling(y, run.reduced)
    edge = kernel.edge_kernel(y, run.reduced)
    records: List[Dict[str, Any]] = [
        {
            "y": float(y[index]),
            "F_re": float(values[index].real),
            "F_im": float(values[index].imag),
            "lorentzian": float(lorentzian[index]),
            "F_g0": float(no_coupling[index]),
            "G": float(edge[index]),
        }
        for index in range(len(y))
    ]
    run.write(records, ["y", "F_re", "F_im", "lorentzian", "F_g0", "G"])


@click.command(name="field", help="Emitted photon profile φ_x(t) on the chain sites")
@model_options
@output_options
@click.option("--t", "time", type=float, default=75.0, show_default=True, help="Time")
@click.option(
    "--half-width",
    type=int,
    help="Sites -L..L are computed [default: 1.5·2Jt + 50]",
)
@click.pass_obj
def field_command(
    context: Context, time: float, half_width: Optional[int], **options: Any
) -> None:
    run = context.run_config("field", options, {})
    profile = field.field_profile(time, run.reduced, half_width, run.tol)
    run.write(
        [
            {
                "x": int(x),
                "phi_re": float(amplitude.real),
                "phi_im": float(amplitude.imag),
                "prob": float(abs(amplitude) ** 2),
            }
            for x, amplitude in zip(profile.positions, profile.amplitudes)
        ],
        ["x", "phi_re", "phi_im", "prob"],
    )

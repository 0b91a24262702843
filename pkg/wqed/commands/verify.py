from typing import Any, Dict, List, Optional

import click

from .. import bound_states, dynamics, exceptions, field, fmt, oracle
from ..config import Grid
from .context import Context
from .options import model_options, output_options


@click.command(help="Compare the analytic pipeline against an exact finite chain")
@model_options
@output_options
@click.option("--n", "n_sites", type=int, help="Number of photon sites (odd)")
@click.option("--t-max", type=float, default=200.0, show_default=True, help="Last time")
@click.option(
    "--t-points", type=int, default=201, show_default=True, help="Number of times"
)
@click.option("--field-time", type=float, help="Also compare the field profile at this time")
@click.pass_obj
def verify(
    context: Context,
    n_sites: Optional[int],
    t_max: float,
    t_points: int,
    field_time: Optional[float],
    **options: Any
) -> None:
    run = context.run_config("verify", options, {"t": Grid(0.0, t_max, t_points)})
    if n_sites is None:
        n_sites = int(run.settings["ORACLE_SITES"])
    tolerance = run.config.tolerances["verify_tol"]
    params = run.reduced
    chain = oracle.build(params, n_sites)
    records: List[Dict[str, Any]] = []

    def check(name: str, value: float) -> None:
        records.append(
            {
                "check": name,
                "value": float(value),
                "tolerance": tolerance,
                "passed": bool(value < tolerance),
            }
        )

    if params.is_lossless and params.g > 0:
        lower, upper = bound_states.bound_states(params)
        energies = chain.bound_energies()
        if len(energies) == 2:
            check("omega_minus", abs(energies[0] - lower.omega))
            check("omega_plus", abs(energies[1] - upper.omega))
        else:
            check("bound_states_found", abs(len(energies) - 2))
        label = dynamics.C_E
    else:
        label = dynamics.C_E_S
    series = dynamics.amplitude_series(label, run.grid("t"), params, run.tol)
    comparison = oracle.compare(chain, series)
    check("|{}|".format(label), comparison.max_deviation)
    if field_time is not None:
        if not params.is_lossless:
            raise exceptions.UnsupportedError("field profiles need lossless parameters")
        half_width = min(
            field.default_half_width(field_time, params), (n_sites - 1) // 2
        )
        profile = field.field_profile(field_time, params, half_width, run.tol)
        check("|phi_x|", oracle.compare_field(chain, profile))
    run.write(records, ["check", "value", "tolerance", "passed"])

    failed = [record["check"] for record in records if not record["passed"]]
    if comparison.n_late:
        fmt.echo_info(
            "{} times past t_boundary={:.6g} (max deviation {:.3e}) were not checked".format(
                comparison.n_late, chain.t_boundary, comparison.late_deviation
            )
        )
    if failed:
        raise exceptions.VerificationError(
            "FAIL: {} above tolerance {}".format(", ".join(failed), tolerance)
        )
    fmt.echo(
        fmt.success(
            "PASS: max deviation {:.3e} < {}".format(
                max(record["value"] for record in records), tolerance
            )
        ),
        err=True,
    )

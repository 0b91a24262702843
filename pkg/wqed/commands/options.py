from typing import Any, Callable, Optional

import click

from ..config import Grid
from ..output import FORMATS

Decorator = Callable[[Callable[..., Any]], Callable[..., Any]]


def model_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """
    Model parameters, in the energy units of J. Unset options keep the configured
    value.
    """
    for option in reversed(
        [
            click.option("--delta", type=float, help="Exciton energy Δ"),
            click.option("--epsilon", type=float, help="Photon on-site energy ε"),
            click.option("--j", "j_hop", type=float, help="Hopping amplitude J"),
            click.option("--g", type=float, help="Coupling constant g"),
            click.option("--gamma-e", type=float, help="Exciton loss rate γ_e"),
            click.option("--gamma-c", type=float, help="Cavity loss rate γ_c"),
        ]
    ):
        func = option(func)
    return func


def output_options(func: Callable[..., Any]) -> Callable[..., Any]:
    for option in reversed(
        [
            click.option(
                "-o",
                "--output",
                default="-",
                show_default=True,
                type=click.Path(dir_okay=False, allow_dash=True),
                help="Output file ('-' for stdout)",
            ),
            click.option(
                "--format", "fmt", type=click.Choice(FORMATS), help="Output format"
            ),
            click.option(
                "--tol", type=float, help="Absolute quadrature tolerance"
            ),
            click.option(
                "--threads",
                type=int,
                help="Worker threads for sweeps (0: one per cpu; env: WQED_THREADS)",
            ),
        ]
    ):
        func = option(func)
    return func


def grid_options(
    name: str,
    start: float,
    stop: float,
    points: int,
    label: str,
    log: Optional[bool] = None,
    log_flag: Optional[str] = None,
) -> Decorator:
    """
    --<name>-min/--<name>-max/--<name>-points options, plus a logarithmic
    spacing flag (--log-<name> unless `log_flag` is given) when `log` is not None.
    """

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        options = [
            click.option(
                "--{}-min".format(name),
                "{}_min".format(name),
                type=float,
                default=start,
                show_default=True,
                help="Smallest {}".format(label),
            ),
            click.option(
                "--{}-max".format(name),
                "{}_max".format(name),
                type=float,
                default=stop,
                show_default=True,
                help="Largest {}".format(label),
            ),
            click.option(
                "--{}-points".format(name),
                "{}_points".format(name),
                type=int,
                default=points,
                show_default=True,
                help="Number of {} values".format(label),
            ),
        ]
        if log is not None:
            options.append(
                click.option(
                    log_flag or "--log-{}".format(name),
                    "log_{}".format(name),
                    is_flag=True,
                    default=log,
                    help="Logarithmic {} spacing".format(label),
                )
            )
        for option in reversed(options):
            func = option(func)
        return func

    return decorator


def make_grid(name: str, values: Any) -> Grid:
    return Grid(
        start=values["{}_min".format(name)],
        stop=values["{}_max".format(name)],
        points=values["{}_points".format(name)],
        log=bool(values.get("log_{}".format(name), False)),
    )

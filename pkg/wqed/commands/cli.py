#! /usr/bin/env python3
import json
import sys
from typing import List, Optional

import appdirs
import click

from .config import config_command
from .context import Context
from .dynamics import decay, field_command, kernel_command, pole
from .spectrum import (
    bound_energies,
    emission_prob,
    emission_spectrum,
    emitted_energy,
    reflection,
)
from .sweep import sweep
from .verify import verify
from ..__about__ import __version__
from .. import exceptions
from .. import fmt


def main() -> None:
    sys.exit(run())


def run(argv: Optional[List[str]] = None) -> int:
    """
    Dispatch a command line and return the process exit code. Failures are
    reported on stderr as a one-line json record.
    """
    try:
        result = cli.main(args=argv, prog_name="wqed", standalone_mode=False)
    except KeyboardInterrupt:
        return 1
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        fmt.echo_error("Aborted!")
        return 1
    except exceptions.WqedError as e:
        fmt.echo_error(error_record(e))
        return e.exit_code
    return result if isinstance(result, int) else 0


def error_record(error: exceptions.WqedError) -> str:
    return json.dumps(
        {
            "error": error.__class__.__name__,
            "message": str(error),
            "exit_code": error.exit_code,
        }
    )


@click.group(context_settings={"help_option_names": ["-h", "--help", "help"]})
@click.version_option(version=__version__)
@click.option(
    "-r",
    "--root",
    envvar="WQED_ROOT",
    default=appdirs.user_data_dir(appname="wqed"),
    show_default=True,
    type=click.Path(resolve_path=True),
    help="Root project directory (environment variable: WQED_ROOT)",
)
@click.option(
    "-c",
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, resolve_path=True),
    help="Extra configuration file, merged over $WQED_ROOT/config.yml",
)
@click.pass_context
def cli(context: click.Context, root: str, config_file: Optional[str]) -> None:
    context.obj = Context(root, config_file)


@click.command(help="Print this help", name="help")
def print_help() -> None:
    context = click.Context(cli)
    click.echo(cli.get_help(context))


cli.add_command(bound_energies)
cli.add_command(reflection)
cli.add_command(emission_spectrum)
cli.add_command(emission_prob)
cli.add_command(emitted_energy)
cli.add_command(field_command)
cli.add_command(decay)
cli.add_command(pole)
cli.add_command(kernel_command)
cli.add_command(verify)
cli.add_command(sweep)
cli.add_command(config_command)
cli.add_command(print_help)


if __name__ == "__main__":
    main()

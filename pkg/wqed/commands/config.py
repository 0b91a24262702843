from typing import Any, Dict, List

import click

from .. import config as wqed_config
from .. import exceptions
from .. import fmt
from .. import serialize
from .context import Context


@click.group(
    name="config",
    short_help="Configure default parameters",
    help="""Store default model and numerical parameters in $WQED_ROOT/config.yml""",
)
def config_command() -> None:
    pass


@click.command(help="Save configuration values")
@click.option(
    "-s",
    "--set",
    "set_vars",
    type=serialize.YamlParamType(),
    multiple=True,
    metavar="KEY=VAL",
    help="Set a configuration value (can be used multiple times)",
)
@click.option(
    "-U",
    "--unset",
    "unset_vars",
    multiple=True,
    help="Remove a configuration value (can be used multiple times)",
)
@click.pass_obj
def save(context: Context, set_vars: Dict[str, Any], unset_vars: List[str]) -> None:
    config = wqed_config.load_user(context.root)
    defaults = wqed_config.load_defaults()
    if set_vars:
        new_values = dict(set_vars)
        for key in new_values:
            if key not in defaults:
                raise exceptions.ConfigError("Unknown configuration key: {}".format(key))
        wqed_config.merge(config, new_values, force=True)
    for key in unset_vars:
        config.pop(key.upper(), None)
    # Fail before saving if the values cannot be used
    merged = dict(config)
    wqed_config.merge(merged, defaults)
    wqed_config.model_params(merged)
    wqed_config.tolerances(merged)
    wqed_config.save_config_file(context.root, config)


@click.command(help="Print the project root")
@click.pass_obj
def printroot(context: Context) -> None:
    click.echo(context.root)


@click.command(help="Print a configuration value")
@click.argument("key")
@click.pass_obj
def printvalue(context: Context, key: str) -> None:
    config = context.load_config()
    try:
        # Note that this will incorrectly print None values
        fmt.echo(str(config[key.upper()]))
    except KeyError as e:
        raise exceptions.ConfigError(
            "Missing configuration value: {}".format(key)
        ) from e


config_command.add_command(save)
config_command.add_command(printroot)
config_command.add_command(printvalue)

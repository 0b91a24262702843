import dataclasses
import os
from typing import Any, Dict, Optional, Tuple

import numpy as np

from . import exceptions, fmt, serialize, utils
from .model import ModelParams, validate
from .output import FORMATS

TEMPLATES_ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "templates")
PARAM_KEYS = {
    "DELTA": "delta",
    "EPSILON": "epsilon",
    "J": "j_hop",
    "G": "g",
    "GAMMA_E": "gamma_e",
    "GAMMA_C": "gamma_c",
}
TOLERANCE_KEYS = ("QUADRATURE_TOL", "VERIFY_TOL")


def load(root: str, config_file: Optional[str] = None) -> Dict[str, Any]:
    """
    Full configuration: defaults, then the project config.yml, then an optional
    extra config file, then WQED_* environment variables.
    """
    config, defaults = load_all(root, config_file)
    merge(config, defaults)
    return config


def load_all(
    root: str, config_file: Optional[str] = None
) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    """
    Return:
        current (dict): values set in config.yml, the extra config file and the
        environment
        defaults (dict): default values of the keys which might be missing
    """
    defaults = load_defaults()
    current = load_user(root)
    if config_file:
        merge(current, load_config_file(config_file), force=True)
    load_env(current, defaults)
    return current, defaults


def merge(
    config: Dict[str, Any], defaults: Dict[str, Any], force: bool = False
) -> None:
    """
    Add default values to the configuration. Existing keys are only overridden
    with `force`.
    """
    for key, value in defaults.items():
        if force or key not in config:
            config[key] = value


def load_defaults() -> Dict[str, Any]:
    return load_config_file(os.path.join(TEMPLATES_ROOT, "config.yml"))


def load_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            content = serialize.load(f.read())
    except OSError as e:
        raise exceptions.ConfigError(
            "Could not read configuration file {}: {}".format(path, e)
        ) from e
    if content is None:
        return {}
    if not isinstance(content, dict):
        raise exceptions.ConfigError(
            "Configuration file {} must hold a mapping".format(path)
        )
    return content


def load_user(root: str) -> Dict[str, Any]:
    path = config_path(root)
    if not os.path.exists(path):
        return {}
    return load_config_file(path)


def load_env(config: Dict[str, Any], defaults: Dict[str, Any]) -> None:
    for k in defaults.keys():
        env_var = "WQED_" + k
        if env_var in os.environ:
            config[k] = serialize.parse(os.environ[env_var])


def save_config_file(root: str, config: Dict[str, Any]) -> None:
    path = config_path(root)
    utils.ensure_file_directory_exists(path)
    with open(path, "w", encoding="utf-8") as of:
        serialize.dump(config, of)
    fmt.echo_info("Configuration saved to {}".format(path))


def config_path(root: str) -> str:
    return os.path.join(root, "config.yml")


def _number(config: Dict[str, Any], key: str) -> float:
    value = config[key]
    if isinstance(value, bool):
        raise exceptions.ConfigError("{} must be a number, got {}".format(key, value))
    try:
        return float(value)
    except (TypeError, ValueError) as e:
        raise exceptions.ConfigError(
            "{} must be a number, got {!r}".format(key, value)
        ) from e


def model_params(config: Dict[str, Any]) -> ModelParams:
    return validate(
        ModelParams(**{name: _number(config, key) for key, name in PARAM_KEYS.items()})
    )


def tolerances(config: Dict[str, Any]) -> Dict[str, float]:
    values = {key.lower(): _number(config, key) for key in TOLERANCE_KEYS}
    for key, value in values.items():
        if not value > 0:
            raise exceptions.ConfigError("{} must be positive".format(key))
    return values


def threads(config: Dict[str, Any]) -> int:
    value = config["THREADS"]
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise exceptions.ConfigError(
            "THREADS must be a non-negative integer, got {!r}".format(value)
        )
    return value


def output_format(config: Dict[str, Any]) -> str:
    value = config["FORMAT"]
    if value not in FORMATS:
        raise exceptions.ConfigError(
            "FORMAT must be one of {}, got {!r}".format(", ".join(FORMATS), value)
        )
    return str(value)


@dataclasses.dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    points: int
    log: bool = False

    def validate(self, name: str) -> "Grid":
        if self.points < 1:
            raise exceptions.ConfigError("{} grid is empty".format(name))
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            raise exceptions.ConfigError("{} grid bounds must be finite".format(name))
        if self.points > 1 and not self.start < self.stop:
            raise exceptions.ConfigError(
                "{} grid must be ascending: {} >= {}".format(
                    name, self.start, self.stop
                )
            )
        if self.log and self.start <= 0:
            raise exceptions.ConfigError(
                "logarithmic {} grid must start above 0".format(name)
            )
        return self

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([float(self.start)])
        if self.log:
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


@dataclasses.dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: ModelParams
    grids: Dict[str, Grid]
    output: str
    fmt: str
    tolerances: Dict[str, float]
    threads: int = 0

    def validate(self) -> "RunConfig":
        validate(self.params)
        for name, grid in self.grids.items():
            grid.validate(name)
        if self.fmt not in FORMATS:
            raise exceptions.ConfigError("unknown output format: {}".format(self.fmt))
        for key, value in self.tolerances.items():
            if not value > 0:
                raise exceptions.ConfigError("{} must be positive".format(key))
        return self

    def grid(self, name: str) -> np.ndarray:
        return self.grids[name].values()

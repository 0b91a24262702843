import os
from typing import List

import numpy as np

from . import exceptions


def ensure_file_directory_exists(path: str) -> None:
    """
    Create file's base directory if it does not exist.
    """
    directory = os.path.dirname(path)
    if not directory:
        return
    if os.path.isfile(directory):
        raise exceptions.ConfigError(
            "Attempting to create a directory, but a file with the same name already exists: {}".format(
                directory
            )
        )
    if os.path.isdir(path):
        raise exceptions.ConfigError(
            "Attempting to write to a file, but a directory with the same name already exists: {}".format(
                path
            )
        )
    if not os.path.exists(directory):
        os.makedirs(directory)


def next_power_of_two(n: float) -> int:
    return 1 << max(0, int(np.ceil(np.log2(max(n, 1.0)))))


def format_number(value: float) -> str:
    """
    Format a number with 17 significant digits, independent of the locale.
    """
    return format(value, ".17g")


def split_list(text: str) -> List[float]:
    """
    Parse "a,b,c" into floats.

    Ex: "-1.5,-1,0" -> [-1.5, -1.0, 0.0]
    """
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise exceptions.ConfigError(
            "Invalid comma-separated list of numbers: '{}'".format(text)
        ) from e

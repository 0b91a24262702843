"""
Plot-ready CSV and JSON outputs.
"""
import csv
import io
import json
import math
from typing import Any, Dict, List, Mapping, Sequence

import click

from . import exceptions, utils
from .__about__ import __version__
from .model import ModelParams

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)
STDOUT = "-"

Record = Mapping[str, Any]


def columns_of(records: Sequence[Record]) -> List[str]:
    """
    Column names shared by every record, in the order of the first one.
    """
    if not records:
        return []
    columns = list(records[0].keys())
    for index, record in enumerate(records):
        if list(record.keys()) != columns:
            raise exceptions.ConfigError(
                "record {} has columns {} instead of {}".format(
                    index, list(record.keys()), columns
                )
            )
    return columns


def _csv_value(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return utils.format_number(value)
    if isinstance(value, complex):
        raise exceptions.ConfigError("complex values must be split into re/im columns")
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, complex):
        raise exceptions.ConfigError("complex values must be split into re/im columns")
    return value


def render_csv(records: Sequence[Record], columns: Sequence[str]) -> str:
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_csv_value(record[column]) for column in columns])
    return stream.getvalue()


def render_json(records: Sequence[Record], meta: Dict[str, Any]) -> str:
    document = {
        "meta": meta,
        "data": [
            {key: _json_value(value) for key, value in record.items()}
            for record in records
        ],
    }
    return json.dumps(document, indent=2, allow_nan=False) + "\n"


def metadata(
    subcommand: str, params: ModelParams, tolerances: Dict[str, float]
) -> Dict[str, Any]:
    return {
        "subcommand": subcommand,
        "params": params.as_dict(),
        "version": __version__,
        "tolerances": dict(tolerances),
    }


def write_output(
    records: Sequence[Record],
    path: str,
    fmt: str,
    meta: Dict[str, Any],
    columns: Sequence[str] = (),
) -> None:
    """
    Write records to `path` ("-" for stdout) as csv or json.
    """
    if fmt not in FORMATS:
        raise exceptions.ConfigError("unknown output format: {}".format(fmt))
    columns = list(columns) or columns_of(records)
    if records and list(columns) != columns_of(records):
        raise exceptions.ConfigError(
            "records do not match the columns {}".format(list(columns))
        )
    if fmt == CSV:
        content = render_csv(records, columns)
    else:
        content = render_json(records, meta)
    if path == STDOUT:
        click.echo(content, nl=False)
        return
    utils.ensure_file_directory_exists(path)
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(content)
    except OSError as e:
        raise exceptions.ConfigError(
            "Could not write output file {}: {}".format(path, e)
        ) from e

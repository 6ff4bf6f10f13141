# -*- coding: UTF-8 -*-
from __future__ import annotations
from typing import Any
from os import makedirs
from os.path import isfile, isdir, expanduser, splitext, join as join_path
import numpy as np
import psutil
import yaml
from orjson import loads, dumps, OPT_INDENT_2, OPT_SORT_KEYS, OPT_SERIALIZE_NUMPY
from pandas import DataFrame, read_csv, read_feather
from staggerwh import errors

__all__ = [
    "is_path_file",
    "validate_file",
    "ensure_dir",
    "load_config_file",
    "dump_json",
    "write_table",
    "read_table",
    "complex_columns",
    "runtime_info",
    "memory_rss_mb",
    "library_versions",
]


# Utils: path -------------------------------------------------------------------------------------
def is_path_file(path: str | Any) -> bool:
    """Check if a path exists and is a file `<bool>`."""
    try:
        return isfile(path)
    except Exception:
        return False


def validate_file(path: str | Any) -> str:
    """Validate a file and return the expanded path `<str>`."""
    try:
        path = expanduser(path)
    except Exception as err:
        raise errors.ConfigError(
            "File path {} {} is not valid.".format(repr(path), type(path))
        ) from err
    if not is_path_file(path):
        raise errors.ConfigFileNotFoundError("File '{}' not exists.".format(path))
    return path


def ensure_dir(path: str) -> str:
    """Create the directory if missing and return the expanded path `<str>`."""
    path = expanduser(path)
    if not isdir(path):
        makedirs(path, exist_ok=True)
    return path


# Utils: config -----------------------------------------------------------------------------------
def load_config_file(config_file: str) -> dict:
    """Load a local YAML or JSON config file `<dict>`.

    The format follows the extension: `.json` is parsed with orjson,
    `.yaml` / `.yml` with `yaml.safe_load`.
    """
    config_file = validate_file(config_file)
    ext = splitext(config_file)[1].lower()
    try:
        if ext == ".json":
            with open(config_file, "rb") as file:
                data = loads(file.read())
        elif ext in (".yaml", ".yml"):
            with open(config_file, "r", encoding="utf-8") as file:
                data = yaml.safe_load(file)
        else:
            raise errors.ConfigError(
                "Unsupported config extension '{}', expects "
                "'.json', '.yaml' or '.yml'.".format(ext)
            )
    except errors.ConfigError:
        raise
    except Exception as err:
        raise errors.ConfigError(
            "Failed to parse config file '{}': {}".format(config_file, err)
        ) from err
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise errors.ConfigSchemaError(
            "Config file '{}' must hold a mapping at the top level, "
            "instead got {}.".format(config_file, type(data).__name__)
        )
    return data


# Utils: json -------------------------------------------------------------------------------------
def _default(obj: Any) -> Any:
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.generic):
        return _default(obj.item())
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError("Type is not JSON serializable: {}".format(type(obj).__name__))


def dump_json(data: dict, path: str | None = None) -> bytes:
    """Serialize `data` with stable key order, optionally writing to `path`.

    Complex values are written as `{"re": ..., "im": ...}`.
    """
    raw = dumps(
        data,
        default=_default,
        option=OPT_INDENT_2 | OPT_SORT_KEYS | OPT_SERIALIZE_NUMPY,
    )
    if path is not None:
        with open(path, "wb") as file:
            file.write(raw)
    return raw


# Utils: tables -----------------------------------------------------------------------------------
def complex_columns(values: np.ndarray, prefix: str = "") -> dict[str, np.ndarray]:
    """Split complex values into `re`, `im` and `abs` columns `<dict>`."""
    values = np.asarray(values, dtype=complex)
    return {
        prefix + "re": values.real,
        prefix + "im": values.imag,
        prefix + "abs": np.abs(values),
    }


def write_table(frame: DataFrame, directory: str, name: str, fmt: str = "csv") -> str:
    """Write a table into `directory` and return the file path `<str>`.

    :param frame: `<DataFrame>` The table to write.
    :param directory: `<str>` The output directory (created when missing).
    :param name: `<str>` The file name without extension.
    :param fmt: `<str>` Either `'csv'` or `'feather'`.
    """
    directory = ensure_dir(directory)
    if fmt == "csv":
        path = join_path(directory, name + ".csv")
        frame.to_csv(path, index=False, float_format="%.17g")
    elif fmt == "feather":
        path = join_path(directory, name + ".feather")
        frame.reset_index(drop=True).to_feather(path)
    else:
        raise errors.ConfigSchemaError(
            "Invalid table format {}, expects 'csv' or 'feather'.".format(repr(fmt))
        )
    return path


def read_table(path: str) -> DataFrame:
    """Read a CSV or feather table by extension `<DataFrame>`."""
    path = validate_file(path)
    if path.endswith(".feather"):
        return read_feather(path)
    return read_csv(path)


# Utils: runtime ----------------------------------------------------------------------------------
def runtime_info() -> dict[str, Any]:
    """Host facts that do not change between repeated runs `<dict>`."""
    return {
        "cpu_count": psutil.cpu_count(logical=True),
        "cpu_count_physical": psutil.cpu_count(logical=False),
    }


def memory_rss_mb() -> float:
    """Resident memory of the current process in MiB `<float>`."""
    return psutil.Process().memory_info().rss / 1048576.0


def library_versions() -> dict[str, str]:
    """Versions of the numeric stack `<dict>`."""
    import scipy
    import pandas
    from staggerwh import __version__

    return {
        "staggerwh": __version__,
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "pandas": pandas.__version__,
    }

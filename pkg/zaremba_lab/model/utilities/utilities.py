#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Module providing several utility functions needed across the whole program.

Functions:
    - read_config: Function reading a YAML experiment config.
    - fraction_str / parse_fraction: Exact rationals as "num/den" strings.
    - to_serializable: Converts rationals, tuples and numpy scalars for JSON.
    - canonical_json: Deterministic JSON rendering.
    - config_hash: SHA-256 over the canonical JSON of a config.
    - split_str_to_list: Function splitting comma separated CLI values.
    - handler: Exception handler logging uncaught exceptions.
    - signal_handler: Function recognizing kill signals and raising SystemExit.
    - init_logger: Function initializing the global logger.
"""
import hashlib
import json
import logging
import os
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
import oyaml as yaml

import _paths
from model.utilities.kill_switch import KillSwitch
from model.utilities.time_helper import TimeHelper


def read_config(file: Union[str, Path]) -> Dict[str, Any]:
    """
    @param file: Path of a YAML config.
    @type file: Union[str, Path]

    @return: The parsed key/value pairs; an empty file gives an empty dict.
    @rtype: dict[str, Any]

    @raise FileNotFoundError: If the file does not exist.
    """
    with open(file, "r", encoding="UTF-8") as config_yaml:
        return yaml.load(config_yaml, Loader=yaml.FullLoader) or dict()


def fraction_str(value: Union[Fraction, int]) -> str:
    """
    @return: "num/den" in lowest terms, also for integers ("3/1").
    """
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """
    Inverse of fraction_str.
    """
    numerator, _, denominator = text.partition("/")
    return Fraction(int(numerator), int(denominator or 1))


def to_serializable(value: Any) -> Any:
    """
    Recursively converts a value into JSON compatible types. Rationals become "num/den" strings, floats keep their
    shortest round-trip repr.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return fraction_str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(key): to_serializable(item) for key, item in value.items()}
    if hasattr(value, "_asdict"):
        return to_serializable(value._asdict())
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_serializable(item) for item in items]
    if isinstance(value, Path):
        return str(value)
    return str(value)


def canonical_json(value: Any, indent: Optional[int] = 2) -> str:
    """
    @return: UTF-8 JSON with sorted keys; equal inputs give byte-identical output.
    """
    return json.dumps(to_serializable(value), sort_keys=True, indent=indent, ensure_ascii=False)


def config_hash(config: Dict[str, Any]) -> str:
    """
    @return: Hex SHA-256 of the compact canonical JSON of the config.
    """
    return hashlib.sha256(canonical_json(config, indent=None).encode("UTF-8")).hexdigest()


def split_str_to_list(string: str, splitter: str = ",") -> List[str]:
    """
    Splits a string into a list of string.

    @param string: A long string.
    @param splitter: The splitting parameter.

    @return: List of strings.
    """
    items = string.rsplit(splitter)

    # remove possible blanks from strings
    return [item.replace(" ", "") for item in items if item.strip()]


def handler(ex_type: Any, ex_value: Any, ex_traceback: Any) -> None:
    """
    Method to catch and log unexpected exceptions.

    @param ex_type: Exception type
    @param ex_value: Values causing the exception
    @param ex_traceback: Traceback attribute of the exception
    """
    logging.error("Uncaught exception: %s: %s", ex_type, ex_value, exc_info=(ex_type, ex_value, ex_traceback))


def signal_handler(signal_number: Any, stack: Any) -> None:
    """
    Helper function to stop a scan. When CTRL+C is hit, the KillSwitch stops further shard submissions and the
    program shuts down.
    """
    KillSwitch().kill()
    print("\nExiting program.")
    logging.info("Received signal %s, exiting.", signal_number)
    raise SystemExit(1)


def init_logger(path: Union[str, Path], config: Dict[str, Any]) -> None:
    """
    Initializes the logger, specifies the path to the logging files, the logging massage as well as the logging level.

    @param path: Base directory of the log directory. By default the CWD.
    @param config: The merged experiment config (log_enable, log_dir, log_level).
    """
    if not config.get("log_enable", True):
        logging.disable()
        return

    dirname = Path(path).joinpath(config.get("log_dir", "log/"))
    if not os.path.exists(dirname):
        os.makedirs(dirname)

    logging.basicConfig(
        filename=dirname.joinpath(f"{TimeHelper.log_stamp()}.log"),
        level=config.get("log_level", "ERROR"))

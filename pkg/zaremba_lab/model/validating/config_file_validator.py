#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Validator classes for experiment configs. A file is loaded, parsed and then checked for unknown keys, types,
value ranges and the relations between the quotient bounds. main.py validates the merged config before any run.

Classes:
    - ConfigFileValidator(
        - LoadFileValidator
        - LoadYamlValidator
        - ConfigYamlValidator(
            - ConfigKeyValidator
            - ConfigTypeValidator
            - ConfigValueValidator
            - ConfigRelationValidator
        )
    )
"""
import logging
from typing import Any, Dict, Optional, Text, Union

import oyaml as yaml
from pandas import Interval
from typeguard import check_type

from model.experiments.report import DEFAULT_CAPS, ExperimentConfig
from model.validating.base import CompositeValidator, ProcessingValidator, Validator
from model.validating.errors import KeyNotIntendedError, WrongRelationError, WrongTypeError, WrongValueError

LOG_LEVELS = [logging.getLevelName(level) for level in (logging.CRITICAL, logging.ERROR, logging.WARNING,
                                                          logging.INFO, logging.DEBUG, logging.NOTSET)]

OPEN_UNIT = Interval(0, 1, "neither")
REAL = Union[int, float]
POSITIVE = Interval(1, float("inf"), "left")


class LoadFileValidator(ProcessingValidator):
    """
    Validator for opening a file and reading it as Text.
    """

    stage = "file"

    def process(self) -> Text:
        with open(self.value, "r", encoding="UTF-8") as file:
            return file.read()

    def validate(self) -> bool:
        try:
            super().validate()
        except IOError as io_error:
            return self.failed(io_error)
        return self.passed(f"Loaded {self.value}.")


class LoadYamlValidator(ProcessingValidator):
    """
    Validator for parsing a YAML String. An empty document is an empty config.
    """

    stage = "yaml"

    def process(self) -> Dict[Text, Any]:
        return yaml.safe_load(self.value) or dict()

    def validate(self) -> bool:
        try:
            super().validate()
        except yaml.YAMLError as yaml_error:
            return self.failed(yaml_error)
        if not isinstance(self.result, dict):
            return self.failed(WrongTypeError(dict, type(self.result), "config"))
        return self.passed("YAML parsing successful.")


class ConfigFileValidator(CompositeValidator):
    """
    Validator for a config file.

    Attributes:
        value:
            The file path.
    """

    value: Text

    def validate(self) -> bool:
        load_file = LoadFileValidator(self.value)
        is_file_loaded = load_file.validate()
        self.append_report(load_file)
        if not is_file_loaded:
            return False

        load_yaml = LoadYamlValidator(load_file)
        is_yaml_loaded = load_yaml.validate()
        self.append_report(load_yaml)
        if not is_yaml_loaded:
            return False

        config = ConfigYamlValidator(load_yaml.get_result_value())
        can_continue = config.validate()
        for report in config.report.reports:
            self.append_report(report)
        return can_continue


class ConfigYamlValidator(CompositeValidator):
    """
    Validates a config dict, e.g. the merged config of a CLI run.
    """

    def __init__(self, value: Optional[Dict[Text, Any]]):
        value = value or dict()
        super().__init__(value,
                         ConfigKeyValidator(value),
                         ConfigTypeValidator(value),
                         ConfigValueValidator(value),
                         ConfigRelationValidator(value))


class ConfigKeyValidator(Validator):
    """
    Rejects keys that are not config keys. Missing keys take their defaults.
    """

    stage = "keys"

    def validate(self) -> bool:
        try:
            for key in self.value:
                if key not in ExperimentConfig.keys():
                    raise KeyNotIntendedError(ExperimentConfig.keys(), key)
            for key in self.value.get("caps") or dict():
                if key not in DEFAULT_CAPS:
                    raise KeyNotIntendedError(DEFAULT_CAPS.keys(), key, "caps")

        except KeyNotIntendedError as error:
            return self.failed(error)

        return self.passed("Config contains known keys only.")


class ConfigTypeValidator(Validator):
    """
    Checks the value types with typeguard.
    """

    stage = "types"

    types = {"tau": REAL,
             "M": int,
             "M_star": int,
             "Mtilde": int,
             "H_exponent": REAL,
             "Nstar_exponent": REAL,
             "interval_exponent": REAL,
             "omega": REAL,
             "kappa": REAL,
             "eta": REAL,
             "gamma": REAL,
             "K_max": int,
             "seed": int,
             "shards": int,
             "record_timing": bool,
             "caps": Dict[str, int],
             "log_enable": bool,
             "log_level": str,
             "log_dir": str,
             "show_progress": bool}

    def validate(self) -> bool:
        try:
            for key, val in self.value.items():
                expected = ConfigTypeValidator.types.get(key)
                if expected is None:
                    continue
                try:
                    check_type(key, val, expected)
                except TypeError as error:
                    raise WrongTypeError(expected, type(val), key) from error
                if expected is int and isinstance(val, bool):
                    raise WrongTypeError(expected, type(val), key)

        except WrongTypeError as error:
            return self.failed(error)

        return self.passed("Config types are valid.")


class ConfigValueValidator(Validator):
    """
    Checks value ranges: exponents in (0, 1), τ in (0, 1/2), bounds and caps positive, known log levels.
    """

    stage = "values"

    ranges = {"tau": Interval(0, 0.5, "neither"),
              "M": POSITIVE,
              "M_star": POSITIVE,
              "Mtilde": POSITIVE,
              "H_exponent": OPEN_UNIT,
              "Nstar_exponent": OPEN_UNIT,
              "interval_exponent": OPEN_UNIT,
              "omega": OPEN_UNIT,
              "kappa": OPEN_UNIT,
              "eta": OPEN_UNIT,
              "gamma": OPEN_UNIT,
              "K_max": POSITIVE,
              "seed": Interval(0, float("inf"), "left"),
              "shards": POSITIVE,
              "log_level": LOG_LEVELS}

    def validate(self) -> bool:
        try:
            for key, val in ConfigValueValidator.ranges.items():
                if key in self.value and self.value.get(key) not in val:
                    raise WrongValueError(val, self.value.get(key), key)

            for key, val in (self.value.get("caps") or dict()).items():
                if val not in POSITIVE:
                    raise WrongValueError(POSITIVE, val, f"caps.{key}")

        except WrongValueError as error:
            return self.failed(error)

        return self.passed("Config values are valid.")


class ConfigRelationValidator(Validator):
    """
    Checks M ≤ M_star ≤ Mtilde and M ≤ Mtilde, taking defaults for missing keys.
    """

    stage = "relations"

    def validate(self) -> bool:
        config = ExperimentConfig.from_dict({key: val for key, val in self.value.items()
                                             if key in ("M", "M_star", "Mtilde")})
        try:
            if config.M_star < config.M:
                raise WrongRelationError("M <= M_star", M=config.M, M_star=config.M_star)
            if config.Mtilde < max(config.M, config.M_star):
                raise WrongRelationError("Mtilde >= max(M, M_star)", M=config.M, M_star=config.M_star,
                                         Mtilde=config.Mtilde)

        except WrongRelationError as error:
            return self.failed(error)

        return self.passed("Quotient bounds are consistent.")

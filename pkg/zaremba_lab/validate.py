#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
A command line tool to validate experiment configs.

How to use:
python validate.py [<config_file>]
"""

import sys
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import _paths
from model.validating.base import CompositeReport, Report
from model.validating.config_file_validator import ConfigFileValidator, ConfigYamlValidator
from model.utilities.settings import TEMPLATE_NAME


def report_error(report: Report) -> None:
    """
    Prints the failing findings of a report, one per line.
    """
    for finding in report.failures():
        print(finding)


class ConfigValidator:
    """
    Class to validate experiment configs, either as file or as merged dict.
    """

    @staticmethod
    def validate_config_file(file: Union[str, Path]) -> Tuple[bool, Union[Report, CompositeReport]]:
        """
        @param file: Path of a YAML config.
        @return: Validation result and report.
        """
        validator = ConfigFileValidator(str(file))
        return validator.validate(), validator.report

    @staticmethod
    def validate_config(config: Dict[str, Any]) -> Tuple[bool, Union[Report, CompositeReport]]:
        """
        @param config: A config dict, e.g. the file values merged with command line flags.
        @return: Validation result and report.
        """
        validator = ConfigYamlValidator(config)
        return validator.validate(), validator.report


def validate_config_file(file: Optional[Union[str, Path]] = None) -> bool:
    """
    Validates a config file and prints a human readable result.

    @param file: The config, the packaged template by default.
    @return: True if the config is valid.
    """
    file = file or _paths.all_paths.get("template_path").joinpath(TEMPLATE_NAME)
    is_valid, report = ConfigValidator.validate_config_file(file)
    if not is_valid:
        report_error(report)
    print(f"Config: {file}, Valid: {is_valid}")
    return is_valid


if __name__ == "__main__":
    sys.exit(int(not validate_config_file(sys.argv[1] if len(sys.argv) > 1 else None)))

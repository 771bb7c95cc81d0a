#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module contains possibilities to adjust an experiment config file.

Classes:
 - Settings: Read, update and reset access to a config file.
"""
import logging
import os
import shutil
from pathlib import Path
from typing import Any, Dict, Optional, Union

import oyaml as yaml

import _paths

TEMPLATE_NAME = "experiment_config.yaml"


class Settings:
    """
    Class to get and manipulate the settings of an experiment config. Used as context manager, the original file
    content is restored on exit.
    """

    def __init__(self, path: Optional[Union[str, Path]] = None) -> None:
        """
        @param path: The config file; the packaged template is copied there if it does not exist yet.
        """
        self.path = Path(path) if path else Path(os.getcwd()).joinpath(TEMPLATE_NAME)
        if not self.path.exists():
            self.reset()
        self.copy: Optional[Dict[str, Any]] = None

    def get(self) -> Dict[str, Any]:
        """
        @return: The current config.
        """
        with open(self.path, encoding="UTF-8") as file:
            return yaml.load(file, Loader=yaml.FullLoader) or dict()

    def _dump(self, config: Dict[str, Any]) -> None:
        with open(self.path, "w", encoding="UTF-8") as file:
            yaml.dump(config, file)

    def set(self, key: str, val: Any, block: Optional[str] = None) -> None:
        """
        Sets a new value in the config file.

        @param key: Config key.
        @param val: Value to be set.
        @param block: Nested block the key lives in, e.g. "caps".
        @raise KeyError: If the block does not exist.
        """
        config = self.get()
        if block is None:
            config[key] = val
        else:
            config[block].update({key: val})
        self._dump(config)
        logging.info("Config %s updated: %s = %s.", self.path, key, val)

    def reset(self) -> None:
        """
        Replaces the file with the packaged template holding all defaults.
        """
        source = _paths.all_paths.get("template_path").joinpath(TEMPLATE_NAME)
        if self.path.exists():
            os.remove(self.path)
        if self.path.parent:
            os.makedirs(self.path.parent, exist_ok=True)
        shutil.copy(source, self.path)

    def __enter__(self) -> "Settings":
        self.copy = self.get()
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self._dump(self.copy)

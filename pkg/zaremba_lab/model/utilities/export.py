#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Module for writing results into .csv or .json files. Both exporters tag every artifact with the config hash and
keep their output byte-identical for equal inputs.

Classes:
    - CsvExport
    - JsonExport
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from model.utilities.utilities import canonical_json, to_serializable


class CsvExport:
    """
    Writes tabular results through pandas. Rationals are expected as "num/den" strings already; floats are
    written with their shortest round-trip repr. A trailing config_hash column is appended.
    """

    def __init__(self, directory: Union[str, Path], config_hash: Optional[str] = None):
        """
        @param directory: Output directory, created on demand.
        @param config_hash: Value of the trailing config_hash column.
        """
        self.path = Path(directory)
        self.config_hash = config_hash

    def frame(self, rows: Union[pd.DataFrame, List[Dict[str, Any]]], columns: Optional[List[str]] = None) -> pd.DataFrame:
        """
        @return: The rows as DataFrame including the config_hash column.
        """
        dataframe = rows.copy() if isinstance(rows, pd.DataFrame) else pd.DataFrame(
            [{key: to_serializable(value) for key, value in row.items()} for row in rows], columns=columns)
        if self.config_hash is not None:
            dataframe["config_hash"] = self.config_hash
        return dataframe

    def export(self,
               filename: str,
               rows: Union[pd.DataFrame, List[Dict[str, Any]]],
               columns: Optional[List[str]] = None) -> Path:
        """
        Writes a CSV with header row.

        @param filename: Name of the file inside the output directory.
        @param rows: Records or a DataFrame.
        @param columns: Column order for records; required to get a header for an empty result.
        @return: Path of the written file.
        """
        os.makedirs(self.path, exist_ok=True)
        output_path = self.path.joinpath(filename if filename.endswith(".csv") else f"{filename}.csv")
        self.frame(rows, columns).to_csv(output_path, index=False, float_format=None, lineterminator="\n")
        logging.info("Exported %s.", output_path)
        return output_path


class JsonExport:
    """
    Writes reports as UTF-8 JSON with sorted keys and two spaces indentation.
    """

    def __init__(self, directory: Union[str, Path], config_hash: Optional[str] = None):
        self.path = Path(directory)
        self.config_hash = config_hash

    def export(self, filename: str, payload: Any) -> Path:
        """
        @param filename: Name of the file inside the output directory.
        @param payload: Dict, NamedTuple or dataclass dict. A config_hash key is added to dict payloads.
        @return: Path of the written file.
        """
        os.makedirs(self.path, exist_ok=True)
        output_path = self.path.joinpath(filename if filename.endswith(".json") else f"{filename}.json")
        payload = to_serializable(payload)
        if isinstance(payload, dict) and self.config_hash is not None:
            payload.setdefault("config_hash", self.config_hash)
        with open(output_path, "w", encoding="UTF-8") as file:
            file.write(canonical_json(payload))
            file.write("\n")
        logging.info("Exported %s.", output_path)
        return output_path

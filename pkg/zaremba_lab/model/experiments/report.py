#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Module containing the records every experiment run produces: the merged configuration, the counting report and
the run manifest.

Classes:
    - ExperimentConfig: Tunables of all experiments, defaults included; carries the config hash.
    - ExperimentReport: Result of one counting run.
    - RunManifest: Inputs, artifacts and wall time of one CLI run.
"""
import logging
import os
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from model.utilities.time_helper import TimeHelper
from model.utilities.utilities import canonical_json, config_hash, fraction_str

DEFAULT_CAPS = {"group_cap": 20_000_000,
                "node_cap": 5_000_000,
                "product_cap": 20_000_000,
                "sampler_budget": 200}

CSV_COLUMNS = ["q", "t", "M", "N", "sizeA", "sizeB", "lhs", "main_num", "main_den", "rel_err", "norm_err",
               "seed", "ms"]

# Keys that change how a run executes but never what it writes.
RUNTIME_KEYS = ("shards", "log_enable", "log_level", "log_dir", "show_progress")


@dataclass
class ExperimentConfig:
    """
    All tunables. Exponents are relative to N (H = N^H_exponent etc.), M_star and Mtilde follow M unless they are
    given explicitly.
    """
    tau: float = 0.15
    M: int = 5
    M_star: int = 50
    Mtilde: int = 50
    H_exponent: float = 0.45
    Nstar_exponent: float = 0.01
    interval_exponent: float = 0.1
    omega: float = 0.1
    kappa: float = 0.25
    eta: float = 0.1
    gamma: float = 0.1
    K_max: int = 40
    seed: int = 0
    shards: int = 1
    record_timing: bool = False
    caps: Dict[str, int] = field(default_factory=lambda: dict(DEFAULT_CAPS))
    log_enable: bool = True
    log_level: str = "ERROR"
    log_dir: str = "log/"
    show_progress: bool = False

    @classmethod
    def keys(cls) -> List[str]:
        """
        @return: All known config keys.
        """
        return [item.name for item in fields(cls)]

    @classmethod
    def from_dict(cls, values: Optional[Dict[str, Any]] = None, **overrides: Any) -> "ExperimentConfig":
        """
        Merges file values and overrides (e.g. CLI flags) onto the defaults. Unknown keys are ignored here; the
        ConfigKeyValidator reports them.

        @param values: Values read from a config file.
        @param overrides: Values taking precedence; None values are skipped.
        @return: The merged config.
        """
        merged = dict(values or dict())
        merged.update({key: value for key, value in overrides.items() if value is not None})
        known = {key: value for key, value in merged.items() if key in cls.keys()}

        if "M" in known and "M_star" not in known:
            known["M_star"] = 10 * known["M"]
        if "Mtilde" not in known and ("M" in known or "M_star" in known):
            known["Mtilde"] = max(known.get("M", cls.M), known.get("M_star", cls.M_star))

        caps = dict(DEFAULT_CAPS)
        caps.update(known.pop("caps", None) or dict())
        return cls(caps=caps, **known)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @property
    def hash(self) -> str:
        """
        @return: SHA-256 of the canonical JSON of the config, without the RUNTIME_KEYS.
        """
        return config_hash({key: value for key, value in self.to_dict().items() if key not in RUNTIME_KEYS})

    def cap(self, name: str) -> int:
        return int(self.caps.get(name, DEFAULT_CAPS[name]))


@dataclass
class ExperimentReport:
    """
    One counting run: instance echo, exact count, exact main term and the error statistics. relative_error is
    |lhs − main| / main and None when main = 0 (degenerate run).
    """
    q: int
    t: int
    M: int
    N: int
    control: str
    seed: int
    size_A: int
    size_B: int
    lhs: int
    main: Fraction
    prime_main: Fraction
    relative_error: Optional[float]
    normalized_error: Optional[float]
    degenerate: bool = False
    runtime_ms: int = 0
    config_hash: Optional[str] = None
    probes: Optional[Dict[str, Any]] = None

    @property
    def key(self) -> Tuple[int, int, int]:
        return self.q, self.N, self.M

    @property
    def error(self) -> Fraction:
        """
        @return: |lhs − main| as exact rational.
        """
        return abs(self.lhs - self.main)

    def to_row(self) -> Dict[str, Any]:
        """
        @return: One CSV row in the CSV_COLUMNS layout.
        """
        return {"q": self.q,
                "t": self.t,
                "M": self.M,
                "N": self.N,
                "sizeA": self.size_A,
                "sizeB": self.size_B,
                "lhs": self.lhs,
                "main_num": self.main.numerator,
                "main_den": self.main.denominator,
                "rel_err": self.relative_error,
                "norm_err": self.normalized_error,
                "seed": self.seed,
                "ms": self.runtime_ms}

    def to_dict(self) -> Dict[str, Any]:
        report = asdict(self)
        report["main"] = fraction_str(self.main)
        report["prime_main"] = fraction_str(self.prime_main)
        report["error"] = fraction_str(self.error)
        if report["probes"] is None:
            del report["probes"]
        return report


@dataclass
class RunManifest:
    """
    Written with status "running" before a run and finalized afterwards. The only artifact with wall clock data.
    """
    subcommand: str
    config_hash: str
    inputs: Dict[str, Any]
    status: str = "running"
    started: str = field(default_factory=TimeHelper.now_iso)
    artifacts: List[str] = field(default_factory=list)
    wall_ms: int = 0
    exit_code: Optional[int] = None

    def __post_init__(self) -> None:
        self._start = TimeHelper.counter()

    def path(self, directory: Union[str, Path]) -> Path:
        return Path(directory).joinpath(f"{self.subcommand}_manifest.json")

    def write(self, directory: Union[str, Path]) -> Path:
        """
        @param directory: Output directory, created on demand.
        @return: Path of the manifest.
        """
        os.makedirs(directory, exist_ok=True)
        output_path = self.path(directory)
        with open(output_path, "w", encoding="UTF-8") as file:
            file.write(canonical_json(asdict(self)))
            file.write("\n")
        return output_path

    def finalize(self,
                 directory: Union[str, Path],
                 status: str,
                 exit_code: int,
                 artifacts: Optional[List[Path]] = None) -> Path:
        """
        Stores status, exit code, artifacts and wall time and rewrites the manifest.
        """
        self.status = status
        self.exit_code = exit_code
        self.artifacts = sorted(str(artifact) for artifact in artifacts or list())
        self.wall_ms = TimeHelper.elapsed_ms(self._start)
        logging.info("Run %s finished with status %s after %s ms.", self.subcommand, status, self.wall_ms)
        return self.write(directory)

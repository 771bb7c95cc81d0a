#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
This module is a wrapper around the whole package. It exports the config template to the current working directory
of the user and runs the subcommands, either from Python or through the console script `zlab`.
"""
import os
import shutil
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

# noinspection PyUnresolvedReferences
try:
    from zaremba_lab import _paths
except (ImportError, Exception):
    import _paths
import main
from model.utilities.kill_switch import KillSwitch
from model.utilities.settings import TEMPLATE_NAME, Settings  # pylint: disable=unused-import
from model.utilities.utilities import read_config


def get_config_template(directory: Union[Path, str, None] = None) -> Path:
    """
    Copies the config template holding all defaults into a directory. An existing file is replaced.

    @param directory: Target directory, the CWD by default.
    @return: Path of the copy.
    """
    destination = Path(directory or os.getcwd()).joinpath(TEMPLATE_NAME)
    if destination.exists():
        os.remove(destination)
    shutil.copy(_paths.all_paths.get("template_path").joinpath(TEMPLATE_NAME), destination)
    print(f"Created new config template. \nLocation: '{os.path.realpath(destination)}'.")
    return destination


def get_config(filename: Optional[Union[Path, str]] = None) -> Dict[str, Any]:
    """
    Parses a config file.

    @param filename: The config file, the packaged template by default.
    @return: The parsed configuration.
    """
    return read_config(filename or _paths.all_paths.get("template_path").joinpath(TEMPLATE_NAME))


def _options(**options: Any) -> List[str]:
    arguments = list()
    for key, value in options.items():
        if value is None:
            continue
        if isinstance(value, (list, tuple)):
            value = ",".join(str(item) for item in value)
        arguments.extend([f"--{key.replace('_', '-')}", str(value)])
    return arguments


def run(command: str, kill_after: Optional[int] = None, **options: Any) -> int:
    """
    Runs a subcommand.

    Example: run("verify", q_from=2, q_to=1000, max_quotient=5) is `zlab verify --from 2 --to 1000 --max-quotient 5`.

    @param command: One of verify, count, expand and dimension.
    @param kill_after: Stops shard submission after this many seconds.
    @param options: Command line options by name; q_from and q_to map to --from and --to.
    @return: The exit code.
    """
    renamed = {"q_from": "from", "q_to": "to", "set_kind": "set"}
    options = {renamed.get(key, key): value for key, value in options.items()}

    if kill_after and isinstance(kill_after, int):
        KillSwitch().set_timer(kill_after)
    try:
        return main.run([command, *_options(**options)], os.getcwd())
    finally:
        KillSwitch().reset()


def cli(argv: Optional[Sequence[str]] = None) -> None:
    """
    Entry point of the console script.
    """
    sys.exit(main.run(argv))


if __name__ == "__main__":
    cli()

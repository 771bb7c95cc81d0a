#!/usr/bin/env python
# -*- coding: utf-8 -*-
# type: ignore[no-untyped-def]
"""
End to end tests of the subcommands through main.run and the runner wrapper.
"""
import json

import pandas as pd
import pytest

import main
import runner
from model.experiments.report import CSV_COLUMNS
from model.utilities.kill_switch import KillSwitch
from model.utilities.settings import TEMPLATE_NAME


@pytest.fixture(name="out")
def out_fixture(tmp_path, monkeypatch):
    """Output directory; logs go below tmp_path as well."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("ZLAB_THREADS", raising=False)
    yield tmp_path.joinpath("results")
    KillSwitch().reset()


def run(out, *argv):
    return main.run([*argv, "--out", str(out)], str(out.parent))


def read_json(path):
    return json.loads(path.read_text(encoding="UTF-8"))


class TestVerify:
    """
    zlab verify.
    """

    def test_range_holds(self, out):
        """Every q ≤ 200 has a numerator with quotients ≤ 5."""
        assert run(out, "verify", "--from", "2", "--to", "200") == main.EXIT_OK
        frame = pd.read_csv(out.joinpath("verify_2_200_M5.csv"))
        assert list(frame.columns) == ["q", "M_min", "witness", "config_hash"]
        assert len(frame) == 199
        assert read_json(out.joinpath("verify_manifest.json"))["status"] == "ok"

    def test_summary(self, out):
        """The JSON summary carries the M_min histogram and the fitted constant C."""
        assert run(out, "verify", "--from", "2", "--to", "200") == main.EXIT_OK
        summary = read_json(out.joinpath("verify_2_200_M5.json"))
        assert summary["failures"] == []
        assert summary["coverage"] == 200
        assert sum(summary["histogram"].values()) == 199
        assert set(summary["histogram"]) <= {"1", "2", "3", "4", "5"}
        assert summary["korobov"]["C"] > 0
        assert summary["korobov"]["samples"] == 199

    def test_failure_exits_one(self, out):
        """q = 6 needs M = 5."""
        assert run(out, "verify", "--from", "6", "--to", "6", "--max-quotient", "4") == main.EXIT_FAILURE
        row = pd.read_csv(out.joinpath("verify_6_6_M4.csv")).iloc[0]
        assert (row["q"], row["M_min"], row["witness"]) == (6, 5, 5)
        manifest = read_json(out.joinpath("verify_manifest.json"))
        assert (manifest["status"], manifest["exit_code"]) == ("failed", 1)

    def test_empty_range_is_a_usage_error(self, out):
        """--from above --to."""
        assert run(out, "verify", "--from", "5", "--to", "4") == main.EXIT_USAGE

    def test_cache(self, out, tmp_path):
        """A second run resumes from the cache, also with other shards; a corrupted cache is a usage error."""
        cache = tmp_path.joinpath("verify.cache")
        assert run(out, "verify", "--from", "2", "--to", "100", "--cache", str(cache)) == main.EXIT_OK
        first = out.joinpath("verify_2_100_M5.csv").read_bytes()
        assert run(out, "verify", "--from", "2", "--to", "100", "--cache", str(cache)) == main.EXIT_OK
        assert out.joinpath("verify_2_100_M5.csv").read_bytes() == first
        assert run(out, "verify", "--from", "2", "--to", "100", "--cache", str(cache), "--shards", "2") == main.EXIT_OK
        assert out.joinpath("verify_2_100_M5.csv").read_bytes() == first

        with open(cache, "a", encoding="UTF-8") as file:
            file.write("101,2,3,0\n")
        assert run(out, "verify", "--from", "2", "--to", "101", "--cache", str(cache)) == main.EXIT_USAGE


class TestCount:
    """
    zlab count.
    """

    def test_full_control(self, out):
        """The full control has relative error 0."""
        assert run(out, "count", "--q", "101", "--control", "full") == main.EXIT_OK
        report = read_json(out.joinpath("count_q101_full.json"))
        assert report["relative_error"] == 0
        assert report["lhs"] == report["N"] * 100
        assert "probes" not in report
        assert "config_hash" in report

        frame = pd.read_csv(out.joinpath("count_q101_full.csv"))
        assert list(frame.columns) == CSV_COLUMNS + ["config_hash"]

    def test_sweep(self, out):
        """One row per N; the full control has no error to fit an exponent to."""
        assert run(out, "count", "--q", "101", "--control", "full", "--sweep-N", "3,5,7") == main.EXIT_OK
        frame = pd.read_csv(out.joinpath("count_q101_full_sweep.csv"))
        assert list(frame["N"]) == [3, 5, 7]
        assert list(frame["lhs"]) == [300, 500, 700]
        payload = read_json(out.joinpath("count_q101_full_sweep.json"))
        assert len(payload["reports"]) == 3
        assert payload["error_exponent"] is None

    def test_fractal_control_is_reproducible(self, out):
        """Equal seeds and configs give byte-identical reports."""
        assert run(out, "count", "--q", "1009", "--seed", "1") == main.EXIT_OK
        first = out.joinpath("count_q1009_fractal.json").read_bytes()
        assert run(out, "count", "--q", "1009", "--seed", "1") == main.EXIT_OK
        assert out.joinpath("count_q1009_fractal.json").read_bytes() == first

    def test_json_path(self, out, tmp_path):
        """--json chooses the report location."""
        target = tmp_path.joinpath("reports", "count.json")
        assert run(out, "count", "--q", "101", "--control", "random", "--N", "9", "--json", str(target)) == 0
        assert read_json(target)["control"] == "random"

    def test_inconsistent_parameters(self, out):
        """t²N far above q is refused."""
        assert run(out, "count", "--q", "11", "--N", "100") == main.EXIT_USAGE

    def test_invalid_config(self, out, tmp_path):
        """A config file outside the ranges is refused before the run."""
        config = tmp_path.joinpath("config.yaml")
        config.write_text("tau: 0.9\n", encoding="UTF-8")
        assert run(out, "count", "--q", "101", "--config", str(config)) == main.EXIT_USAGE
        assert not out.joinpath("count_manifest.json").exists()

    def test_config_file(self, out, tmp_path):
        """Values from the file end up in the report."""
        config = tmp_path.joinpath("config.yaml")
        config.write_text("seed: 4\nM: 3\n", encoding="UTF-8")
        assert run(out, "count", "--q", "101", "--control", "full", "--config", str(config)) == main.EXIT_OK
        report = read_json(out.joinpath("count_q101_full.json"))
        assert (report["seed"], report["M"]) == (4, 3)


class TestExpand:
    """
    zlab expand.
    """

    def test_triple(self, out):
        """The whole group does not grow."""
        assert run(out, "expand", "--q", "5", "--set", "coset", "--level", "1") == main.EXIT_OK
        payload = read_json(out.joinpath("expand_q5_coset_triple.json"))
        assert payload["set_size"] == 120
        assert payload["result"]["triple"]["size3"] == 120

    def test_generate(self, out):
        """The generators g_j cover a congruence coset."""
        assert run(out, "expand", "--q", "6", "--probe", "generate", "--N", "6") == main.EXIT_OK
        payload = read_json(out.joinpath("expand_q6_S_generate.json"))
        assert "k_cover" in payload["result"]

    def test_flatten_and_nonconcentration(self, out):
        """Both probes write their report."""
        assert run(out, "expand", "--q", "7", "--set", "random", "--size", "10", "--probe", "flatten") == 0
        assert run(out, "expand", "--q", "7", "--set", "random", "--size", "10", "--probe", "nonconc") == 0
        assert out.joinpath("expand_q7_random_flatten.json").exists()
        assert read_json(out.joinpath("expand_q7_random_nonconc.json"))["result"]["levels"] == [7]

    def test_group_cap(self, out):
        """Cosets beyond the group cap exit with 3."""
        assert run(out, "expand", "--q", "400", "--set", "coset", "--level", "1") == main.EXIT_CAP

    def test_large_modulus(self, out):
        """A modulus far beyond the group cap is refused before any set is built."""
        assert run(out, "expand", "--q", "10000019", "--probe", "triple") == main.EXIT_CAP
        assert read_json(out.joinpath("expand_manifest.json"))["exit_code"] == 3


class TestDimension:
    """
    zlab dimension.
    """

    def test_dimension(self, out):
        """One row per M and one plot point per sample."""
        assert run(out, "dimension", "--M", "1,2", "--t-samples", "10,20,40") == main.EXIT_OK
        rows = pd.read_csv(out.joinpath("dimension.csv"))
        assert list(rows["M"]) == [1, 2]
        assert bool(rows.iloc[0]["degenerate"])
        assert len(pd.read_csv(out.joinpath("dimension_plot_data.csv"))) == 6

    def test_too_few_samples(self, out):
        """At least three samples are needed."""
        assert run(out, "dimension", "--t-samples", "10,20") == main.EXIT_USAGE


class TestRunner:
    """
    The Python wrapper around the subcommands.
    """

    def test_run(self, out):
        """Keyword options are mapped onto flags."""
        assert runner.run("verify", q_from=2, q_to=30, max_quotient=5, out=str(out)) == 0
        assert out.joinpath("verify_2_30_M5.csv").exists()

    def test_config_template(self, tmp_path):
        """The template is copied and parsed."""
        path = runner.get_config_template(tmp_path)
        assert path.name == TEMPLATE_NAME
        assert runner.get_config(path)["M"] == 5

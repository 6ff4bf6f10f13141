# -*- coding: UTF-8 -*-
import copy
import numpy as np
import orjson
import pytest
import yaml
from pandas import read_csv
from staggerwh import errors
from staggerwh.cli import RunConfig, run
from staggerwh.settings import Tolerances
from conftest import desk_scenario

BASE = {
    "scenario": {
        "omega_re": 0.9,
        "omega_im": 0.1,
        "theta_deg": 25.0,
        "kind": "crack",
        "N": 3,
        "M": 2,
    },
    "numerics": {"samples": 1024},
    "outputs": {"x_min": -4, "x_max": 4, "y_min": -2, "y_max": 5},
}


def _config(**blocks) -> dict:
    data = copy.deepcopy(BASE)
    for name, values in blocks.items():
        data.setdefault(name, {}).update(values)
    return data


def _write_yaml(tmp_path, data: dict, name: str = "run.yaml") -> str:
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data), encoding="utf-8")
    return str(path)


class TestRunConfig:
    def test_defaults(self) -> None:
        config = RunConfig({"scenario": BASE["scenario"]})
        assert config.scenario == desk_scenario("crack", 2, n_sep=3)
        assert config.contour_radius is None
        assert config.oracle_ng == 93
        assert config.table_format == "csv"
        assert config.emit == set()
        assert config.tolerances["wh_residual"] == 1e-8

    @pytest.mark.parametrize(
        "blocks",
        [
            {"scenario": {"kind": "slit"}},
            {"scenario": {"N": 0}},
            {"scenario": {"M": 1.5}},
            {"scenario": {"extra": 1}},
            {"numerics": {"samples": 1000}},
            {"numerics": {"samples": 128}},
            {"numerics": {"contour_radius": -1.0}},
            {"numerics": {"oracle_solver": "jacobi"}},
            {"numerics": {"tolerances": {"flip": 0.0}}},
            {"numerics": {"tolerances": {"unknown": 1.0}}},
            {"outputs": {"x_min": 5, "x_max": 4}},
            {"outputs": {"table_format": "xlsx"}},
            {"outputs": {"emit": ["everything"]}},
            {"report": {}},
        ],
    )
    def test_invalid(self, blocks: dict) -> None:
        with pytest.raises(errors.ConfigSchemaError):
            RunConfig(_config(**blocks))

    def test_missing_scenario(self) -> None:
        with pytest.raises(errors.ConfigSchemaError):
            RunConfig({"numerics": {}})

    def test_tolerances(self) -> None:
        config = RunConfig(_config(numerics={"tolerances": {"wh_residual": 1e-6}}))
        config.apply_tolerances()
        assert Tolerances.WH_RESIDUAL == 1e-6
        # new configs start from the shipped defaults again
        assert RunConfig(_config()).tolerances["wh_residual"] == 1e-8

    def test_roundtrip(self) -> None:
        config = RunConfig(_config(outputs={"emit": ["split_fields"]}))
        data = config.to_dict()
        assert data["numerics"]["contour_radius"] == "auto"
        assert data["outputs"]["emit"] == ["split_fields"]
        assert data["scenario"]["N"] == 3

    def test_file_formats(self, tmp_path) -> None:
        yaml_path = _write_yaml(tmp_path, _config())
        json_path = tmp_path / "run.json"
        json_path.write_bytes(orjson.dumps(_config()))
        assert RunConfig.from_file(yaml_path).scenario == RunConfig.from_file(str(json_path)).scenario
        with pytest.raises(errors.ConfigFileNotFoundError):
            RunConfig.from_file(str(tmp_path / "missing.yaml"))
        other = tmp_path / "run.toml"
        other.write_text("x = 1")
        with pytest.raises(errors.ConfigError):
            RunConfig.from_file(str(other))


class TestCommands:
    def test_solve(self, tmp_path) -> None:
        out = tmp_path / "out"
        code = run(["solve", "--config", _write_yaml(tmp_path, _config()), "--out", str(out), "--quiet"])
        assert code == 0
        segment = read_csv(out / "segment.csv")
        assert list(segment.columns) == ["x", "re", "im", "abs"]
        assert list(segment["x"]) == [0, 1]
        manifest = orjson.loads((out / "manifest.json").read_bytes())
        assert manifest["command"] == "solve"
        assert manifest["files"] == ["segment.csv"]
        assert manifest["diagnostics"]["reduced"]["residual"] < 1e-8

    def test_field(self, tmp_path) -> None:
        out = tmp_path / "out"
        data = _config(outputs={"emit": ["split_fields"]})
        code = run(["field", "--config", _write_yaml(tmp_path, data), "--out", str(out), "--quiet"])
        assert code == 0
        field = read_csv(out / "field.csv")
        assert len(field) == 9 * 8
        aligned = read_csv(out / "field_aligned.csv")
        perturbation = read_csv(out / "field_perturbation.csv")
        total = aligned["re"] + perturbation["re"]
        assert np.allclose(total, field["re"], atol=1e-8)

    def test_factorize(self, tmp_path) -> None:
        out = tmp_path / "out"
        data = _config(outputs={"emit": ["kernel_table", "factor_tables"]})
        code = run(["factorize", "--config", _write_yaml(tmp_path, data), "--out", str(out), "--quiet"])
        assert code == 0
        manifest = orjson.loads((out / "manifest.json").read_bytes())
        assert "kernel.csv" in manifest["files"]
        assert "factor_alpha_plus.csv" in manifest["files"]
        assert manifest["factor_residuals"]["alpha"] < 1e-8
        assert manifest["factor_residuals"]["Lk"] < 1e-8

    def test_factorize_single_function(self, tmp_path) -> None:
        out = tmp_path / "out"
        data = _config(outputs={"emit": ["factor_tables"]})
        argv = ["factorize", "--config", _write_yaml(tmp_path, data), "--out", str(out), "--quiet"]
        code = run(argv + ["--function", "Lc", "--N", "4"])
        assert code == 0
        manifest = orjson.loads((out / "manifest.json").read_bytes())
        assert manifest["files"] == ["factor_Lc_minus.csv", "factor_Lc_plus.csv"]
        assert sorted(out.iterdir()) == sorted(out / name for name in manifest["files"] + ["manifest.json"])
        assert list(manifest["factor_residuals"]) == ["Lc"]
        assert manifest["factor_residuals"]["Lc"] < 1e-8
        assert manifest["N"] == 4
        assert manifest["config"]["scenario"]["N"] == 3
        assert list(read_csv(out / "factor_Lc_plus.csv").columns) == ["m", "re", "im"]

    def test_factorize_rejects_function(self, tmp_path) -> None:
        argv = ["factorize", "--config", _write_yaml(tmp_path, _config()), "--function", "gamma"]
        with pytest.raises(SystemExit) as err:
            run(argv)
        assert err.value.code == 2

    def test_factorize_invalid_separation(self, tmp_path) -> None:
        out = tmp_path / "out"
        argv = ["factorize", "--config", _write_yaml(tmp_path, _config()), "--out", str(out), "--quiet"]
        assert run(argv + ["--function", "alpha", "--N", "0"]) == 2
        assert orjson.loads((out / "error.json").read_bytes())["error"] == "ConfigSchemaError"

    def test_config_error(self, tmp_path, capsys) -> None:
        out = tmp_path / "out"
        data = _config(scenario={"kind": "slit"})
        code = run(["solve", "--config", _write_yaml(tmp_path, data), "--out", str(out), "--quiet"])
        assert code == 2
        payload = orjson.loads((out / "error.json").read_bytes())
        assert payload["error"] == "ConfigSchemaError"
        assert payload["exit_code"] == 2
        assert "ConfigSchemaError" in capsys.readouterr().err

    def test_numeric_error(self, tmp_path) -> None:
        out = tmp_path / "out"
        data = _config(numerics={"contour_radius": 5.0})
        code = run(["solve", "--config", _write_yaml(tmp_path, data), "--out", str(out), "--quiet"])
        assert code == 1
        payload = orjson.loads((out / "error.json").read_bytes())
        assert payload["error"] == "InvalidContourError"

    def test_compare(self, tmp_path, synth_of) -> None:
        frame = synth_of("crack", 3).field((-3, 3, 0, 2)).to_frame()
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        frame.to_csv(first, index=False, float_format="%.17g")
        frame.to_csv(second, index=False, float_format="%.17g")
        out = tmp_path / "cmp"
        assert run(["compare", str(first), str(second), "--out", str(out), "--quiet"]) == 0
        table = read_csv(out / "compare_field.csv")
        assert len(table) == 21
        assert table["abs_err"].max() == 0.0
        manifest = orjson.loads((out / "manifest.json").read_bytes())
        assert manifest["summary"]["max_rel_err"] == 0.0

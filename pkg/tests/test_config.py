import json

import numpy as np
import pytest

from groupmask.config import ConfigError, load_config, load_plan

from conftest import SMALL_COUNTS, write_config, write_plan


class TestLoadConfig:
    def test_full_document(self, small_dir):
        config = load_config(small_dir / "config.json")
        assert config.parameter.attribute == "REGNIT"
        assert config.parameter.m == 8
        assert config.main.label == "young males"
        assert config.basis.name == "db1"
        assert config.level == 1
        assert config.superset.kind == "explicit"
        assert np.array_equal(config.superset.quantities, SMALL_COUNTS.population)
        assert config.microfile_path.name == "small.csv"

    def test_relative_microfile_path(self, small_dir):
        config = load_config(small_dir / "config.json")
        assert config.microfile_path.parent == small_dir.resolve()

    def test_missing_field(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"microfile": "x.csv"}))
        with pytest.raises(ConfigError, match="missing 'attributes'"):
            load_config(path)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(path)

    def test_superset_length_checked(self, tmp_path):
        path = write_config(tmp_path / "c.json", SMALL_COUNTS, microfile="m.csv")
        doc = json.loads(path.read_text())
        doc["superset"]["quantities"] = [1, 2, 3]
        path.write_text(json.dumps(doc))
        with pytest.raises(ConfigError, match="superset has 3"):
            load_config(path)

    def test_unknown_superset_kind(self, tmp_path):
        path = write_config(tmp_path / "c.json", SMALL_COUNTS, microfile="m.csv")
        doc = json.loads(path.read_text())
        doc["superset"] = {"kind": "mystery"}
        path.write_text(json.dumps(doc))
        with pytest.raises(ConfigError, match="unknown superset kind"):
            load_config(path)

    def test_bad_basis_surfaced_as_config_error(self, tmp_path):
        path = write_config(tmp_path / "c.json", SMALL_COUNTS, microfile="m.csv", basis="db9")
        with pytest.raises(ConfigError, match="unknown wavelet basis"):
            load_config(path)

    def test_selection_superset(self, tmp_path):
        path = write_config(tmp_path / "c.json", SMALL_COUNTS, microfile="m.csv")
        doc = json.loads(path.read_text())
        doc["superset"] = {
            "kind": "selection",
            "attributes": ["AGE"],
            "combinations": [["22"]],
        }
        path.write_text(json.dumps(doc))
        config = load_config(path)
        assert config.superset.kind == "selection"
        assert config.superset.selection.attributes == ("AGE",)


class TestLoadPlan:
    def test_full_plan(self, tmp_path):
        path = write_plan(tmp_path / "p.json", [0.0032, 0.0018, 0.0019, 0.0018, 0.0009])
        plan = load_plan(path)
        assert plan.basis.name == "db1"
        assert plan.level == 2
        assert plan.alpha == 1.0
        assert len(plan.coefficients) == 5

    def test_alpha_defaults_to_one(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps({"basis": "db2", "level": 1, "seed": 3, "coefficients": [0.1]}))
        assert load_plan(path).alpha == 1.0

    def test_missing_coefficients(self, tmp_path):
        path = tmp_path / "p.json"
        path.write_text(json.dumps({"basis": "db1", "level": 2, "seed": 3}))
        with pytest.raises(ConfigError, match="missing 'coefficients'"):
            load_plan(path)

    def test_round_trip_payload(self, tmp_path):
        path = write_plan(tmp_path / "p.json", [0.25], basis="db2", level=1, alpha=0.5, seed=7)
        plan = load_plan(path)
        assert plan.to_json() == {
            "basis": "db2",
            "level": 1,
            "alpha": 0.5,
            "seed": 7,
            "coefficients": [0.25],
        }

import io
import json
from pathlib import Path

import numpy as np
import pytest

from groupmask import load_microfile, save_microfile, schema
from groupmask.datasets import ITALY_2001, RegionalCounts, build_demo_microfile


@pytest.fixture(scope="session")
def italy_counts():
    return ITALY_2001


@pytest.fixture(scope="session")
def italy_microfile():
    return build_demo_microfile()


@pytest.fixture(scope="session")
def italy_dir(tmp_path_factory, italy_microfile):
    """Directory holding the Italy demo microfile and its extraction config."""
    root = tmp_path_factory.mktemp("italy")
    save_microfile(italy_microfile, str(root / "italy.csv"))
    write_config(root / "config.json", ITALY_2001, microfile="italy.csv")
    return root


SMALL_COUNTS = RegionalCounts(
    regions=("r1", "r2", "r3", "r4", "r5", "r6", "r7", "r8"),
    population=(1000, 800, 1200, 600, 900, 700, 1100, 500),
    young_males=(40, 30, 70, 20, 45, 25, 80, 15),
    young_females=(35, 32, 60, 22, 40, 28, 50, 18),
)


@pytest.fixture(scope="session")
def small_counts():
    return SMALL_COUNTS


@pytest.fixture
def small_dir(tmp_path, small_counts):
    save_microfile(build_demo_microfile(small_counts), str(tmp_path / "small.csv"))
    write_config(tmp_path / "config.json", small_counts, microfile="small.csv", level=1)
    return tmp_path


def write_config(
    path: Path,
    counts: RegionalCounts,
    microfile: str,
    basis="db1",
    level=2,
    seed=20100627,
    alpha=None,
):
    doc = {
        "microfile": microfile,
        "attributes": [
            {"name": "SEX", "codes": ["1", "2"]},
            {"name": "AGE", "codes": ["22"]},
            {"name": "REGNIT", "codes": list(counts.regions)},
        ],
        "parameter": {"attribute": "REGNIT", "order": list(counts.regions)},
        "main": {
            "attributes": ["SEX", "AGE"],
            "combinations": [["1", "22"]],
            "label": "young males",
        },
        "subordinate": {
            "attributes": ["SEX", "AGE"],
            "combinations": [["2", "22"]],
            "label": "young females",
        },
        "superset": {"kind": "explicit", "quantities": list(counts.population)},
        "basis": basis,
        "level": level,
        "seed": seed,
        "top_extremums": 5,
    }
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return path


def write_plan(path: Path, coefficients, basis="db1", level=2, alpha=1.0, seed=20100627):
    doc = {
        "basis": basis,
        "level": level,
        "alpha": alpha,
        "seed": seed,
        "coefficients": [float(c) for c in coefficients],
    }
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return path


TINY_SCHEMA = schema([
    ("SEX", ["1", "2"]),
    ("AGE", ["21", "22"]),
    ("REGNIT", ["n", "s", "e", "w"]),
])

TINY_ROWS = [
    ("1", "22", "n"),
    ("2", "22", "n"),
    ("1", "21", "s"),
    ("1", "22", "s"),
    ("2", "21", "e"),
    ("1", "22", "e"),
]


@pytest.fixture
def tiny_microfile():
    text = "SEX,AGE,REGNIT\n" + "\n".join(",".join(r) for r in TINY_ROWS) + "\n"
    return load_microfile(io.StringIO(text), TINY_SCHEMA)

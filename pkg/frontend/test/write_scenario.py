"""Write the Italy demo scenario (microfile + config + plan) into a directory.

Usage: python3 write_scenario.py <target-dir>
"""

import json
import sys
from pathlib import Path

from groupmask.datasets import ITALY_2001, build_demo_microfile
from groupmask.microdata import save_microfile

target = Path(sys.argv[1])
target.mkdir(parents=True, exist_ok=True)

save_microfile(build_demo_microfile(), str(target / "italy.csv"))

config = {
    "microfile": "italy.csv",
    "attributes": [
        {"name": "SEX", "codes": ["1", "2"]},
        {"name": "AGE", "codes": ["22"]},
        {"name": "REGNIT", "codes": list(ITALY_2001.regions)},
    ],
    "parameter": {"attribute": "REGNIT", "order": list(ITALY_2001.regions)},
    "main": {"attributes": ["SEX", "AGE"], "combinations": [["1", "22"]], "label": "young males"},
    "subordinate": {
        "attributes": ["SEX", "AGE"],
        "combinations": [["2", "22"]],
        "label": "young females",
    },
    "superset": {"kind": "explicit", "quantities": list(ITALY_2001.population)},
    "basis": "db1",
    "level": 2,
    "seed": 20100627,
}
(target / "config.json").write_text(json.dumps(config, indent=2), encoding="utf-8")

plan = {
    "basis": "db1",
    "level": 2,
    "alpha": 1.0,
    "seed": 20100627,
    "coefficients": [0.0032, 0.0018, 0.0019, 0.0018, 0.0009],
}
(target / "plan.json").write_text(json.dumps(plan, indent=2), encoding="utf-8")
print(target)

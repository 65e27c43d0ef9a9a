"""Bundled demo data: regional counts from the Italy 2001 census extract
(IPUMS International), with the "Piedmont + Aosta Valley" region split into
its two parts by official population shares.

``young_males`` / ``young_females`` count respondents in the grouped age
category "22" per region; ``population`` counts all respondents.  The
synthetic microfile builder emits one record per young respondent, which is
all the masking pipeline needs when the per-region population totals are
supplied to the configuration as explicit superset quantities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .microdata import Microfile, ParameterSpec, VitalSelection, schema, vital

__all__ = ["RegionalCounts", "ITALY_2001", "demo_schema", "demo_parameter",
           "demo_main", "demo_subordinate", "build_demo_microfile"]


@dataclass(frozen=True)
class RegionalCounts:
    regions: tuple[str, ...]
    population: tuple[int, ...]
    young_males: tuple[int, ...]
    young_females: tuple[int, ...]

    def __post_init__(self):
        m = len(self.regions)
        if not (len(self.population) == len(self.young_males) == len(self.young_females) == m):
            raise ValueError("all count rows must have one entry per region")


ITALY_2001 = RegionalCounts(
    regions=("1P", "1V", "3", "4", "5", "6", "7", "8", "9", "10",
             "11", "12", "13", "14", "15", "16", "17", "18", "19", "20"),
    population=(220952, 6326, 474894, 49411, 238279, 61883, 82198, 208428,
                183928, 43037, 76918, 268221, 65895, 16548, 299790, 210976,
                31368, 105710, 260549, 85428),
    young_males=(5808, 166, 13164, 1474, 6683, 1655, 1727, 5183, 4890, 1251,
                 2191, 7961, 2084, 528, 11020, 7990, 1105, 3832, 9095, 2971),
    young_females=(5535, 158, 12671, 1449, 6536, 1540, 1747, 5086, 4671, 1165,
                   2201, 7687, 2028, 536, 10827, 7616, 1012, 3796, 8945, 2850),
)


def demo_schema(counts: RegionalCounts = ITALY_2001):
    return schema([
        ("SEX", ["1", "2"]),
        ("AGE", ["22"]),
        ("REGNIT", list(counts.regions)),
    ])


def demo_parameter(counts: RegionalCounts = ITALY_2001) -> ParameterSpec:
    return ParameterSpec(attribute="REGNIT", order=counts.regions)


def demo_main() -> VitalSelection:
    return vital(["SEX", "AGE"], [("1", "22")], label="young males")


def demo_subordinate() -> VitalSelection:
    return vital(["SEX", "AGE"], [("2", "22")], label="young females")


def build_demo_microfile(counts: RegionalCounts = ITALY_2001) -> Microfile:
    """One record per young respondent, grouped by region then sex."""
    records = []
    for region, males, females in zip(counts.regions, counts.young_males, counts.young_females):
        records.extend(("1", "22", region) for _ in range(males))
        records.extend(("2", "22", region) for _ in range(females))
    return Microfile(schema=demo_schema(counts), records=tuple(records))


def superset_quantities(counts: RegionalCounts = ITALY_2001) -> np.ndarray:
    return np.asarray(counts.population, dtype=float)

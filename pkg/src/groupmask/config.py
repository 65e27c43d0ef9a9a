"""JSON configuration documents.

Two document kinds exist, both plain JSON:

Extraction config (see ``README.md`` for a complete example)::

    {
      "microfile": "italy.csv",              // path, relative to the config file
      "attributes": [{"name": "SEX", "codes": ["1", "2"]}, ...],
      "parameter": {
        "attribute": "REGNIT",
        "order": ["1P", "1V", "3", ...],
        "split": [{"source": "1",
                   "parts": [{"code": "1P", "weight": 0.972}, ...]}]   // optional
      },
      "main":        {"attributes": ["SEX", "AGE"], "combinations": [["1", "22"]], "label": "..."},
      "subordinate": {"attributes": ["SEX", "AGE"], "combinations": [["2", "22"]], "label": "..."},
      "superset": {"kind": "whole_file"}
                | {"kind": "selection", "attributes": [...], "combinations": [[...]]}
                | {"kind": "explicit", "quantities": [..m numbers..]},
      "basis": "db1",                        // "db1" | "db2" | [low-pass taps]
      "level": 2,
      "seed": 20100627,
      "top_extremums": 5                     // optional, default 5
    }

Masking plan::

    {"basis": "db1", "level": 2, "alpha": 1.0, "seed": 20100627,
     "coefficients": [0.0032, 0.0018, 0.0019, 0.0018, 0.0009]}

Field names are stable across versions.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .microdata import (
    AttributeSchema,
    ParameterSpec,
    SplitRule,
    VitalSelection,
    schema,
    vital,
)
from .wavelet import WaveletBasis, make_basis

__all__ = ["ExtractionConfig", "MaskingPlan", "ConfigError", "load_config", "load_plan"]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SupersetSpec:
    kind: str
    selection: VitalSelection | None = None
    quantities: np.ndarray | None = None


@dataclass(frozen=True)
class ExtractionConfig:
    microfile_path: Path
    schema: AttributeSchema
    parameter: ParameterSpec
    main: VitalSelection
    subordinate: VitalSelection
    superset: SupersetSpec
    basis: WaveletBasis
    level: int
    seed: int
    top_extremums: int = 5


@dataclass(frozen=True)
class MaskingPlan:
    basis: WaveletBasis
    level: int
    alpha: float
    seed: int
    coefficients: np.ndarray

    def to_json(self) -> dict:
        return {
            "basis": self.basis.name,
            "level": self.level,
            "alpha": self.alpha,
            "seed": self.seed,
            "coefficients": [float(c) for c in self.coefficients],
        }


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise ConfigError(f"missing {key!r} in {where}")
    return doc[key]


def _parse_selection(doc: dict, where: str) -> VitalSelection:
    return vital(
        _require(doc, "attributes", where),
        [tuple(c) for c in _require(doc, "combinations", where)],
        label=doc.get("label", ""),
    )


def _parse_superset(doc, where: str) -> SupersetSpec:
    kind = _require(doc, "kind", where)
    if kind == "whole_file":
        return SupersetSpec(kind=kind)
    if kind == "selection":
        return SupersetSpec(kind=kind, selection=_parse_selection(doc, where))
    if kind == "explicit":
        q = np.asarray(_require(doc, "quantities", where), dtype=float)
        return SupersetSpec(kind=kind, quantities=q)
    raise ConfigError(f"unknown superset kind {kind!r} in {where}")


def load_config(path: str | Path) -> ExtractionConfig:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None

    attr_schema = schema(
        (a["name"], a["codes"]) for a in _require(doc, "attributes", "config")
    )

    pdoc = _require(doc, "parameter", "config")
    rules = tuple(
        SplitRule(
            source=r["source"],
            parts=tuple((p["code"], float(p["weight"])) for p in r["parts"]),
        )
        for r in pdoc.get("split", [])
    )
    parameter = ParameterSpec(
        attribute=_require(pdoc, "attribute", "parameter"),
        order=tuple(_require(pdoc, "order", "parameter")),
        split_rules=rules,
    )

    main = _parse_selection(_require(doc, "main", "config"), "main")
    subordinate = _parse_selection(_require(doc, "subordinate", "config"), "subordinate")
    superset = _parse_superset(_require(doc, "superset", "config"), "superset")
    if superset.quantities is not None and len(superset.quantities) != parameter.m:
        raise ConfigError(
            f"explicit superset has {len(superset.quantities)} quantities, "
            f"parameter order has {parameter.m}"
        )

    try:
        basis = make_basis(_require(doc, "basis", "config"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    return ExtractionConfig(
        microfile_path=(path.parent / _require(doc, "microfile", "config")).resolve(),
        schema=attr_schema,
        parameter=parameter,
        main=main,
        subordinate=subordinate,
        superset=superset,
        basis=basis,
        level=int(_require(doc, "level", "config")),
        seed=int(_require(doc, "seed", "config")),
        top_extremums=int(doc.get("top_extremums", 5)),
    )


def load_plan(path: str | Path) -> MaskingPlan:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read plan {path}: {exc}") from None
    try:
        basis = make_basis(_require(doc, "basis", "plan"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return MaskingPlan(
        basis=basis,
        level=int(_require(doc, "level", "plan")),
        alpha=float(doc.get("alpha", 1.0)),
        seed=int(_require(doc, "seed", "plan")),
        coefficients=np.asarray(_require(doc, "coefficients", "plan"), dtype=float),
    )

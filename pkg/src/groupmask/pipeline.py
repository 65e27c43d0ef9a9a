"""End-to-end orchestration shared by the CLI and the session service.

``build_context`` turns an extraction config into a ready
:class:`~groupmask.masking.DifferenceContext`; ``write_extract_bundle`` and
``write_mask_bundle`` materialize the documented output files.  All outputs
are deterministic byte-for-byte for identical inputs and seeds: JSON is
written with sorted keys and signals with fixed formatting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import ExtractionConfig, MaskingPlan
from .masking import (
    DifferenceContext,
    MaskingResult,
    extremum_report,
    run_masking,
)
from .microdata import (
    Microfile,
    QuantitySignal,
    apply_split_rules,
    concentration_signal,
    load_microfile,
    quantity_signal,
    save_microfile,
)
from .rewriter import MovePlan, RewriteReport, apply_moves, plan_moves
from .sigio import write_signal

__all__ = ["Extraction", "build_context", "write_extract_bundle", "run_mask", "write_mask_bundle"]


@dataclass(frozen=True)
class Extraction:
    config: ExtractionConfig
    microfile: Microfile = field(repr=False)
    context: DifferenceContext = field(repr=False)
    q1: QuantitySignal = field(repr=False)
    q2: QuantitySignal = field(repr=False)
    superset: QuantitySignal = field(repr=False)

    @property
    def extremums(self) -> list[tuple[int, float]]:
        return extremum_report(self.context.delta, self.config.top_extremums)


def build_context(config: ExtractionConfig, microfile: Microfile | None = None) -> Extraction:
    """Load (or accept) a microfile, apply split rules, and derive the
    difference context for the configured vital selections."""
    mf = microfile if microfile is not None else load_microfile(str(config.microfile_path), config.schema)
    mf = apply_split_rules(mf, config.parameter, config.seed)
    q1 = quantity_signal(mf, config.main, config.parameter)
    q2 = quantity_signal(mf, config.subordinate, config.parameter)
    sup = config.superset
    if sup.kind == "explicit":
        superset = QuantitySignal(values=np.asarray(sup.quantities), label="superset")
    elif sup.kind == "selection":
        superset = quantity_signal(mf, sup.selection, config.parameter)
    else:
        whole = np.zeros(config.parameter.m, dtype=np.int64)
        index = config.parameter.index()
        col = mf.schema.index_of(config.parameter.attribute)
        for row in mf.records:
            pos = index.get(row[col])
            if pos is None:
                raise ValueError(
                    f"parameter value {row[col]!r} present in data but missing from the configured order"
                )
            whole[pos] += 1
        superset = QuantitySignal(values=whole, label="whole file")
    c1 = concentration_signal(q1, superset)
    c2 = concentration_signal(q2, superset)
    ctx = DifferenceContext(
        c1=c1.values,
        c2=c2.values,
        superset=np.asarray(superset.values, dtype=float),
        q1=np.asarray(q1.values, dtype=float),
        q2=np.asarray(q2.values, dtype=float),
        basis=config.basis,
        level=config.level,
    )
    return Extraction(config=config, microfile=mf, context=ctx, q1=q1, q2=q2, superset=superset)


def _dump_json(payload, path: Path) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def write_extract_bundle(extraction: Extraction, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    ctx = extraction.context
    files = {
        "q1.csv": extraction.q1.values,
        "q2.csv": extraction.q2.values,
        "c1.csv": ctx.c1,
        "c2.csv": ctx.c2,
        "delta.csv": ctx.delta,
    }
    written = []
    for name, values in files.items():
        path = outdir / name
        write_signal(values, path)
        written.append(path)
    return written


def _plan_payload(plan: MovePlan, report: RewriteReport) -> dict:
    return {
        "seed": plan.seed,
        "selection": plan.selection.label,
        "parameter": plan.spec.attribute,
        "moves": [[mv.record, mv.old, mv.new] for mv in plan.moves],
        "report": {
            "moved": {f"{old}->{new}": n for (old, new), n in sorted(report.moved.items())},
            "before": [int(v) for v in report.before.values],
            "after": [int(v) for v in report.after.values],
            "concentration_drift": report.concentration_drift,
        },
    }


def run_mask(extraction: Extraction, plan: MaskingPlan) -> MaskingResult:
    ctx = extraction.context
    if plan.basis.name != ctx.basis.name or plan.level != ctx.level:
        ctx = DifferenceContext(
            c1=ctx.c1, c2=ctx.c2, superset=ctx.superset, q1=ctx.q1, q2=ctx.q2,
            basis=plan.basis, level=plan.level,
        )
    return run_masking(ctx, plan.coefficients, plan.alpha)


def write_mask_bundle(
    extraction: Extraction,
    plan: MaskingPlan,
    result: MaskingResult,
    outdir: str | Path,
) -> dict[str, str]:
    """Write the full audit bundle: every intermediate signal as CSV, the
    move plans and reports as JSON, the rewritten microfile, and a manifest
    ``mask.json``.  Returns the manifest's path map."""
    outdir = Path(outdir)
    signals_dir = outdir / "signals"
    signals_dir.mkdir(parents=True, exist_ok=True)

    ctx = extraction.context
    signals = {
        "q1.csv": extraction.q1.values,
        "q2.csv": extraction.q2.values,
        "superset.csv": ctx.superset,
        "c1.csv": ctx.c1,
        "c2.csv": ctx.c2,
        "delta.csv": result.delta,
        "approx_coeffs.csv": result.approx_coeffs,
        "replacement_coeffs.csv": result.replacement_coeffs,
        "approx.csv": result.approx,
        "approx_new.csv": result.approx_new,
        "details_sum.csv": result.details_sum,
        "delta_new.csv": result.delta_new,
        "c1_new.csv": result.c1_new,
        "c2_new.csv": result.c2_new,
        "q1_real.csv": result.q1_real,
        "q2_real.csv": result.q2_real,
        "q1_new.csv": result.q1_new,
        "q2_new.csv": result.q2_new,
    }
    for name, values in signals.items():
        write_signal(values, signals_dir / name)

    mf = extraction.microfile
    plan_main = plan_moves(
        mf, extraction.config.main, extraction.config.parameter,
        extraction.q1, result.q1_new, plan.seed,
    )
    mf, report_main = apply_moves(
        mf, plan_main, basis=plan.basis, level=plan.level, superset=extraction.superset
    )
    current_sub = quantity_signal(mf, extraction.config.subordinate, extraction.config.parameter)
    plan_sub = plan_moves(
        mf, extraction.config.subordinate, extraction.config.parameter,
        current_sub, result.q2_new, plan.seed,
    )
    mf, report_sub = apply_moves(
        mf, plan_sub, basis=plan.basis, level=plan.level, superset=extraction.superset
    )

    microfile_path = outdir / "microfile_masked.csv"
    save_microfile(mf, str(microfile_path))
    _dump_json(_plan_payload(plan_main, report_main), outdir / "moves_main.json")
    _dump_json(_plan_payload(plan_sub, report_sub), outdir / "moves_subordinate.json")

    manifest = {
        "plan": plan.to_json(),
        "scale_main": result.scale1,
        "scale_subordinate": result.scale2,
        "detail_drift_main": result.detail_drift1,
        "detail_drift_subordinate": result.detail_drift2,
        "extremums_before": [[i, v] for i, v in extremum_report(result.delta, extraction.config.top_extremums)],
        "extremums_after": [[i, v] for i, v in extremum_report(result.delta_new, extraction.config.top_extremums)],
        "outputs": {
            "signals": sorted(signals.keys()),
            "microfile": microfile_path.name,
            "moves": ["moves_main.json", "moves_subordinate.json"],
        },
    }
    _dump_json(manifest, outdir / "mask.json")

    return {
        "bundle": str(outdir),
        "manifest": str(outdir / "mask.json"),
        "microfile": str(microfile_path),
        "signals": str(signals_dir),
    }

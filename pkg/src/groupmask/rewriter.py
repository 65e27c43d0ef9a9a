"""Realize target quantity signals by reassigning parameter values.

Once the masking pipeline has produced integer target quantities, the
microfile itself must be rewritten so that recounting reproduces them.  This
is done by moving records: a record matching the vital selection keeps all
its attributes except the parameter value, which changes from a surplus
parameter value to a deficit one.  Donor records are chosen uniformly at
random (seeded) among the matching records of each surplus value, so runs
are reproducible and no systematic bias is introduced beyond the move
itself.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .masking import detail_drift
from .microdata import (
    Microfile,
    ParameterSpec,
    QuantitySignal,
    VitalSelection,
    concentration_signal,
    quantity_signal,
)
from .wavelet import WaveletBasis

__all__ = ["Move", "MovePlan", "RewriteReport", "plan_moves", "apply_moves"]


@dataclass(frozen=True)
class Move:
    record: int
    old: str
    new: str


@dataclass(frozen=True)
class MovePlan:
    moves: tuple[Move, ...]
    selection: VitalSelection
    spec: ParameterSpec
    seed: int

    def __len__(self) -> int:
        return len(self.moves)

    def pair_counts(self) -> dict[tuple[str, str], int]:
        counts: dict[tuple[str, str], int] = {}
        for mv in self.moves:
            key = (mv.old, mv.new)
            counts[key] = counts.get(key, 0) + 1
        return counts


@dataclass(frozen=True)
class RewriteReport:
    moved: dict[tuple[str, str], int]
    before: QuantitySignal = field(repr=False)
    after: QuantitySignal = field(repr=False)
    concentration_drift: float | None = None


def plan_moves(
    mf: Microfile,
    selection: VitalSelection,
    spec: ParameterSpec,
    current: QuantitySignal,
    target,
    seed: int,
) -> MovePlan:
    """Choose which records to move so the selection's counts become
    ``target``.

    Surplus parameter values (current above target) donate exactly the
    excess, sampled uniformly with the given seed from their matching
    records; deficit values receive the donors, both sides walked in
    ascending signal-index order.  Identical inputs and seed always produce
    the identical plan.
    """
    tgt = np.asarray(target, dtype=np.int64)
    cur = np.asarray(current.values, dtype=np.int64)
    if tgt.shape != cur.shape:
        raise ValueError(f"target length {tgt.shape} does not match current {cur.shape}")
    if np.any(tgt < 0):
        raise ValueError("target counts must be non-negative")
    if int(tgt.sum()) != int(cur.sum()):
        raise ValueError(
            f"target sum {int(tgt.sum())} differs from current sum {int(cur.sum())}; "
            f"moves cannot change the total"
        )

    vital_cols = [mf.schema.index_of(name) for name in selection.attributes]
    param_col = mf.schema.index_of(spec.attribute)
    combos = selection.combinations

    matching: dict[str, list[int]] = {code: [] for code in spec.order}
    for i, row in enumerate(mf.records):
        if tuple(row[c] for c in vital_cols) in combos:
            bucket = matching.get(row[param_col])
            if bucket is not None:
                bucket.append(i)

    rng = random.Random(seed)
    donors: list[tuple[int, str]] = []
    deficits: list[tuple[str, int]] = []
    for pos, code in enumerate(spec.order):
        surplus = int(cur[pos] - tgt[pos])
        if surplus > 0:
            pool = matching[code]
            if surplus > len(pool):
                raise ValueError(
                    f"{code!r} must donate {surplus} records but only "
                    f"{len(pool)} match the selection"
                )
            chosen = sorted(rng.sample(pool, surplus))
            donors.extend((i, code) for i in chosen)
        elif surplus < 0:
            deficits.append((code, -surplus))

    moves: list[Move] = []
    cursor = 0
    for code, need in deficits:
        for i, old in donors[cursor : cursor + need]:
            moves.append(Move(record=i, old=old, new=code))
        cursor += need
    return MovePlan(moves=tuple(moves), selection=selection, spec=spec, seed=seed)


def apply_moves(
    mf: Microfile,
    plan: MovePlan,
    basis: WaveletBasis | None = None,
    level: int | None = None,
    superset: QuantitySignal | None = None,
) -> tuple[Microfile, RewriteReport]:
    """Apply a move plan, returning the rewritten microfile and a report.

    Only the parameter attribute of the listed records changes.  A stale
    plan (a record whose current parameter value no longer matches the
    plan's ``old``) aborts before anything is modified.  When ``basis``,
    ``level`` and ``superset`` are all given, the report also carries the
    maximum detail-coefficient drift between the before and after
    concentration signals.
    """
    param_col = mf.schema.index_of(plan.spec.attribute)
    seen: set[int] = set()
    for mv in plan.moves:
        if mv.record in seen:
            raise ValueError(f"record {mv.record} appears twice in the plan")
        seen.add(mv.record)
        if not 0 <= mv.record < len(mf.records):
            raise ValueError(f"record index {mv.record} out of range")
        actual = mf.records[mv.record][param_col]
        if actual != mv.old:
            raise ValueError(
                f"stale plan: record {mv.record} has {plan.spec.attribute!r}="
                f"{actual!r}, plan expected {mv.old!r}; nothing was applied"
            )

    before = quantity_signal(mf, plan.selection, plan.spec)
    rows = list(mf.records)
    for mv in plan.moves:
        row = list(rows[mv.record])
        row[param_col] = mv.new
        rows[mv.record] = tuple(row)
    rewritten = Microfile(schema=mf.schema, records=tuple(rows))
    after = quantity_signal(rewritten, plan.selection, plan.spec)

    drift = None
    if basis is not None and level is not None and superset is not None:
        c_before = concentration_signal(before, superset)
        c_after = concentration_signal(after, superset)
        drift = detail_drift(c_before.values, c_after.values, basis, level)

    report = RewriteReport(
        moved=plan.pair_counts(),
        before=before,
        after=after,
        concentration_drift=drift,
    )
    return rewritten, report

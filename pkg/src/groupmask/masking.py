"""Concentration-difference masking pipeline.

Given a main and a subordinate concentration signal over a common parameter
attribute, the pipeline

1. forms the difference signal ``delta = c1 - c2``,
2. swaps the approximation coefficients of ``delta`` for analyst-chosen
   replacements while keeping every wavelet detail (``remask``),
3. resolves the reshaped difference back into a pair of concentration
   signals (``resolve_concentrations``),
4. turns those into real-valued quantities against the superset totals
   (``synthesize_quantities``), and
5. rescales and integer-rounds them so the original record totals are
   preserved exactly (``rescale_and_round``).

The resolution step is underdetermined (m equations, 2m unknowns); it is
parameterized by a split weight ``alpha``: with ``delta_change = new - old``,
``c1 + alpha * delta_change`` and ``c2 - (1 - alpha) * delta_change`` always
differ by exactly the reshaped signal.  ``alpha = 1`` (the default) keeps the
subordinate side untouched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .microdata import largest_remainder
from .wavelet import WaveletBasis, decompose, make_basis, reconstruction_matrix

__all__ = [
    "DifferenceContext",
    "MaskingResult",
    "InfeasibleConcentrations",
    "difference_signal",
    "remask",
    "resolve_concentrations",
    "concentration_violations",
    "synthesize_quantities",
    "rescale_and_round",
    "extremum_report",
    "detail_drift",
    "run_masking",
]


class InfeasibleConcentrations(ValueError):
    """A resolved concentration left [0, 1]; ``indices`` are 1-based."""

    def __init__(self, indices: list[int]):
        self.indices = indices
        super().__init__(
            f"resolved concentrations fall outside [0, 1] at indices {indices}; "
            f"retry with a different alpha or replacement coefficients"
        )


def _vec(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    return arr


@dataclass(frozen=True)
class DifferenceContext:
    """Everything needed to mask one main/subordinate pair: both quantity
    signals, both concentrations, the superset totals, and the wavelet
    configuration."""

    c1: np.ndarray = field(repr=False)
    c2: np.ndarray = field(repr=False)
    superset: np.ndarray = field(repr=False)
    q1: np.ndarray = field(repr=False)
    q2: np.ndarray = field(repr=False)
    basis: WaveletBasis = field(default_factory=lambda: make_basis("db1"))
    level: int = 2

    def __post_init__(self):
        for name in ("c1", "c2", "superset", "q1", "q2"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        m = len(self.c1)
        for name in ("c2", "superset", "q1", "q2"):
            if len(getattr(self, name)) != m:
                raise ValueError(f"{name} has length {len(getattr(self, name))}, expected {m}")

    @property
    def m(self) -> int:
        return len(self.c1)

    @property
    def delta(self) -> np.ndarray:
        return self.c1 - self.c2


@dataclass(frozen=True)
class MaskingResult:
    """Full audit trail of one masking run."""

    basis_name: str
    level: int
    alpha: float
    approx_coeffs: np.ndarray = field(repr=False)
    replacement_coeffs: np.ndarray = field(repr=False)
    delta: np.ndarray = field(repr=False)
    delta_new: np.ndarray = field(repr=False)
    approx: np.ndarray = field(repr=False)
    approx_new: np.ndarray = field(repr=False)
    details_sum: np.ndarray = field(repr=False)
    c1_new: np.ndarray = field(repr=False)
    c2_new: np.ndarray = field(repr=False)
    q1_real: np.ndarray = field(repr=False)
    q2_real: np.ndarray = field(repr=False)
    q1_new: np.ndarray = field(repr=False)
    q2_new: np.ndarray = field(repr=False)
    scale1: float
    scale2: float
    detail_drift1: float
    detail_drift2: float


def difference_signal(c1, c2) -> np.ndarray:
    """Elementwise difference of two equally long concentration signals."""
    a, b = _vec(c1, "c1"), _vec(c2, "c2")
    if a.shape != b.shape:
        raise ValueError(f"signal lengths differ: {a.shape} vs {b.shape}")
    return a - b


def remask(delta, basis: WaveletBasis, level: int, replacement_coeffs) -> np.ndarray:
    """Swap the approximation of ``delta`` for the one generated by
    ``replacement_coeffs`` while keeping the original details.

    The result decomposes to exactly ``replacement_coeffs`` at level ``k``
    with detail coefficients identical to those of ``delta``.
    """
    d = _vec(delta, "delta")
    coeffs = _vec(replacement_coeffs, "replacement coefficients")
    expected = len(d) // (2**level)
    if len(coeffs) != expected:
        raise ValueError(f"expected {expected} replacement coefficients, got {len(coeffs)}")
    matrix = reconstruction_matrix(basis, len(d), level)
    dec = decompose(d, basis, level)
    return matrix @ coeffs + (d - matrix @ dec.approx)


def concentration_violations(c1_new: np.ndarray, c2_new: np.ndarray) -> list[int]:
    """1-based indices where either resolved concentration leaves [0, 1]."""
    bad = (c1_new < 0) | (c1_new > 1) | (c2_new < 0) | (c2_new > 1)
    return [int(i) + 1 for i in np.nonzero(bad)[0]]


def resolve_concentrations(
    ctx: DifferenceContext, delta_new, alpha: float = 1.0, check: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Pick new concentration signals whose difference is ``delta_new``.

    The change relative to the original difference is split ``alpha`` to the
    main side and ``alpha - 1`` to the subordinate side, so ``alpha = 1``
    returns the subordinate signal unchanged and ``alpha = 0`` the main one.
    With ``check`` (the default) an :class:`InfeasibleConcentrations` error
    lists every index that left [0, 1].
    """
    dn = _vec(delta_new, "new difference signal")
    if len(dn) != ctx.m:
        raise ValueError(f"new difference has length {len(dn)}, expected {ctx.m}")
    change = dn - ctx.delta
    c1_new = ctx.c1 + alpha * change
    c2_new = ctx.c2 - (1.0 - alpha) * change
    if check:
        violations = concentration_violations(c1_new, c2_new)
        if violations:
            raise InfeasibleConcentrations(violations)
    return c1_new, c2_new


def synthesize_quantities(concentration, superset) -> np.ndarray:
    """Real-valued quantities realizing a concentration against the superset
    totals: ``q[i] = c[i] * superset[i]``."""
    c = _vec(concentration, "concentration")
    sup = _vec(superset, "superset")
    if c.shape != sup.shape:
        raise ValueError(f"signal lengths differ: {c.shape} vs {sup.shape}")
    negative = np.nonzero(c < 0)[0]
    if negative.size:
        raise ValueError(f"negative concentration entries at indices {list(negative + 1)}")
    return c * sup


def rescale_and_round(q_real, target_sum: int) -> tuple[np.ndarray, float]:
    """Scale ``q_real`` so it sums to ``target_sum`` and round by largest
    remainder; returns ``(integers, scale)`` with the integers summing to
    ``target_sum`` exactly and each within 1 of its scaled value."""
    q = _vec(q_real, "quantities")
    if target_sum < 0:
        raise ValueError(f"target sum must be >= 0, got {target_sum}")
    total = float(q.sum())
    if total <= 0:
        if target_sum == 0:
            return np.zeros(len(q), dtype=np.int64), 1.0
        raise ValueError("cannot rescale an all-zero quantity signal to a positive total")
    scale = target_sum / total
    return largest_remainder(scale * q, target_sum), scale


def extremum_report(values, top: int = 5) -> list[tuple[int, float]]:
    """``(index, value)`` pairs sorted by descending value, ties by ascending
    index; indices are 1-based positions in the parameter order."""
    v = _vec(values, "signal")
    order = np.lexsort((np.arange(len(v)), -v))
    return [(int(i) + 1, float(v[i])) for i in order[: max(0, int(top))]]


def detail_drift(before, after, basis: WaveletBasis, level: int) -> float:
    """Largest absolute change across all detail coefficients between two
    signals; the price paid (mostly for integer rounding) in preserved
    fluctuations."""
    b = decompose(_vec(before, "before"), basis, level)
    a = decompose(_vec(after, "after"), basis, level)
    return max(
        float(np.max(np.abs(da - db))) for da, db in zip(a.details, b.details)
    )


def run_masking(
    ctx: DifferenceContext, replacement_coeffs, alpha: float = 1.0
) -> MaskingResult:
    """Execute the whole pipeline for one replacement-coefficient choice."""
    delta = ctx.delta
    dec = decompose(delta, ctx.basis, ctx.level)
    matrix = reconstruction_matrix(ctx.basis, ctx.m, ctx.level)
    approx = matrix @ dec.approx
    coeffs = _vec(replacement_coeffs, "replacement coefficients")
    delta_new = remask(delta, ctx.basis, ctx.level, coeffs)
    approx_new = matrix @ coeffs
    c1_new, c2_new = resolve_concentrations(ctx, delta_new, alpha)
    q1_real = synthesize_quantities(c1_new, ctx.superset)
    q2_real = synthesize_quantities(c2_new, ctx.superset)
    q1_new, scale1 = rescale_and_round(q1_real, int(round(ctx.q1.sum())))
    q2_new, scale2 = rescale_and_round(q2_real, int(round(ctx.q2.sum())))
    # drift caused by integer rounding alone; the scaling step changes the
    # details proportionally, which is sanctioned
    drift1 = detail_drift(scale1 * q1_real, q1_new, ctx.basis, ctx.level)
    drift2 = detail_drift(scale2 * q2_real, q2_new, ctx.basis, ctx.level)
    return MaskingResult(
        basis_name=ctx.basis.name,
        level=ctx.level,
        alpha=float(alpha),
        approx_coeffs=dec.approx,
        replacement_coeffs=coeffs,
        delta=delta,
        delta_new=delta_new,
        approx=approx,
        approx_new=approx_new,
        details_sum=delta - approx,
        c1_new=c1_new,
        c2_new=c2_new,
        q1_real=q1_real,
        q2_real=q2_real,
        scale1=float(scale1),
        scale2=float(scale2),
        q1_new=q1_new,
        q2_new=q2_new,
        detail_drift1=drift1,
        detail_drift2=drift2,
    )

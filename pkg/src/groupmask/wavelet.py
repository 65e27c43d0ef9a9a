"""Orthogonal filter-bank wavelet machinery with periodic boundary handling.

Everything in this module works on plain 1-D ``numpy`` arrays whose length is
divisible by ``2**level``.  Three kinds of objects are produced:

* :class:`WaveletBasis` -- an orthonormal low-pass/high-pass filter pair,
* :class:`Decomposition` -- approximation and detail coefficients of a signal,
* :class:`ReconstructionMatrix` -- the explicit ``m x (m / 2**k)`` matrix that
  maps level-``k`` approximation coefficients straight to the approximation
  signal.

Conventions
-----------
Analysis convolves circularly and keeps every second output::

    a[i] = sum_j  l[j] * s[(2*i + j - sigma) mod m],     sigma = (n - 2) // 2

where ``n`` is the filter length.  The ``sigma`` offset centres the filter so
that a length-2 filter pairs samples ``(0, 1), (2, 3), ...`` and longer
filters stay aligned with the same dyadic grid.  Synthesis is the exact
adjoint, so for orthonormal filters the round trip is the identity and signal
energy splits exactly across approximation and detail coefficients.

The high-pass filter is derived from the low-pass one by the alternating
flip ``h[j] = (-1)**j * l[n - 1 - j]``, the standard orthogonal quadrature
mirror construction.

Because synthesis is the adjoint of analysis, the reconstruction matrix is
simply the product of the per-level synthesis matrices; its columns are the
approximation signals generated by unit coefficients.  Replacing the
approximation coefficients of a signal while adding back its original
details therefore never changes the detail coefficients -- the property the
masking pipeline in :mod:`groupmask.masking` relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "WaveletBasis",
    "Decomposition",
    "ReconstructionMatrix",
    "make_basis",
    "decompose",
    "reconstruct",
    "reconstruction_matrix",
    "approximation_and_details",
    "approximate_from_coefficients",
]

_ATOL = 1e-12


def _as_signal(values, name: str = "signal") -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class WaveletBasis:
    """Orthonormal low-pass/high-pass filter pair of even length."""

    name: str
    lowpass: tuple[float, ...]
    highpass: tuple[float, ...]

    @property
    def length(self) -> int:
        return len(self.lowpass)

    @property
    def phase_offset(self) -> int:
        """Downsampling alignment used by analysis and synthesis."""
        return (self.length - 2) // 2

    def low(self) -> np.ndarray:
        return np.array(self.lowpass)

    def high(self) -> np.ndarray:
        return np.array(self.highpass)


@dataclass(frozen=True)
class Decomposition:
    """Level-``k`` periodic wavelet decomposition of a length-``m`` signal.

    ``details[i]`` holds the detail coefficients of level ``i + 1`` (length
    ``m / 2**(i+1)``); ``approx`` holds the level-``k`` approximation
    coefficients (length ``m / 2**k``).
    """

    basis: WaveletBasis
    length: int
    approx: np.ndarray
    details: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def level(self) -> int:
        return len(self.details)


@dataclass(frozen=True)
class ReconstructionMatrix:
    """Explicit map from level-``k`` approximation coefficients to the
    approximation signal."""

    basis_name: str
    level: int
    entries: np.ndarray = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __matmul__(self, coefficients) -> np.ndarray:
        return self.entries @ np.asarray(coefficients, dtype=float)


def _alternating_flip(lowpass: np.ndarray) -> np.ndarray:
    n = len(lowpass)
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    return signs * lowpass[::-1]


def _validate_lowpass(lowpass: np.ndarray) -> None:
    n = len(lowpass)
    if n < 2 or n % 2 != 0:
        raise ValueError(f"low-pass filter must have even length >= 2, got {n}")
    norm = float(np.dot(lowpass, lowpass))
    if abs(norm - 1.0) > _ATOL:
        raise ValueError(f"low-pass filter is not unit-norm: ||l||^2 = {norm!r}")
    total = float(np.sum(lowpass))
    if abs(total - np.sqrt(2.0)) > 1e-9:
        raise ValueError(f"low-pass filter coefficients must sum to sqrt(2), got {total!r}")
    # orthogonality of even shifts: sum_j l[j] l[j + 2k] = 0 for k != 0
    for k in range(1, n // 2):
        corr = float(np.dot(lowpass[: n - 2 * k], lowpass[2 * k :]))
        if abs(corr) > 1e-9:
            raise ValueError(f"low-pass filter not orthogonal to its shift by {2 * k}: {corr!r}")


def make_basis(spec) -> WaveletBasis:
    """Build a :class:`WaveletBasis` from a built-in name or a low-pass filter.

    ``spec`` may be ``"db1"`` (the two-tap box filter), ``"db2"`` (the
    four-tap minimum-phase filter), or any even-length sequence satisfying
    the orthonormality conditions (unit norm, coefficient sum ``sqrt(2)``,
    zero autocorrelation at even lags).
    """
    if isinstance(spec, str):
        name = spec.lower()
        if name == "db1":
            low = np.array([1.0, 1.0]) / np.sqrt(2.0)
        elif name == "db2":
            s3 = np.sqrt(3.0)
            low = np.array([1.0 + s3, 3.0 + s3, 3.0 - s3, 1.0 - s3]) / (4.0 * np.sqrt(2.0))
        else:
            raise ValueError(f"unknown wavelet basis {spec!r}; built-ins are 'db1' and 'db2'")
    else:
        low = _as_signal(spec, "low-pass filter")
        name = f"custom{len(low)}"
        _validate_lowpass(low)
    high = _alternating_flip(low)
    return WaveletBasis(name=name, lowpass=tuple(low), highpass=tuple(high))


def _check_length(m: int, level: int) -> None:
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    if m % (2**level) != 0:
        raise ValueError(f"signal length {m} is not divisible by 2**{level}")


def _analysis_step(x: np.ndarray, taps: np.ndarray, sigma: int) -> np.ndarray:
    m = len(x)
    half = np.arange(m // 2)
    out = np.zeros(m // 2)
    for j, c in enumerate(taps):
        out += c * x[(2 * half + j - sigma) % m]
    return out


def _synthesis_step(coeffs: np.ndarray, taps: np.ndarray, sigma: int) -> np.ndarray:
    m = 2 * len(coeffs)
    out = np.zeros(m)
    half = np.arange(len(coeffs))
    for j, c in enumerate(taps):
        np.add.at(out, (2 * half + j - sigma) % m, c * coeffs)
    return out


def decompose(signal, basis: WaveletBasis, level: int) -> Decomposition:
    """Periodic multi-level analysis: repeated circular convolution and
    dyadic downsampling of the running approximation."""
    s = _as_signal(signal)
    _check_length(len(s), level)
    low, high, sigma = basis.low(), basis.high(), basis.phase_offset
    details: list[np.ndarray] = []
    approx = s
    for _ in range(level):
        details.append(_analysis_step(approx, high, sigma))
        approx = _analysis_step(approx, low, sigma)
    return Decomposition(basis=basis, length=len(s), approx=approx, details=tuple(details))


def reconstruct(dec: Decomposition, basis: WaveletBasis | None = None) -> np.ndarray:
    """Invert :func:`decompose`; exact up to floating-point rounding."""
    basis = basis or dec.basis
    low, high, sigma = basis.low(), basis.high(), basis.phase_offset
    expected = dec.length // (2**dec.level)
    if len(dec.approx) != expected:
        raise ValueError(
            f"approximation length {len(dec.approx)} inconsistent with "
            f"signal length {dec.length} at level {dec.level}"
        )
    x = np.asarray(dec.approx, dtype=float)
    for lev in range(dec.level, 0, -1):
        d = np.asarray(dec.details[lev - 1], dtype=float)
        if len(d) != len(x):
            raise ValueError(f"detail coefficients at level {lev} have length {len(d)}, expected {len(x)}")
        x = _synthesis_step(x, low, sigma) + _synthesis_step(d, high, sigma)
    return x


def approximate_from_coefficients(coefficients, basis: WaveletBasis, length: int) -> np.ndarray:
    """Approximation signal generated by level-``k`` coefficients via the
    upsample-and-convolve filter path (``k`` inferred from the lengths)."""
    a = _as_signal(coefficients, "coefficients")
    if length % len(a) != 0:
        raise ValueError(f"coefficient length {len(a)} does not divide signal length {length}")
    ratio = length // len(a)
    level = int(np.log2(ratio))
    if 2**level != ratio:
        raise ValueError(f"signal/coefficient length ratio {ratio} is not a power of two")
    _check_length(length, level)
    low, sigma = basis.low(), basis.phase_offset
    x = a
    for _ in range(level):
        x = _synthesis_step(x, low, sigma)
    return x


def reconstruction_matrix(basis: WaveletBasis, length: int, level: int) -> ReconstructionMatrix:
    """Product of the per-level (periodic convolution after dyadic
    upsampling) matrices; column ``j`` is the approximation signal generated
    by the ``j``-th unit coefficient."""
    _check_length(length, level)
    low, sigma = basis.low(), basis.phase_offset
    entries = np.eye(length // (2**level))
    m = length // (2 ** (level - 1))
    while entries.shape[0] < length:
        step = np.zeros((m, m // 2))
        half = np.arange(m // 2)
        for j, c in enumerate(low):
            np.add.at(step, ((2 * half + j - sigma) % m, half), c)
        entries = step @ entries
        m *= 2
    return ReconstructionMatrix(basis_name=basis.name, level=level, entries=entries)


def approximation_and_details(signal, basis: WaveletBasis, level: int) -> tuple[np.ndarray, np.ndarray]:
    """Split a signal into its level-``k`` approximation and the sum of all
    details; the two parts add back to the signal exactly."""
    s = _as_signal(signal)
    dec = decompose(s, basis, level)
    matrix = reconstruction_matrix(basis, len(s), level)
    approx = matrix @ dec.approx
    return approx, s - approx

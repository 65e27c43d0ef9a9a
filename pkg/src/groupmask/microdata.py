"""Microfile parsing, validation, and signal extraction.

A *microfile* is a rectangular table of depersonalized respondent records
over categorical attributes.  Counting the records that match a set of
attribute-value combinations (a *vital selection*) per value of a chosen
*parameter attribute* yields a quantity signal; dividing it elementwise by a
superset's quantity signal yields a concentration signal.  Those signals are
what the masking pipeline reshapes.

Codes are opaque strings throughout; no numeric semantics are assumed.
Microfiles are immutable after loading, so all queries are safe for
concurrent readers.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

__all__ = [
    "Attribute",
    "AttributeSchema",
    "Microfile",
    "VitalSelection",
    "SplitRule",
    "ParameterSpec",
    "QuantitySignal",
    "ConcentrationSignal",
    "MicrofileParseError",
    "load_microfile",
    "save_microfile",
    "apply_split_rules",
    "quantity_signal",
    "concentration_signal",
    "largest_remainder",
]


class MicrofileParseError(ValueError):
    """Raised for malformed microfile input; ``line`` is the 1-based file line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Attribute:
    name: str
    codes: tuple[str, ...]

    def __post_init__(self):
        if not self.codes:
            raise ValueError(f"attribute {self.name!r} has an empty code domain")
        if len(set(self.codes)) != len(self.codes):
            raise ValueError(f"attribute {self.name!r} has duplicate codes")


@dataclass(frozen=True)
class AttributeSchema:
    attributes: tuple[Attribute, ...]

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate attribute names in schema: {names}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def index_of(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(f"schema has no attribute named {name!r}")

    def attribute(self, name: str) -> Attribute:
        return self.attributes[self.index_of(name)]

    def replace_codes(self, name: str, codes: Sequence[str]) -> "AttributeSchema":
        attrs = tuple(
            Attribute(a.name, tuple(codes)) if a.name == name else a for a in self.attributes
        )
        return AttributeSchema(attrs)


def schema(attributes: Iterable[tuple[str, Iterable[str]]]) -> AttributeSchema:
    """Convenience builder: ``schema([("SEX", ["1", "2"]), ...])``."""
    return AttributeSchema(tuple(Attribute(n, tuple(c)) for n, c in attributes))


@dataclass(frozen=True)
class Microfile:
    schema: AttributeSchema
    records: tuple[tuple[str, ...], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def size(self) -> int:
        return len(self.records)

    def column(self, name: str) -> tuple[str, ...]:
        i = self.schema.index_of(name)
        return tuple(r[i] for r in self.records)


@dataclass(frozen=True)
class VitalSelection:
    """Attribute names plus the set of code combinations whose joint
    distribution is to be protected."""

    attributes: tuple[str, ...]
    combinations: frozenset[tuple[str, ...]]
    label: str = ""

    def __post_init__(self):
        if len(set(self.attributes)) != len(self.attributes):
            raise ValueError(f"vital attributes must be distinct: {self.attributes}")
        if not self.combinations:
            raise ValueError("vital selection needs at least one combination")
        arity = len(self.attributes)
        for combo in self.combinations:
            if len(combo) != arity:
                raise ValueError(f"combination {combo} does not match the {arity} vital attributes")


def vital(attributes: Sequence[str], combinations: Iterable[Sequence[str]], label: str = "") -> VitalSelection:
    return VitalSelection(
        attributes=tuple(attributes),
        combinations=frozenset(tuple(c) for c in combinations),
        label=label,
    )


@dataclass(frozen=True)
class SplitRule:
    """Replace ``source`` by the derived codes in the given proportions."""

    source: str
    parts: tuple[tuple[str, float], ...]

    def __post_init__(self):
        total = sum(w for _, w in self.parts)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"split weights for source {self.source!r} sum to {total!r}, expected 1")
        for code, w in self.parts:
            if not 0.0 < w < 1.0:
                raise ValueError(f"split weight for {code!r} must lie in (0, 1), got {w!r}")


@dataclass(frozen=True)
class ParameterSpec:
    """Parameter attribute, the signal index order over its codes, and any
    split rules to apply before counting."""

    attribute: str
    order: tuple[str, ...]
    split_rules: tuple[SplitRule, ...] = ()

    def __post_init__(self):
        if len(self.order) < 2:
            raise ValueError("parameter order needs at least two values")
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"parameter order has duplicate values: {self.order}")

    @property
    def m(self) -> int:
        return len(self.order)

    def index(self) -> dict[str, int]:
        return {code: i for i, code in enumerate(self.order)}

    def check_disjoint(self, selection: VitalSelection) -> None:
        if self.attribute in selection.attributes:
            raise ValueError(
                f"parameter attribute {self.attribute!r} cannot also be a vital attribute"
            )


@dataclass(frozen=True)
class QuantitySignal:
    """Per-parameter-value record counts for one vital selection."""

    values: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values))

    @property
    def total(self) -> int:
        return int(self.values.sum())

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class ConcentrationSignal:
    """Quantity signal divided by a superset's per-parameter totals."""

    values: np.ndarray = field(repr=False)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def __len__(self) -> int:
        return len(self.values)


def load_microfile(source: IO[str] | str, file_schema: AttributeSchema) -> Microfile:
    """Parse a UTF-8 CSV stream (header of attribute names, LF endings) into
    a validated :class:`Microfile`.  Row order is preserved.

    Raises :class:`MicrofileParseError` naming the offending file line for a
    header/schema mismatch, a row of the wrong arity, or a code outside its
    attribute's domain.
    """
    close = False
    if isinstance(source, str):
        stream: IO[str] = open(source, "r", encoding="utf-8", newline="")
        close = True
    else:
        stream = source
    try:
        reader = csv.reader(stream)
        try:
            header = next(reader)
        except StopIteration:
            raise MicrofileParseError("empty input, expected a header row", line=1) from None
        if tuple(header) != file_schema.names:
            raise MicrofileParseError(
                f"header {header!r} does not match schema attributes {list(file_schema.names)!r}",
                line=1,
            )
        domains = [frozenset(a.codes) for a in file_schema.attributes]
        eta = len(domains)
        records: list[tuple[str, ...]] = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != eta:
                raise MicrofileParseError(
                    f"expected {eta} values, found {len(row)}", line=line_no
                )
            for value, domain, attr in zip(row, domains, file_schema.attributes):
                if value not in domain:
                    raise MicrofileParseError(
                        f"code {value!r} is not in the domain of attribute {attr.name!r}",
                        line=line_no,
                    )
            records.append(tuple(row))
        return Microfile(schema=file_schema, records=tuple(records))
    finally:
        if close:
            stream.close()


def save_microfile(mf: Microfile, target: IO[str] | str) -> None:
    """Write a microfile in the same CSV format ``load_microfile`` reads."""
    close = False
    if isinstance(target, str):
        stream: IO[str] = open(target, "w", encoding="utf-8", newline="")
        close = True
    else:
        stream = target
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(mf.schema.names)
        writer.writerows(mf.records)
    finally:
        if close:
            stream.close()


def largest_remainder(shares, total: int) -> np.ndarray:
    """Integerize non-negative ``shares`` so they sum exactly to ``total``.

    Hamilton apportionment: floor everything, then hand the remaining units
    to the largest fractional parts, breaking ties by lowest index.  The
    result never differs from ``shares`` by 1 or more in any component
    (provided ``total == round(sum(shares))``).
    """
    x = np.asarray(shares, dtype=float)
    if np.any(x < 0):
        raise ValueError("largest_remainder requires non-negative shares")
    base = np.floor(x).astype(np.int64)
    remaining = int(total) - int(base.sum())
    if remaining < 0 or remaining > len(x):
        raise ValueError(
            f"total {total} is not reachable from shares summing to {x.sum()!r}"
        )
    if remaining:
        fractions = x - base
        order = np.lexsort((np.arange(len(x)), -fractions))
        base[order[:remaining]] += 1
    return base


def apply_split_rules(mf: Microfile, spec: ParameterSpec, seed: int) -> Microfile:
    """Reassign each record carrying a split-rule source code to one of the
    derived codes.

    The realized counts per derived code are fixed by largest-remainder
    apportionment of the rule weights (so they match the weights to within
    one record); which particular records receive which derived code is a
    seeded uniform choice.  All other attribute values are untouched and the
    record order is preserved.
    """
    if not spec.split_rules:
        return mf
    col = mf.schema.index_of(spec.attribute)
    domain = set(mf.schema.attribute(spec.attribute).codes)
    for rule in spec.split_rules:
        if rule.source not in domain:
            raise ValueError(
                f"split source {rule.source!r} is not in the domain of {spec.attribute!r}"
            )
        for code, _ in rule.parts:
            if code in domain:
                raise ValueError(
                    f"derived code {code!r} collides with an existing {spec.attribute!r} code"
                )

    rows = [list(r) for r in mf.records]
    rng = random.Random(seed)
    new_domain = list(mf.schema.attribute(spec.attribute).codes)
    for rule in spec.split_rules:
        indices = [i for i, r in enumerate(rows) if r[col] == rule.source]
        counts = largest_remainder([w * len(indices) for _, w in rule.parts], len(indices))
        rng.shuffle(indices)
        pos = 0
        for (code, _), count in zip(rule.parts, counts):
            for i in indices[pos : pos + int(count)]:
                rows[i][col] = code
            pos += int(count)
        where = new_domain.index(rule.source)
        new_domain[where : where + 1] = [code for code, _ in rule.parts]

    new_schema = mf.schema.replace_codes(spec.attribute, new_domain)
    return Microfile(schema=new_schema, records=tuple(tuple(r) for r in rows))


def quantity_signal(
    mf: Microfile,
    selection: VitalSelection,
    spec: ParameterSpec,
    strict: bool = True,
) -> QuantitySignal:
    """Count the records matching ``selection`` per parameter value, in the
    order fixed by ``spec``.

    With ``strict`` (the default) any record whose parameter value is
    missing from ``spec.order`` raises; with ``strict=False`` such records
    are ignored unless they match the selection, which always raises.
    """
    spec.check_disjoint(selection)
    vital_cols = [mf.schema.index_of(name) for name in selection.attributes]
    param_col = mf.schema.index_of(spec.attribute)
    index = spec.index()
    combos = selection.combinations
    counts = np.zeros(spec.m, dtype=np.int64)
    for row in mf.records:
        matched = tuple(row[c] for c in vital_cols) in combos
        pos = index.get(row[param_col])
        if pos is None:
            if strict or matched:
                raise ValueError(
                    f"parameter value {row[param_col]!r} present in data but missing "
                    f"from the configured order"
                )
            continue
        if matched:
            counts[pos] += 1
    return QuantitySignal(values=counts, label=selection.label)


def concentration_signal(numerator: QuantitySignal, superset: QuantitySignal) -> ConcentrationSignal:
    """Divide ``numerator`` elementwise by ``superset``.

    Positions where both are zero yield 0; a positive numerator over a zero
    or smaller superset is rejected, since the superset must contain every
    counted record.
    """
    num = np.asarray(numerator.values, dtype=float)
    sup = np.asarray(superset.values, dtype=float)
    if num.shape != sup.shape:
        raise ValueError(f"signal lengths differ: {num.shape} vs {sup.shape}")
    bad = np.nonzero((sup <= 0) & (num > 0))[0]
    if bad.size:
        raise ValueError(
            f"superset is zero where the numerator is positive at indices {list(bad + 1)}"
        )
    over = np.nonzero(num > sup)[0]
    if over.size:
        raise ValueError(
            f"numerator exceeds its superset at indices {list(over + 1)}"
        )
    values = np.divide(num, sup, out=np.zeros_like(num), where=sup > 0)
    return ConcentrationSignal(values=values, label=numerator.label)

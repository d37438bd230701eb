"""Name-length frequency tables.

A :class:`FrequencyTable` maps an identifier length (in octets) to the number
of persons whose identifier has that length.  Tables are read from the
``Length,<series>...`` CSV layout or counted from raw names.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import BinaryIO, Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

from .errors import FrequencyTableError

__all__ = [
    "FrequencyTable",
    "from_csv",
    "read_csv",
    "csv_columns",
    "from_names",
    "name_length",
    "entropy",
    "min_class",
]


@dataclass(frozen=True)
class FrequencyTable:
    """Immutable length -> count table.

    ``entries`` may be given as any mapping or iterable of pairs; it is stored
    as a tuple of ``(length, count)`` sorted by length.  Zero counts are
    dropped so that every stored class is inhabited.
    """

    entries: tuple[tuple[int, int], ...]
    label: str = ""
    _index: Mapping[int, int] = field(init=False, repr=False, compare=False)

    def __init__(
        self,
        entries: Union[Mapping[int, int], Iterable[tuple[int, int]]],
        label: str = "",
    ):
        pairs = entries.items() if isinstance(entries, Mapping) else entries
        index: dict[int, int] = {}
        for length, count in pairs:
            if isinstance(length, bool) or not isinstance(length, (int, np.integer)):
                raise FrequencyTableError(f"length {length!r} is not an integer")
            if isinstance(count, bool) or not isinstance(count, (int, np.integer)):
                raise FrequencyTableError(f"count {count!r} is not an integer")
            length, count = int(length), int(count)
            if length < 1:
                raise FrequencyTableError(f"length must be >= 1, got {length}")
            if count < 0:
                raise FrequencyTableError(f"count for length {length} is negative")
            if length in index:
                raise FrequencyTableError(f"duplicate length {length}")
            index[length] = count
        stored = tuple(sorted((u, c) for u, c in index.items() if c > 0))
        object.__setattr__(self, "entries", stored)
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "_index", dict(stored))

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, length: int) -> int:
        return self._index.get(length, 0)

    def __contains__(self, length: object) -> bool:
        return length in self._index

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.entries)

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.entries)

    def population(self) -> int:
        return sum(c for _, c in self.entries)

    @property
    def max_length(self) -> int:
        if not self.entries:
            raise FrequencyTableError("empty table has no maximum length")
        return self.entries[-1][0]

    def probabilities(self) -> dict[int, float]:
        pop = self.population()
        if pop == 0:
            raise FrequencyTableError("empty table has no distribution")
        return {u: c / pop for u, c in self.entries}

    def scaled(self, factor: int) -> "FrequencyTable":
        return FrequencyTable({u: c * factor for u, c in self.entries}, self.label)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["Length", self.label or "count"])
        writer.writerows(self.entries)
        return out.getvalue()

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def _read_rows(source) -> list[list[str]]:
    if isinstance(source, (bytes, bytearray)):
        raw = bytes(source)
    elif isinstance(source, str):
        raw = source.encode("utf-8")
    else:
        raw = source.read()
        if isinstance(raw, str):
            raw = raw.encode("utf-8")
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise FrequencyTableError(f"CSV is not valid UTF-8: {exc}") from None
    try:
        rows = [row for row in csv.reader(io.StringIO(text, newline="")) if row]
    except csv.Error as exc:
        raise FrequencyTableError(f"malformed CSV: {exc}") from None
    if not rows:
        raise FrequencyTableError("malformed CSV: no header row")
    header = [h.strip() for h in rows[0]]
    if header[0] != "Length":
        raise FrequencyTableError(
            f"malformed CSV: first column must be 'Length', got {header[0]!r}"
        )
    rows[0] = header
    return rows


def csv_columns(source: Union[BinaryIO, bytes, str]) -> list[str]:
    """Names of the count series in a ``Length,...`` CSV."""
    return _read_rows(source)[0][1:]


def from_csv(
    source: Union[BinaryIO, bytes, str], column: str, label: str | None = None
) -> FrequencyTable:
    """Read one count series from a ``Length,<series>...`` CSV.

    ``source`` is a binary stream or the raw bytes.  Quoted and bare cells
    are both accepted, as are LF and CRLF line endings.  Rows whose count in
    ``column`` is 0 are elided.
    """
    rows = _read_rows(source)
    header = rows[0]
    if column not in header[1:]:
        known = ", ".join(header[1:]) or "none"
        raise FrequencyTableError(f"unknown column {column!r} (available: {known})")
    col = header.index(column)
    seen: dict[int, int] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise FrequencyTableError(
                f"malformed CSV: line {lineno} has {len(row)} cells, expected {len(header)}"
            )
        try:
            length = int(row[0].strip())
            count = int(row[col].strip())
        except ValueError:
            raise FrequencyTableError(
                f"non-integer cell on line {lineno}: {row[0]!r}, {row[col]!r}"
            ) from None
        if length in seen:
            raise FrequencyTableError(f"duplicate length row {length} on line {lineno}")
        seen[length] = count
    return FrequencyTable(seen, column if label is None else label)


def read_csv(path: Union[str, Path], column: str, label: str | None = None) -> FrequencyTable:
    with open(path, "rb") as fh:
        return from_csv(fh, column, label)


def name_length(name: str) -> int:
    """Length of a (transliterated) name: one octet per non-space character."""
    return len(name.replace(" ", ""))


def from_names(names: Sequence[str], label: str = "") -> FrequencyTable:
    """Count name lengths, with spaces between name parts removed.

    Every remaining character counts as one octet; callers are expected to
    have transliterated to ASCII already (so ``"Åsa Öst"`` counts as 6).
    """
    if not names:
        raise FrequencyTableError("no names given")
    counter: Counter[int] = Counter()
    for i, name in enumerate(names):
        n = name_length(name)
        if n == 0:
            raise FrequencyTableError(f"name #{i} is empty after removing spaces")
        counter[n] += 1
    return FrequencyTable(counter, label)


def entropy(t: FrequencyTable) -> float:
    """Shannon entropy H(U) of the length distribution, in bits."""
    counts = np.asarray(t.counts, dtype=np.float64)
    if counts.size == 0 or counts.sum() < 1:
        raise FrequencyTableError("entropy of an empty table is undefined")
    if counts.size == 1:
        return 0.0
    p = counts / counts.sum()
    return float(-np.sum(p * np.log2(p)))


def min_class(t: FrequencyTable) -> tuple[int, int]:
    """Smallest class as ``(length, count)``; ties go to the shorter length."""
    if not t.entries:
        raise FrequencyTableError("min_class of an empty table")
    return min(t.entries, key=lambda e: (e[1], e[0]))


def max_entropy(t: FrequencyTable) -> float:
    return math.log2(len(t)) if len(t) > 1 else 0.0

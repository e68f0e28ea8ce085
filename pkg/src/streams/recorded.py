# SPDX-License-Identifier: Apache 2.0
# Copyright (c) 2025 IBM

"""Recorded streams: delimiter-separated files, one instance per line."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np

from .instances import ClassSpace, EmptyStreamError, Instance, StreamFormatError

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)


@dataclass
class StreamSchema:
    """Column layout of a recorded stream.

    Rows hold ``n_features`` numeric fields followed by one label field. When
    ``n_features`` is ``None`` the arity of the first data row fixes it.
    """

    delimiter: str = ","
    has_header: bool = False
    n_features: int | None = None

    def __post_init__(self) -> None:
        if self.n_features is not None and self.n_features <= 0:
            raise ValueError("n_features must be > 0")
        if len(self.delimiter) != 1:
            raise ValueError("delimiter must be a single character")


def _parse_row(
    row: list[str], line: int, n_features: int
) -> tuple[np.ndarray, str]:
    if len(row) != n_features + 1:
        raise StreamFormatError(
            f"expected {n_features + 1} fields, found {len(row)}", line
        )
    values = np.empty(n_features, dtype=np.float64)
    for column, cell in enumerate(row[:n_features], start=1):
        text = cell.strip()
        if not text:
            raise StreamFormatError("blank feature value", line, column)
        try:
            value = float(text)
        except ValueError:
            raise StreamFormatError(
                f"non-numeric feature value {text!r}", line, column
            ) from None
        if not math.isfinite(value):
            raise StreamFormatError(f"non-finite feature value {text!r}", line, column)
        values[column - 1] = value
    label = row[n_features].strip()
    if not label:
        raise StreamFormatError("blank label", line, n_features + 1)
    return values, label


def read_recorded_stream(
    path: str | Path,
    schema: StreamSchema | None = None,
    class_space: ClassSpace | None = None,
    start: int = 0,
    length: int | None = None,
) -> Iterator[Instance]:
    """Yield the instances of a recorded file in file order.

    Time indices are consecutive from 0 over the yielded rows. Labels are
    interned into ``class_space`` (a fresh one when omitted). ``start`` and
    ``length`` select a row range, counted over data rows.

    Raises:
        FileNotFoundError: the file does not exist.
        StreamFormatError: a row has the wrong arity or a bad cell.
        EmptyStreamError: the file (or the selected range) has no data rows.
    """
    schema = schema or StreamSchema()
    space = class_space if class_space is not None else ClassSpace()
    source = Path(path)
    if not source.is_file():
        raise FileNotFoundError(f"recorded stream not found: {source}")
    if start < 0:
        raise ValueError("start must be >= 0")
    if length is not None and length <= 0:
        raise ValueError("length must be > 0")

    n_features = schema.n_features
    produced = 0
    data_row = -1
    with source.open(newline="") as handle:
        reader = csv.reader(handle, delimiter=schema.delimiter)
        for line, row in enumerate(reader, start=1):
            if line == 1 and schema.has_header:
                continue
            if not row or all(not cell.strip() for cell in row):
                continue
            data_row += 1
            if n_features is None:
                n_features = len(row) - 1
                if n_features <= 0:
                    raise StreamFormatError("row has no feature columns", line)
            if data_row < start:
                continue
            values, label = _parse_row(row, line, n_features)
            yield Instance(produced, values, space.intern(label))
            produced += 1
            if length is not None and produced >= length:
                break

    if produced == 0:
        raise EmptyStreamError(f"no instances in {source}")
    logger.debug(
        "read %d instances with %d features from %s (%d classes so far)",
        produced,
        n_features,
        source,
        space.cardinality,
    )


def count_rows(path: str | Path, schema: StreamSchema | None = None) -> int:
    """Number of non-blank data rows in a recorded file."""
    schema = schema or StreamSchema()
    rows = 0
    with Path(path).open(newline="") as handle:
        reader = csv.reader(handle, delimiter=schema.delimiter)
        for line, row in enumerate(reader, start=1):
            if line == 1 and schema.has_header:
                continue
            if row and any(cell.strip() for cell in row):
                rows += 1
    return rows

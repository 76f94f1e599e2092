"""Plain-text tensor files.

Format::

    # comment lines start with '#'
    3              <- order d
    2 2 2          <- extents
    1 0 0 0        <- prod(extents) values, row-major, any whitespace layout
    0 0 0 0

Values are written with ``repr`` so a write/read round trip is bit-exact.
"""

from __future__ import annotations

import math
import os
from typing import Iterator

import numpy as np

from .exceptions import TensorFormatError
from .tensor import Tensor, as_array

__all__ = ["parse_tensor", "format_tensor", "read_tensor", "write_tensor"]


def _tokens(text: str) -> Iterator[tuple[str, int, int]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            yield tok, lineno, col + 1
            col += len(tok)


def _int_token(tok, line, col, what):
    try:
        return int(tok)
    except ValueError:
        raise TensorFormatError(f"expected integer {what}, got {tok!r}", line, col) from None


def parse_tensor(text: str) -> Tensor:
    toks = _tokens(text)
    lines = text.splitlines()

    try:
        tok, line, col = next(toks)
    except StopIteration:
        raise TensorFormatError("empty file: missing order line", 1, 1) from None
    d = _int_token(tok, line, col, "order")
    if d < 1:
        raise TensorFormatError(f"order must be >= 1, got {d}", line, col)
    order_line = line

    # the extents occupy the next non-comment line
    shape = []
    for _ in range(d):
        try:
            tok, line, col = next(toks)
        except StopIteration:
            raise TensorFormatError(
                f"expected {d} extents, found {len(shape)}", order_line + 1, 1
            ) from None
        n = _int_token(tok, line, col, "extent")
        if n < 1:
            raise TensorFormatError(f"extent must be positive, got {n}", line, col)
        shape.append(n)

    size = math.prod(shape)
    values = np.empty(size)
    count = 0
    for tok, line, col in toks:
        if count >= size:
            raise TensorFormatError(f"too many values: expected {size}", line, col)
        try:
            v = float(tok)
        except ValueError:
            raise TensorFormatError(f"expected a number, got {tok!r}", line, col) from None
        if not math.isfinite(v):
            raise TensorFormatError(f"non-finite value {tok!r}", line, col)
        values[count] = v
        count += 1
    if count < size:
        raise TensorFormatError(f"expected {size} values, found {count}", len(lines) or 1, 1)
    return Tensor(values, shape=shape)


def format_tensor(T, comment: str | None = None) -> str:
    a = as_array(T)
    if a.ndim < 1:
        raise ValueError("only tensors of order >= 1 can be written")
    out = []
    if comment:
        out.extend("# " + c for c in comment.splitlines())
    out.append(str(a.ndim))
    out.append(" ".join(str(n) for n in a.shape))
    for row in a.reshape(-1, a.shape[-1]):
        out.append(" ".join(repr(float(v)) for v in row))
    return "\n".join(out) + "\n"


def read_tensor(path: str | os.PathLike) -> Tensor:
    with open(path, encoding="utf-8") as fh:
        return parse_tensor(fh.read())


def write_tensor(path: str | os.PathLike, T, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_tensor(T, comment))

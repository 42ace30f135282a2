"""Text formats for instances, set cover inputs and witnesses.

Instance file::

    d k
    n_1
    <n_1 bitstrings of length d>
    ...
    n_k
    <n_k bitstrings of length d>

Set cover file::

    d m t
    <m bitstrings of length d>
"""
from __future__ import annotations

import os
from typing import Iterator, Sequence

from .core import MAX_DIM, BitVector, Family, Instance, parse_bitstring


class FormatError(ValueError):
    pass


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if line:
            yield lineno, line


def _ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise FormatError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"line {lineno}: expected integers, got {line!r}") from None


def _row(line: str, d: int, lineno: int) -> int:
    if len(line) != d:
        raise FormatError(f"line {lineno}: row length {len(line)} != d={d}")
    try:
        return parse_bitstring(line).mask
    except ValueError as exc:
        raise FormatError(f"line {lineno}: {exc}") from None


def _check_header_dim(d: int) -> None:
    if not 1 <= d <= MAX_DIM:
        raise FormatError(f"d must lie in [1, {MAX_DIM}], got {d}")


def _take(lines: Iterator[tuple[int, str]], what: str) -> tuple[int, str]:
    try:
        return next(lines)
    except StopIteration:
        raise FormatError(f"unexpected end of file while reading {what}") from None


def loads_instance(text: str) -> Instance:
    lines = _lines(text)
    lineno, header = _take(lines, "header")
    d, k = _ints(header, 2, lineno)
    _check_header_dim(d)
    if k < 1:
        raise FormatError(f"k must be positive, got {k}")
    families = []
    for i in range(k):
        lineno, line = _take(lines, f"size of family {i + 1}")
        (n,) = _ints(line, 1, lineno)
        if n < 0:
            raise FormatError(f"line {lineno}: negative family size")
        masks = []
        for _ in range(n):
            lineno, line = _take(lines, f"member of family {i + 1}")
            masks.append(_row(line, d, lineno))
        families.append(Family(d, tuple(masks)))
    extra = next(lines, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: trailing content after {k} families")
    return Instance(d, tuple(families))


def _bits(mask: int, d: int) -> str:
    return BitVector(mask, d).to_bitstring()


def dumps_instance(instance: Instance) -> str:
    d = instance.dim
    out = [f"{d} {instance.k}"]
    for fam in instance.families:
        out.append(str(len(fam)))
        out.extend(_bits(m, d) for m in fam.masks)
    return "\n".join(out) + "\n"


def read_instance(path: str | os.PathLike) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads_instance(fh.read())


def write_instance(instance: Instance, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_instance(instance))


def loads_setcover(text: str) -> tuple[int, Family, int]:
    """Return ``(d, F, t)``."""
    lines = _lines(text)
    lineno, header = _take(lines, "header")
    d, m, t = _ints(header, 3, lineno)
    _check_header_dim(d)
    if m < 0:
        raise FormatError(f"line {lineno}: negative set count")
    if t < 1:
        raise FormatError(f"line {lineno}: t must be positive")
    masks = []
    for _ in range(m):
        lineno, line = _take(lines, "set")
        masks.append(_row(line, d, lineno))
    extra = next(lines, None)
    if extra is not None:
        raise FormatError(f"line {extra[0]}: trailing content after {m} sets")
    return d, Family(d, tuple(masks)), t


def dumps_setcover(d: int, family: Family, t: int) -> str:
    out = [f"{d} {len(family)} {t}"]
    out.extend(_bits(m, d) for m in family.masks)
    return "\n".join(out) + "\n"


def read_setcover(path: str | os.PathLike) -> tuple[int, Family, int]:
    with open(path, encoding="utf-8") as fh:
        return loads_setcover(fh.read())


def write_setcover(d: int, family: Family, t: int, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_setcover(d, family, t))


def write_witness(witness: Sequence[BitVector], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(v.to_bitstring() + "\n" for v in witness)

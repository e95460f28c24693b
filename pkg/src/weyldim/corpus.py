"""Corpus files: one cyclic module per file, plain text.

    # comment (also allowed inline)
    n=2
    name: heat-operator
    gen: d1 - d2^2
    expect_d: 3
    expect_hilbert: C(t+3,3) + C(t+2,3)
    height: 1
    filtration: 1
    shift: 0
    filtration: 1, x1
    shift: 0, 0

The first significant line fixes the ambient count.  Each `gen:` adds an
ideal generator (no gen lines = the zero ideal).  `filtration:` opens a
good-filtration spec with comma-separated module generators; a following
`shift:` attaches one shift per generator (default all zero).  expect_d,
expect_hilbert and height are optional metadata; expect_hilbert is an
informational tag, not parsed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import CorpusFormatError
from .filtration import GoodFiltrationSpec, LeftIdealPresentation
from .opparser import parse

_KNOWN_KEYS = ("gen", "name", "expect_d", "expect_hilbert", "height", "filtration", "shift")


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    n: int
    ideal: LeftIdealPresentation
    expected_d: int | None = None
    expected_hilbert: str | None = None
    height_h: int | None = None
    filtrations: tuple = ()


def parse_corpus_text(text: str, name: str = "corpus-entry") -> CorpusEntry:
    n = None
    gens = []
    expected_d = None
    expected_hilbert = None
    height = None
    # each pending spec: [generator expr list, shifts or None, line]
    pending_specs: list[list] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            if not line.replace(" ", "").startswith("n="):
                raise CorpusFormatError("first line must be n=<int>", lineno)
            try:
                n = int(line.split("=", 1)[1])
            except ValueError:
                raise CorpusFormatError("first line must be n=<int>", lineno) from None
            if n < 1:
                raise CorpusFormatError("n must be >= 1", lineno)
            continue
        if ":" not in line:
            raise CorpusFormatError(f"expected 'key: value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split(":", 1))
        if key not in _KNOWN_KEYS:
            raise CorpusFormatError(f"unknown key {key!r}", lineno)
        if key == "gen":
            gens.append(parse(value, n))
        elif key == "name":
            name = value
        elif key == "expect_d":
            expected_d = _int_value(value, key, lineno)
        elif key == "expect_hilbert":
            expected_hilbert = value
        elif key == "height":
            height = _int_value(value, key, lineno)
        elif key == "filtration":
            exprs = [e.strip() for e in value.split(",")]
            if not all(exprs):
                raise CorpusFormatError("empty generator in filtration list", lineno)
            pending_specs.append([exprs, None, lineno])
        elif key == "shift":
            if not pending_specs or pending_specs[-1][1] is not None:
                raise CorpusFormatError("shift line without a preceding filtration line", lineno)
            try:
                shifts = [int(v.strip()) for v in value.split(",")]
            except ValueError:
                raise CorpusFormatError("shift values must be integers", lineno) from None
            pending_specs[-1][1] = shifts
    if n is None:
        raise CorpusFormatError("empty corpus file", 1)
    ideal = LeftIdealPresentation(n, tuple(gens))
    filtrations = []
    for exprs, shifts, lineno in pending_specs:
        ops = tuple(parse(e, n) for e in exprs)
        if shifts is None:
            shifts = [0] * len(ops)
        if len(shifts) != len(ops):
            raise CorpusFormatError(
                f"{len(ops)} filtration generators but {len(shifts)} shifts", lineno
            )
        filtrations.append(GoodFiltrationSpec(ideal, ops, tuple(shifts)))
    return CorpusEntry(
        name=name,
        n=n,
        ideal=ideal,
        expected_d=expected_d,
        expected_hilbert=expected_hilbert,
        height_h=height,
        filtrations=tuple(filtrations),
    )


def _int_value(value: str, key: str, lineno: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise CorpusFormatError(f"{key} expects an integer, got {value!r}", lineno) from None


def load_corpus_file(path: str) -> CorpusEntry:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_corpus_text(text, name=stem)


def load_corpus_dir(path: str) -> list[CorpusEntry]:
    """All *.wcor files in a directory, sorted by entry name."""
    entries = []
    for fname in sorted(os.listdir(path)):
        if fname.endswith(".wcor"):
            entries.append(load_corpus_file(os.path.join(path, fname)))
    if not entries:
        raise CorpusFormatError(f"no .wcor files in {path!r}", 1)
    return sorted(entries, key=lambda e: e.name)

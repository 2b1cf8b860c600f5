"""Reading OEIS b-files and comparing them with computed sequences.

A b-file is plain text with one ``index value`` pair per line.  Lines starting
with ``#`` are comments and blank lines are ignored.  Fixtures live in
``fixtures/A??????.txt`` at the repository root; nothing here touches the
network.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Union

from .identities import ConvolutionValue
from .report import CheckRecord
from .sequences import TermVector

_ID_RE = re.compile(r"[Ab](\d{6})")


class BFileError(ValueError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class EmptyOverlapError(ValueError):
    pass


@dataclass(frozen=True)
class BFile:
    sequence_id: str
    entries: tuple[tuple[int, int], ...]
    source_path: str = ""

    @property
    def indices(self) -> list[int]:
        return [i for i, _ in self.entries]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)


def _infer_id(source_path: str) -> str:
    m = _ID_RE.search(Path(source_path).name) if source_path else None
    return f"A{m.group(1)}" if m else ""


def parse_bfile(text: Union[bytes, str], sequence_id: str = "", source_path: str = "") -> BFile:
    """Parse b-file text.

    Raises :class:`BFileError` (carrying the 1-based line number) for a line
    that is not two integers, and for an index that does not follow the
    previous one by exactly one.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    entries = []
    prev = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise BFileError(f"expected 'index value', got {raw!r}", lineno)
        try:
            index, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise BFileError(f"non-integer field in {raw!r}", lineno) from None
        if prev is not None and index <= prev:
            raise BFileError(f"index {index} does not increase (previous {prev})", lineno)
        if prev is not None and index != prev + 1:
            raise BFileError(f"index {index} leaves a gap after {prev}", lineno)
        entries.append((index, value))
        prev = index
    return BFile(sequence_id or _infer_id(source_path), tuple(entries), source_path)


def load_bfile(path: Union[str, Path]) -> BFile:
    path = Path(path)
    return parse_bfile(path.read_bytes(), source_path=str(path))


def serialize_bfile(bfile: BFile, header: Iterable[str] = ()) -> str:
    """Canonical text: optional ``#`` header lines then ``index value`` lines.

    Comments from the parsed source are not kept, so parsing a file and
    serializing it again reproduces it only up to its comment lines.
    """
    lines = [f"# {h}" if h else "#" for h in header]
    lines += [f"{i} {v}" for i, v in bfile.entries]
    return "\n".join(lines) + "\n"


Computed = Union[TermVector, Iterable[ConvolutionValue], Mapping[int, int]]


def _computed_dict(computed: Computed) -> dict[int, int]:
    if isinstance(computed, TermVector):
        return {computed.start_index + i: v for i, v in enumerate(computed.values)}
    if isinstance(computed, Mapping):
        return dict(computed)
    return {c.n: c.value for c in computed}


def cross_check(bfile: BFile, computed: Computed, offset: int = 0) -> CheckRecord:
    """Compare OEIS entry ``i`` with computed entry ``i + offset`` over their overlap."""
    t0 = time.perf_counter_ns()
    values = _computed_dict(computed)
    overlap = [(i, v) for i, v in bfile.entries if i + offset in values]
    if not overlap:
        raise EmptyOverlapError(f"{bfile.sequence_id or 'b-file'} shares no indices with the computed values at offset {offset}")
    rec = CheckRecord(
        "oeis",
        {
            "sequence": bfile.sequence_id,
            "offset": offset,
            "first_index": overlap[0][0],
            "last_index": overlap[-1][0],
        },
    )
    mismatches = []
    for i, v in overlap:
        rec.cells_checked += 1
        if values[i + offset] != v:
            mismatches.append(i)
            rec.fail({"oeis_index": i, "computed_index": i + offset}, v, values[i + offset])
    if mismatches:
        rec.counterexample["mismatch_count"] = len(mismatches)
        rec.counterexample["mismatch_indices"] = mismatches[:20]
    rec.elapsed_ns = time.perf_counter_ns() - t0
    return rec

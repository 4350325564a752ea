"""Table rows, the bundled reference tables, and CSV/JSON/pretty output."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from importlib import resources
from typing import Iterable, Optional, Sequence

from .paths import EnumOptions, enumerate_words
from .peterson import MultTable
from .root_lattice import LatticeVector, RootTag, Shape, classify, gcd3, vec

TABLE_HEADER = ["s", "t", "a", "b", "c", "mult", "refined", "basic"]

# deep s=t=2 rows take far longer than the rest; opt in with full=True
LONG_ROW_HEIGHT = 22


class ConsistencyError(RuntimeError):
    """mult <= refined <= basic violated for a gcd-1 imaginary root."""


@dataclass(frozen=True)
class TableRow:
    s: int
    t: int
    a: int
    b: int
    c: int
    mult: int
    refined: int
    basic: int

    @property
    def key(self) -> tuple[int, int, int, int, int]:
        return (self.s, self.t, self.a, self.b, self.c)

    @property
    def root(self) -> LatticeVector:
        return LatticeVector(self.a, self.b, self.c)

    def triple(self) -> tuple[int, int, int]:
        return (self.mult, self.refined, self.basic)


@dataclass(frozen=True)
class ReferenceRow:
    row: TableRow
    figure: str

    @property
    def is_long(self) -> bool:
        return self.figure == "fig1" and self.row.root.height > LONG_ROW_HEIGHT


def load_reference() -> list[ReferenceRow]:
    """Rows of both bundled reference tables, verbatim (the duplicated row included)."""
    text = resources.files("rootmult").joinpath("data/reference.csv").read_text(encoding="utf-8")
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        row = TableRow(*(int(rec[k]) for k in TABLE_HEADER))
        out.append(ReferenceRow(row, rec["figure"]))
    return out


def reference_rows(shape: Optional[Shape] = None, figure: Optional[str] = None, full: bool = True) -> list[ReferenceRow]:
    rows = load_reference()
    if shape is not None:
        rows = [r for r in rows if (r.row.s, r.row.t) == (shape.s, shape.t)]
    if figure is not None:
        rows = [r for r in rows if r.figure == figure]
    if not full:
        rows = [r for r in rows if not r.is_long]
    return rows


def compute_row(
    root: Sequence[int],
    shape: Shape,
    table: MultTable,
    touch_rule: str = "weak",
    workers: int = 1,
) -> TableRow:
    root = vec(root)
    basic = enumerate_words(root, shape, EnumOptions(refined=False, touch_rule=touch_rule), workers).count
    refined = enumerate_words(root, shape, EnumOptions(refined=True, touch_rule=touch_rule), workers).count
    mult = table.multiplicity(root)
    row = TableRow(shape.s, shape.t, *root, mult, refined, basic)
    if gcd3(root) == 1 and classify(root, shape).tag is RootTag.IMAGINARY:
        if not (mult <= refined <= basic):
            raise ConsistencyError(f"bound ordering violated at {tuple(root)}: {row.triple()}")
    return row


def sort_rows(rows: Iterable[TableRow]) -> list[TableRow]:
    return sorted(rows, key=lambda r: (r.s, r.t, r.root.height, r.root))


@dataclass(frozen=True)
class Mismatch:
    key: tuple[int, int, int, int, int]
    expected: tuple[int, int, int]
    got: tuple[int, int, int]


def compare_reference(rows: Iterable[TableRow], full: bool = False) -> list[Mismatch]:
    """Diff computed rows against reference rows with the same key.

    Duplicate reference rows collapse onto one key; rows without a
    reference entry are ignored.
    """
    ref: dict = {}
    for r in reference_rows(full=full):
        ref.setdefault(r.row.key, r.row)
    out = []
    for row in rows:
        exp = ref.get(row.key)
        if exp is not None and exp.triple() != row.triple():
            out.append(Mismatch(row.key, exp.triple(), row.triple()))
    return out


# -- serialization ------------------------------------------------------------

def rows_to_csv(rows: Iterable[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_HEADER)
    for r in rows:
        w.writerow([getattr(r, k) for k in TABLE_HEADER])
    return buf.getvalue()


def rows_from_csv(text: str) -> list[TableRow]:
    return [TableRow(*(int(rec[k]) for k in TABLE_HEADER)) for rec in csv.DictReader(io.StringIO(text))]


def rows_to_json(rows: Sequence[TableRow], shape: Shape) -> str:
    obj = {
        "shape": {"s": shape.s, "t": shape.t},
        "rows": [
            {"root": [r.a, r.b, r.c], "mult": r.mult, "refined": r.refined, "basic": r.basic}
            for r in rows
        ],
    }
    return json.dumps(obj)


def rows_from_json(text: str) -> list[TableRow]:
    obj = json.loads(text)
    s, t = obj["shape"]["s"], obj["shape"]["t"]
    return [TableRow(s, t, *r["root"], r["mult"], r["refined"], r["basic"]) for r in obj["rows"]]


def rows_to_pretty(rows: Sequence[TableRow]) -> str:
    head = ["(A,B,C)", "mult", "refined", "basic"]
    body = [[f"({r.a}, {r.b}, {r.c})", str(r.mult), str(r.refined), str(r.basic)] for r in rows]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(x.ljust(w) for x, w in zip(line, widths)).rstrip() for line in [head, *body]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def rows_from_pretty(text: str) -> list[tuple[tuple[int, int, int], int, int, int]]:
    out = []
    for line in text.splitlines()[2:]:
        root, rest = line.split(")", 1)
        a, b, c = (int(x) for x in root.strip("( ").split(","))
        m, r, bb = (int(x) for x in rest.split())
        out.append(((a, b, c), m, r, bb))
    return out


def row_dict(row: TableRow) -> dict:
    return asdict(row)


def minimal_roots(shape: Shape, max_height: int, full_support: bool = True) -> list[LatticeVector]:
    """Anti-dominant imaginary roots of height <= max_height, by height then lex.

    With ``full_support`` (the default) roots living on a rank-2 subdiagram,
    such as the null root (1,1,0) when s = 2, are left out.
    """
    out = []
    for h in range(1, max_height + 1):
        for a in range(h + 1):
            for b in range(h - a + 1):
                v = LatticeVector(a, b, h - a - b)
                if full_support and min(v) == 0:
                    continue
                rc = classify(v, shape)
                if rc.tag is RootTag.IMAGINARY and rc.representative == v:
                    out.append(v)
    return sorted(out, key=lambda v: (v.height, v))

#!/usr/bin/env python3
"""Recompute every bundled reference row and print a diff-style report.

    python3 scripts/reproduce_reference_tables.py                # fast rows only
    python3 scripts/reproduce_reference_tables.py --full         # include the deep s=t=2 rows
    python3 scripts/reproduce_reference_tables.py --csv out.csv  # also write the computed table
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from rootmult.peterson import MultTable
from rootmult.report import compute_row, reference_rows, rows_to_csv, sort_rows
from rootmult.root_lattice import Shape


@dataclass(frozen=True)
class ReproConfig:
    full: bool = False
    touch_rule: str = "weak"
    workers: int = 1
    csv_path: str | None = None


def run(cfg: ReproConfig) -> int:
    tables: dict[Shape, MultTable] = {}
    seen = set()
    computed = []
    mismatches = 0
    for ref in reference_rows(full=cfg.full):
        row = ref.row
        if row.key in seen:
            continue
        seen.add(row.key)
        shape = Shape(row.s, row.t)
        table = tables.setdefault(shape, MultTable(shape))
        t0 = time.perf_counter()
        got = compute_row(row.root, shape, table, cfg.touch_rule, cfg.workers)
        dt = time.perf_counter() - t0
        computed.append(got)
        status = "ok" if got.triple() == row.triple() else "MISMATCH"
        mismatches += status != "ok"
        print(f"{ref.figure} s={row.s} t={row.t} {tuple(row.root)!s:14} "
              f"reference {row.triple()!s:26} computed {got.triple()!s:26} {status:8} {dt:6.1f}s")
    print(f"{len(computed)} rows, {mismatches} mismatches")
    if cfg.csv_path:
        with open(cfg.csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(rows_to_csv(sort_rows(computed)))
    return mismatches


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--full", action="store_true")
    p.add_argument("--touch-rule", choices=["weak", "strict"], default="weak")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", dest="csv_path")
    args = p.parse_args()
    cfg = ReproConfig(args.full, args.touch_rule, args.workers, args.csv_path)
    raise SystemExit(1 if run(cfg) else 0)


if __name__ == "__main__":
    main()

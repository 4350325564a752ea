#!/usr/bin/env python3
"""Compare the weak (>=) and strict (>) touch rules.

Prints, for each shape, how each rule fares against the reference rows and
the first targets (by height) where the two rules give different counts.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass
from itertools import product
from math import gcd

from rootmult.paths import EnumOptions, enumerate_words
from rootmult.peterson import MultTable
from rootmult.report import compute_row, reference_rows
from rootmult.root_lattice import Shape


@dataclass(frozen=True)
class AdjudicationConfig:
    max_height: int = 9
    divergences: int = 5
    full: bool = False


def first_divergences(shape: Shape, cfg: AdjudicationConfig):
    found = []
    targets = [
        (a, b, c)
        for a, b, c in product(range(1, cfg.max_height + 1), range(cfg.max_height), range(cfg.max_height))
        if a + b + c <= cfg.max_height
    ]
    for tgt in sorted(targets, key=lambda v: (sum(v), v)):
        counts = {
            (refined, rule): enumerate_words(tgt, shape, EnumOptions(refined=refined, touch_rule=rule)).count
            for refined in (False, True)
            for rule in ("weak", "strict")
        }
        if counts[False, "weak"] != counts[False, "strict"] or counts[True, "weak"] != counts[True, "strict"]:
            found.append((tgt, counts))
            if len(found) == cfg.divergences:
                break
    return found


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-height", type=int, default=9)
    p.add_argument("--divergences", type=int, default=5)
    p.add_argument("--full", action="store_true")
    a = p.parse_args()
    cfg = AdjudicationConfig(a.max_height, a.divergences, a.full)

    for shape in (Shape(2, 1), Shape(2, 2)):
        table = MultTable(shape)
        rows = {r.row.key: r.row for r in reference_rows(shape, full=cfg.full)}
        for rule in ("weak", "strict"):
            bad = [
                (tuple(r.root), r.triple(), got)
                for r in rows.values()
                if (got := compute_row(r.root, shape, table, rule).triple()) != r.triple()
            ]
            print(f"s={shape.s} t={shape.t} {rule:6} rule: {len(rows) - len(bad)}/{len(rows)} rows match"
                  + "".join(f"\n    {root}: reference {ref}, computed {got}" for root, ref, got in bad))
        for tgt, counts in first_divergences(shape, cfg):
            g = gcd(*tgt)
            print(f"    diverges at {tgt} (gcd {g}): basic weak/strict {counts[False, 'weak']}/{counts[False, 'strict']},"
                  f" refined {counts[True, 'weak']}/{counts[True, 'strict']}")


if __name__ == "__main__":
    main()

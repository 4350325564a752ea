"""``rootmult`` command line: bound, mult, orbit, table.

Every option can also come from an environment variable ``ROOTMULT_<NAME>``
(e.g. ``ROOTMULT_S=2``).  Exit codes: 0 ok, 2 invalid input, 3 consistency
or reference failure.
"""
from __future__ import annotations

import csv
import json
import os
import sys

import click

from .paths import EnumOptions, enumerate_words, split_blocks
from .peterson import MultTable
from .report import (
    ConsistencyError,
    compare_reference as diff_reference,
    compute_row,
    minimal_roots,
    reference_rows,
    rows_to_csv,
    rows_to_json,
    rows_to_pretty,
    sort_rows,
)
from .root_lattice import LatticeVector, RootTag, Shape, classify, gcd3, orbit_path, pairing, simple_pairings

EXIT_INVALID = 2
EXIT_MISMATCH = 3


def _env(name: str) -> str:
    return f"ROOTMULT_{name}"


def _shape(s: int, t: int) -> Shape:
    try:
        return Shape(s, t)
    except ValueError as e:
        raise click.UsageError(str(e)) from e


def _parse_root(text: str, nonneg: bool = True) -> LatticeVector:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected a,b,c integers, got {text!r}", param_hint="--root")
    if len(parts) != 3:
        raise click.BadParameter(f"expected exactly three coefficients, got {text!r}", param_hint="--root")
    v = LatticeVector(*parts)
    if nonneg and (min(v) < 0 or v == (0, 0, 0)):
        raise click.BadParameter(f"root must be nonzero with nonnegative coefficients, got {text!r}", param_hint="--root")
    return v


def _parse_word(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        word = [int(x) for x in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated node indices, got {text!r}", param_hint="--word")
    if any(i not in (1, 2, 3) for i in word):
        raise click.BadParameter(f"node indices must be 1, 2 or 3, got {text!r}", param_hint="--word")
    return word


def _warn(msg: str) -> None:
    click.echo(f"warning: {msg}", err=True)


def _guard_root(root: LatticeVector, shape: Shape) -> None:
    g = gcd3(root)
    if g != 1:
        _warn(f"gcd{tuple(root)} = {g}: the count bounds a sum of products of multiplicities, not m_beta alone")
    tag = classify(root, shape).tag
    if tag is not RootTag.IMAGINARY:
        _warn(f"{tuple(root)} is classified {tag.value}, not an imaginary root")


def shape_options(f):
    f = click.option("--t", "t", type=int, required=True, envvar=_env("T"), help="Edges between nodes 1 and 3.")(f)
    f = click.option("--s", "s", type=int, required=True, envvar=_env("S"), help="Edges between nodes 1 and 2.")(f)
    return f


def _load_cache(table: MultTable, cache: str | None) -> None:
    if cache and os.path.exists(cache):
        table.load_csv(cache)


@click.group()
def main():
    """Root multiplicity bounds for rank-3 symmetric Kac-Moody algebras."""


@main.command()
@shape_options
@click.option("--root", required=True, envvar=_env("ROOT"), help="Coefficients a,b,c of alpha1, alpha2, alpha3.")
@click.option("--list", "list_words", is_flag=True, envvar=_env("LIST"), help="Print the surviving words.")
@click.option("--json", "as_json", is_flag=True, envvar=_env("JSON"), help="Emit one JSON object.")
@click.option("--touch-rule", type=click.Choice(["weak", "strict"]), default="weak", envvar=_env("TOUCH_RULE"))
@click.option("--workers", type=int, default=1, envvar=_env("WORKERS"), help="Processes for the search.")
def bound(s, t, root, list_words, as_json, touch_rule, workers):
    """Count words passing the basic and refined conditions."""
    shape = _shape(s, t)
    root = _parse_root(root)
    if root.a < 1:
        raise click.BadParameter("the bound needs a >= 1", param_hint="--root")
    _guard_root(root, shape)
    emit = "list" if list_words else "count"
    basic = enumerate_words(root, shape, EnumOptions(refined=False, touch_rule=touch_rule, emit=emit), workers)
    refined = enumerate_words(root, shape, EnumOptions(refined=True, touch_rule=touch_rule, emit=emit), workers)
    if as_json:
        obj = {
            "shape": {"s": s, "t": t},
            "root": list(root),
            "basic": basic.count,
            "refined": refined.count,
        }
        if list_words:
            obj["words"] = refined.words
            obj["basic_words"] = basic.words
        click.echo(json.dumps(obj))
        return
    click.echo(f"shape s={s} t={t}  root {tuple(root)}")
    click.echo(f"basic:   {basic.count}")
    click.echo(f"refined: {refined.count}")
    if list_words:
        keep = set(refined.words)
        for w in basic.words:
            mark = "refined" if w in keep else "basic-only"
            blocks = " ".join(f"({a},{b},{c})" for a, b, c in split_blocks(w))
            click.echo(f"{w}  {mark:10s}  {blocks}")


@main.command()
@shape_options
@click.option("--root", required=True, envvar=_env("ROOT"))
@click.option("--cache", type=click.Path(dir_okay=False), envvar=_env("CACHE"), help="CSV multiplicity cache to reuse/extend.")
@click.option("--json", "as_json", is_flag=True, envvar=_env("JSON"))
def mult(s, t, root, cache, as_json):
    """Exact multiplicity from the Peterson recurrence."""
    shape = _shape(s, t)
    root = _parse_root(root)
    table = MultTable(shape)
    _load_cache(table, cache)
    m = table.multiplicity(root)
    if cache:
        table.save_csv(cache)
    if as_json:
        click.echo(json.dumps({"shape": {"s": s, "t": t}, "root": list(root), "mult": m}))
    else:
        click.echo(m)


@main.command()
@shape_options
@click.option("--root", required=True, envvar=_env("ROOT"))
@click.option("--word", default="", envvar=_env("WORD"), help="Comma list of nodes, applied left to right.")
def orbit(s, t, root, word):
    """Apply simple reflections and summarise the input's Weyl orbit."""
    shape = _shape(s, t)
    root = _parse_root(root, nonneg=False)
    word = _parse_word(word)
    path = orbit_path(root, word, shape)
    click.echo(f"start     {tuple(path[0])}")
    for i, v in zip(word, path[1:]):
        click.echo(f"s{i}  ->    {tuple(v)}")
    click.echo(f"final     {tuple(path[-1])}")
    click.echo(f"norm      {pairing(root, root, shape)}")
    if min(root) >= 0 and root != (0, 0, 0):
        rc = classify(root, shape)
        click.echo(f"class     {rc.tag.value}")
        click.echo(f"rep       {tuple(rc.representative)} via [{','.join(map(str, rc.reflection_word))}]")
        if rc.tag is RootTag.IMAGINARY:
            click.echo(f"minimal   {max(simple_pairings(root, shape)) <= 0}")


def _read_roots(path: str) -> list[LatticeVector]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"a", "b", "c"} <= set(reader.fieldnames):
            raise click.BadParameter("roots file needs columns a,b,c", param_hint="--roots-file")
        try:
            return [LatticeVector(int(r["a"]), int(r["b"]), int(r["c"])) for r in reader]
        except (TypeError, ValueError) as e:
            raise click.BadParameter(f"bad row in roots file: {e}", param_hint="--roots-file")


@main.command()
@shape_options
@click.option("--roots-file", type=click.Path(exists=True, dir_okay=False), envvar=_env("ROOTS_FILE"))
@click.option("--max-height", type=int, envvar=_env("MAX_HEIGHT"))
@click.option("--minimal-only", is_flag=True, envvar=_env("MINIMAL_ONLY"))
@click.option("--from-reference", is_flag=True, envvar=_env("FROM_REFERENCE"), help="Select the bundled reference roots for this shape.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "pretty"]), default="csv", envvar=_env("FORMAT"))
@click.option("--output", "-o", type=click.Path(dir_okay=False), envvar=_env("OUTPUT"))
@click.option("--compare-reference", is_flag=True, envvar=_env("COMPARE_REFERENCE"))
@click.option("--full", is_flag=True, envvar=_env("FULL"), help="Include the long-running deep rows.")
@click.option("--cache", type=click.Path(dir_okay=False), envvar=_env("CACHE"))
@click.option("--touch-rule", type=click.Choice(["weak", "strict"]), default="weak", envvar=_env("TOUCH_RULE"))
@click.option("--workers", type=int, default=1, envvar=_env("WORKERS"))
def table(s, t, roots_file, max_height, minimal_only, from_reference, fmt, output, compare_reference, full, cache, touch_rule, workers):
    """Build a mult/refined/basic table for a selection of roots."""
    shape = _shape(s, t)
    chosen = sum(x is not None and x is not False for x in (roots_file, max_height, from_reference or None))
    if chosen != 1:
        raise click.UsageError("choose exactly one of --roots-file, --max-height, --from-reference")
    if roots_file:
        roots = _read_roots(roots_file)
    elif from_reference:
        roots = list(dict.fromkeys(r.row.root for r in reference_rows(shape, full=full)))
    else:
        if not minimal_only:
            raise click.UsageError("--max-height requires --minimal-only")
        if max_height < 1:
            raise click.BadParameter("must be positive", param_hint="--max-height")
        roots = minimal_roots(shape, max_height)
    for r in roots:
        if min(r) < 0 or r.a < 1:
            raise click.BadParameter(f"root {tuple(r)} needs a >= 1 and b, c >= 0", param_hint="--roots-file")
        if gcd3(r) != 1:
            _warn(f"gcd{tuple(r)} = {gcd3(r)}: bound is not on m_beta alone")

    mt = MultTable(shape)
    _load_cache(mt, cache)
    # fill the table single-threaded before any rows are computed
    for r in roots:
        mt.multiplicity(r)
    try:
        rows = sort_rows(compute_row(r, shape, mt, touch_rule, workers) for r in roots)
    except ConsistencyError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_MISMATCH)
    if cache:
        mt.save_csv(cache)

    if fmt == "csv":
        text = rows_to_csv(rows)
    elif fmt == "json":
        text = rows_to_json(rows, shape) + "\n"
    else:
        text = rows_to_pretty(rows)
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)

    if compare_reference:
        bad = diff_reference(rows, full=full)
        for m in bad:
            click.echo(f"mismatch {m.key}: reference {m.expected}, computed {m.got}", err=True)
        if bad:
            sys.exit(EXIT_MISMATCH)
        click.echo("reference: all compared rows match", err=True)


if __name__ == "__main__":
    main()

"""Block words ``1^a1 2^b1 3^c1 1^a2 ...`` and the conditions that bound m_beta.

A word is drawn as a lattice path: each 1 is a unit vertical step, each 2
a horizontal step of length s and each 3 a horizontal step of length t.
The basic conditions C1-C6 come from the socle-filtration argument, the
refined conditions R1/R2 from sub-quotients spanning several blocks.

All comparisons are integer cross-multiplications; the single irrational
threshold goes through :func:`rootmult.exact_arith.leq_upper_surd`.
"""
from __future__ import annotations

import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Literal, NamedTuple, Optional, Sequence

from .exact_arith import SurdWindow, leq_upper_surd
from .root_lattice import LatticeVector, Shape, vec

CONDITIONS = ("C1", "C2-dyck", "C3-touch", "C4-ratio", "C5-local", "C6-surd", "R1-refined-ratio", "R2-refined-tie")

TouchRule = Literal["weak", "strict"]


class Block(NamedTuple):
    a: int
    b: int
    c: int


@dataclass(frozen=True)
class BlockWord:
    blocks: tuple[Block, ...]
    target: LatticeVector
    shape: Shape

    def __post_init__(self):
        sums = tuple(sum(col) for col in zip(*self.blocks)) if self.blocks else (0, 0, 0)
        if sums != tuple(self.target):
            raise ValueError(f"letter counts {sums} do not match target {tuple(self.target)}")

    @property
    def letters(self) -> str:
        return blocks_to_letters(self.blocks)

    def __str__(self):
        return self.letters


@dataclass(frozen=True)
class CheckReport:
    verdict: bool
    failed: Optional[str] = None
    position: object = None
    point: Optional[tuple[int, int]] = None
    detail: Optional[dict] = None

    def __bool__(self):
        return self.verdict


PASS = CheckReport(True)


@dataclass(frozen=True)
class EnumOptions:
    refined: bool = True
    touch_rule: TouchRule = "weak"
    emit: Literal["count", "list"] = "count"

    def __post_init__(self):
        if self.touch_rule not in ("weak", "strict"):
            raise ValueError(f"touch_rule must be 'weak' or 'strict', got {self.touch_rule!r}")
        if self.emit not in ("count", "list"):
            raise ValueError(f"emit must be 'count' or 'list', got {self.emit!r}")


@dataclass
class EnumResult:
    count: int
    words: Optional[list[str]] = field(default=None)


class RefinedQuantities(NamedTuple):
    n_A: int
    n_B: int
    n_C: int
    a_tilde: int
    b_tilde: int
    c_tilde: int


# -- word syntax ------------------------------------------------------------

_BLOCK_RE = re.compile(r"(1+)(2*)(3*)")
_WORD_RE = re.compile(r"(?:1+2*3*)+")


def blocks_to_letters(blocks: Sequence[Sequence[int]]) -> str:
    return "".join("1" * a + "2" * b + "3" * c for a, b, c in blocks)


def split_blocks(text: str) -> tuple[Block, ...]:
    if not text or _WORD_RE.fullmatch(text) is None:
        if text and text[0] != "1":
            raise ValueError(f"word must start with 1: {text!r}")
        raise ValueError(f"word {text!r} is not of the form (1+2*3*)+")
    return tuple(Block(len(m[1]), len(m[2]), len(m[3])) for m in _BLOCK_RE.finditer(text))


def parse_word(text: str, target: Sequence[int], sh: Shape) -> BlockWord:
    """Split a string over {1,2,3} into maximal blocks and tie it to a target."""
    return BlockWord(split_blocks(text), vec(target), sh)


def word_from_letters(text: str, sh: Shape) -> BlockWord:
    """Like :func:`parse_word`, with the target read off the letter counts."""
    blocks = split_blocks(text)
    target = LatticeVector(*(sum(col) for col in zip(*blocks)))
    return BlockWord(blocks, target, sh)


# -- shared condition kernels -------------------------------------------------
# The search and the standalone checkers call the same kernels, so a pass in
# one is a pass in the other by construction.

def _touch_ok(bp: int, cp: int, b: int, c: int, rule: TouchRule) -> bool:
    """Tie-break at a touch point: prefix ratio b_p/c_p against b/c."""
    if cp == 0:
        return True
    lhs, rhs = bp * c, b * cp
    return lhs >= rhs if rule == "weak" else lhs > rhs


def _pair_caps(prev: Sequence[int], nxt: Sequence[int], s: int, t: int) -> tuple[int, int]:
    return min(prev[1], s * nxt[0] - nxt[1]), min(prev[2], t * nxt[0] - nxt[2])


def _c5_ok(a_next: int, nB: int, nC: int, s: int, t: int) -> bool:
    # a + max(nB/s, nC/t) <= s nB + t nC, scaled by s*t
    return s * t * a_next + max(t * nB, s * nC) <= s * t * (s * nB + t * nC)


def _c6_ok(a_next: int, nB: int, nC: int, s: int, t: int, window: SurdWindow) -> bool:
    den = s * nB + t * nC
    return den > 0 and leq_upper_surd(a_next, den, window)


def _pair_failure(prev, nxt, s, t, window) -> Optional[str]:
    nB, nC = _pair_caps(prev, nxt, s, t)
    if not _c5_ok(nxt[0], nB, nC, s, t) or s * nB + t * nC == 0:
        return "C5-local"
    if not _c6_ok(nxt[0], nB, nC, s, t, window):
        return "C6-surd"
    return None


def refined_quantities(blocks: Sequence[Sequence[int]], i: int, j: int, sh: Shape) -> RefinedQuantities:
    """The quantities n_A, n_B, n_C and the tilde dimensions for 1 <= i <= j < k."""
    k = len(blocks)
    if not 1 <= i <= j < k:
        raise ValueError(f"need 1 <= i <= j < {k}, got i={i}, j={j}")
    pa, pb, pc = _prefix_sums(blocks)
    return _refined_from_prefix(pa, pb, pc, i, j, sh.s, sh.t)


def _prefix_sums(blocks):
    pa, pb, pc = [0], [0], [0]
    for a, b, c in blocks:
        pa.append(pa[-1] + a)
        pb.append(pb[-1] + b)
        pc.append(pc[-1] + c)
    return pa, pb, pc


def _refined_from_prefix(pa, pb, pc, i, j, s, t) -> RefinedQuantities:
    n_A = pa[j + 1] - pa[i]
    n_B = min(pb[j] - pb[i - 1], s * n_A - (pb[j + 1] - pb[i]))
    n_C = min(pc[j] - pc[i - 1], t * n_A - (pc[j + 1] - pc[i]))
    a_t = pa[i - 1] + s * n_B + t * n_C - n_A
    return RefinedQuantities(n_A, n_B, n_C, a_t, pb[i - 1] + n_B, pc[i - 1] + n_C)


def _refined_failure(q: RefinedQuantities, A: int, B: int, C: int, W: int, s: int, t: int) -> Optional[str]:
    lhs = q.a_tilde * W
    rhs = A * (s * q.b_tilde + t * q.c_tilde)
    if lhs < rhs:
        return "R1-refined-ratio"
    if lhs == rhs and q.c_tilde > 0 and q.b_tilde * C < B * q.c_tilde:
        return "R2-refined-tie"
    return None


# -- standalone checks --------------------------------------------------------

def check_basic(w: BlockWord, touch_rule: TouchRule = "weak") -> CheckReport:
    """Conditions C1-C6, each over the whole word before the next is tried."""
    s, t = w.shape.s, w.shape.t
    A, B, C = w.target
    W = s * B + t * C
    blocks = w.blocks
    k = len(blocks)

    for n, (a, b, c) in enumerate(blocks, 1):
        if a < 1 or b + c < 1:
            return CheckReport(False, "C1", n)

    h = x = bp = cp = 0
    touches = []
    for n, (a, b, c) in enumerate(blocks[:-1], 1):
        h += a
        bp += b
        cp += c
        x += s * b + t * c
        slack = h * W - A * x
        if slack < 0:
            return CheckReport(False, "C2-dyck", n, point=(x, h))
        if slack == 0:
            touches.append((n, x, h, bp, cp))
    for n, x, h, bp, cp in touches:
        if not _touch_ok(bp, cp, B, C, touch_rule):
            return CheckReport(False, "C3-touch", n, point=(x, h))

    for n, (a, b, c) in enumerate(blocks, 1):
        if b > s * a or c > t * a:
            return CheckReport(False, "C4-ratio", n)

    window = w.shape.window
    failures = [(_pair_failure(blocks[n - 1], blocks[n], s, t, window), n) for n in range(1, k)]
    for cond in ("C5-local", "C6-surd"):
        for f, n in failures:
            if f == cond:
                return CheckReport(False, cond, n)
    return PASS


def check_refined(w: BlockWord) -> CheckReport:
    """Refined conditions R1/R2 over every pair 1 <= i <= j < k."""
    s, t = w.shape.s, w.shape.t
    A, B, C = w.target
    W = s * B + t * C
    pa, pb, pc = _prefix_sums(w.blocks)
    k = len(w.blocks)
    for i in range(1, k):
        for j in range(i, k):
            q = _refined_from_prefix(pa, pb, pc, i, j, s, t)
            f = _refined_failure(q, A, B, C, W, s, t)
            if f:
                return CheckReport(False, f, (i, j), detail=q._asdict())
    return PASS


def refined_failures(w: BlockWord) -> list[tuple[tuple[int, int], str]]:
    """Every ``(i, j)`` pair that violates R1 or R2, not just the first."""
    s, t = w.shape.s, w.shape.t
    A, B, C = w.target
    W = s * B + t * C
    pa, pb, pc = _prefix_sums(w.blocks)
    k = len(w.blocks)
    out = []
    for i in range(1, k):
        for j in range(i, k):
            f = _refined_failure(_refined_from_prefix(pa, pb, pc, i, j, s, t), A, B, C, W, s, t)
            if f:
                out.append(((i, j), f))
    return out


def check_word(w: BlockWord, opts: EnumOptions = EnumOptions()) -> CheckReport:
    rep = check_basic(w, opts.touch_rule)
    if rep and opts.refined:
        rep = check_refined(w)
    return rep


def pointwise_dyck_ok(w: BlockWord) -> bool:
    """Dyck condition evaluated after every single letter (slow reference)."""
    s, t = w.shape.s, w.shape.t
    A, B, C = w.target
    W = s * B + t * C
    h = x = 0
    for ch in w.letters:
        if ch == "1":
            h += 1
        else:
            x += s if ch == "2" else t
        if h * W - A * x < 0:
            return False
    return True


# -- branch-and-prune search --------------------------------------------------

class _Search:
    def __init__(self, target: LatticeVector, sh: Shape, opts: EnumOptions):
        self.s, self.t = sh.s, sh.t
        self.A, self.B, self.C = target
        self.W = self.s * self.B + self.t * self.C
        self.window = sh.window
        self.refined = opts.refined
        self.rule = opts.touch_rule
        self.collect = opts.emit == "list"
        self.count = 0
        self.words: list[str] = []
        self.blocks: list[tuple[int, int, int]] = []
        self.pa, self.pb, self.pc = [0], [0], [0]

    def first_blocks(self) -> Iterator[tuple[int, int, int]]:
        return self._candidates()

    def run(self, first: Optional[Sequence[tuple[int, int, int]]] = None) -> None:
        for blk in (first if first is not None else self._candidates()):
            self._descend(blk)

    def _candidates(self) -> Iterator[tuple[int, int, int]]:
        """Next blocks that survive C1, C2, C3, C4 and the budget checks."""
        s, t, A, W = self.s, self.t, self.A, self.W
        h, pb, pc = self.pa[-1], self.pb[-1], self.pc[-1]
        remA, remB, remC = A - h, self.B - pb, self.C - pc
        x0 = s * pb + t * pc
        # last block: must take everything
        if remB + remC >= 1 and remB <= s * remA and remC <= t * remA:
            yield (remA, remB, remC)
        for a in range(1, remA):
            ra = remA - a
            hW = (h + a) * W
            for b in range(min(remB, s * a) + 1):
                rb = remB - b
                if rb > s * ra:
                    continue
                if hW - A * (x0 + s * b) < 0:
                    break
                for c in range(min(remC, t * a) + 1):
                    if b + c == 0:
                        continue
                    rc = remC - c
                    if rc > t * ra or rb + rc == 0:
                        continue
                    slack = hW - A * (x0 + s * b + t * c)
                    if slack < 0:
                        break
                    if slack == 0 and not _touch_ok(pb + b, pc + c, self.B, self.C, self.rule):
                        continue
                    yield (a, b, c)

    def _descend(self, blk: tuple[int, int, int]) -> None:
        s, t = self.s, self.t
        if self.blocks and _pair_failure(self.blocks[-1], blk, s, t, self.window):
            return
        self.blocks.append(blk)
        self.pa.append(self.pa[-1] + blk[0])
        self.pb.append(self.pb[-1] + blk[1])
        self.pc.append(self.pc[-1] + blk[2])
        try:
            if self.refined and len(self.blocks) >= 2:
                j = len(self.blocks) - 1
                for i in range(1, j + 1):
                    q = _refined_from_prefix(self.pa, self.pb, self.pc, i, j, s, t)
                    if _refined_failure(q, self.A, self.B, self.C, self.W, s, t):
                        return
            if self.pa[-1] == self.A:
                self.count += 1
                if self.collect:
                    self.words.append(blocks_to_letters(self.blocks))
                return
            for nxt in self._candidates():
                self._descend(nxt)
        finally:
            self.blocks.pop()
            self.pa.pop()
            self.pb.pop()
            self.pc.pop()


def _validate_target(target: Sequence[int]) -> LatticeVector:
    target = vec(target)
    if min(target) < 0:
        raise ValueError(f"target coefficients must be nonnegative, got {tuple(target)}")
    if target == (0, 0, 0):
        raise ValueError("target must be nonzero")
    if target.a < 1:
        raise ValueError(f"target needs a >= 1 (got {tuple(target)})")
    return target


def _run_chunk(args) -> tuple[int, list[str]]:
    target, sh, opts, firsts = args
    srch = _Search(target, sh, opts)
    srch.run(firsts)
    return srch.count, srch.words


def enumerate_words(
    target: Sequence[int],
    sh: Shape,
    opts: EnumOptions = EnumOptions(),
    workers: int = 1,
) -> EnumResult:
    """Count (and optionally list) words passing the basic and refined conditions.

    With ``workers > 1`` the first-block choices are split across processes;
    the merged result is identical to the serial one.
    """
    target = _validate_target(target)
    srch = _Search(target, sh, opts)
    if workers <= 1:
        srch.run()
        count, words = srch.count, srch.words
    else:
        firsts = list(srch.first_blocks())
        chunks = [(target, sh, opts, firsts[k::workers]) for k in range(workers)]
        count, words = 0, []
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for n, ws in ex.map(_run_chunk, chunks):
                count += n
                words.extend(ws)
    if opts.emit == "list":
        return EnumResult(count, sorted(words))
    return EnumResult(count)


def _all_words(A: int, B: int, C: int) -> Iterator[tuple[Block, ...]]:
    """Every word matching (1+2*3*)+ with the given letter counts."""
    def rec(ra, rb, rc, acc):
        if ra == 0:
            return
        for a in range(1, ra + 1):
            for b in range(rb + 1):
                for c in range(rc + 1):
                    blk = Block(a, b, c)
                    if a == ra:
                        if b == rb and c == rc:
                            yield acc + (blk,)
                        continue
                    if b + c == 0:
                        continue  # would merge with the next run of 1s
                    yield from rec(ra - a, rb - b, rc - c, acc + (blk,))

    yield from rec(A, B, C, ())


def brute_enumerate(
    target: Sequence[int],
    sh: Shape,
    opts: EnumOptions = EnumOptions(),
    max_height: int = 14,
) -> EnumResult:
    """Unpruned reference: generate every well-formed word, then filter."""
    target = _validate_target(target)
    if target.height > max_height:
        raise ValueError(f"height {target.height} exceeds brute-force cap {max_height}")
    words = [
        blocks_to_letters(blocks)
        for blocks in _all_words(*target)
        if check_word(BlockWord(blocks, target, sh), opts)
    ]
    if opts.emit == "list":
        return EnumResult(len(words), sorted(words))
    return EnumResult(len(words))

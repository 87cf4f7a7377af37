"""
Sorting words and sorting paths of the pop stack with bypass.

A run of :func:`popsort.machines.psb` is recorded entry by entry as a word
over ``0`` (push), ``1`` (bypass) and ``2`` (pop then push), or as a lattice
path over ``U``/``H``/``D`` that descends to the axis at every pop. Words
and paths are plain strings.
"""

from __future__ import annotations

import re
from typing import Iterator, Sequence

from .machines import psb
from .perms import ParseError, Perm

__all__ = [
    "W_PATTERN", "perm_to_word", "word_in_W", "word_to_perm", "perm_to_path",
    "word_to_path", "path_to_word", "is_motzkin", "path_in_M", "words_W",
    "paths_M", "count_W", "count_M", "count_rows",
]

W_PATTERN = re.compile(r"0(?:0|2|1+0)*")

_LETTER = {("PUSH",): "0", ("BYPASS",): "1", ("POP", "PUSH"): "2"}


def perm_to_word(p: Sequence[int]) -> str:
    """Letter i is the operation PSB performs when p[i] is the current entry."""
    ops: list[list[str]] = [[] for _ in p]
    for step in psb(p, trace=True).trace.steps:
        if step.i is not None:
            ops[step.i - 1].append(step.op)
    return "".join(_LETTER[tuple(o)] for o in ops)


def word_in_W(w: str) -> bool:
    """Starts with 0, ends with 0 or 2, and has no factor 12. The empty word counts."""
    if not w:
        return True
    if set(w) - set("012"):
        return False
    return w[0] == "0" and w[-1] in "02" and "12" not in w


def _factors(w: str) -> list[str]:
    cuts = [0] + [i for i, c in enumerate(w) if c == "2" and i > 0] + [len(w)]
    return [w[a:b] for a, b in zip(cuts, cuts[1:])]


def word_to_perm(w: str) -> Perm:
    """The unique PSB-sortable permutation whose sorting word is w.

    Each factor starting at a 0 or 2 is numbered in two passes: its 1s left
    to right, then its other letters right to left.
    """
    if not word_in_W(w):
        raise ParseError(f"{w!r} is not a sorting word")
    out: list[int] = []
    nxt = 1
    for f in _factors(w):
        vals = [0] * len(f)
        for i, c in enumerate(f):
            if c == "1":
                vals[i] = nxt
                nxt += 1
        for i in range(len(f) - 1, -1, -1):
            if f[i] != "1":
                vals[i] = nxt
                nxt += 1
        out.extend(vals)
    return tuple(out)


def word_to_path(w: str) -> str:
    if set(w) - set("012"):
        raise ParseError(f"invalid sorting word {w!r}")
    steps = []
    height = 0
    for c in w:
        if c == "0":
            steps.append("U")
            height += 1
        elif c == "1":
            steps.append("H")
        else:
            steps.append("D" * height + "U")
            height = 1
    steps.append("D" * height)
    return "".join(steps)


def perm_to_path(p: Sequence[int]) -> str:
    steps = []
    height = 0
    for step in psb(p, trace=True).trace.steps:
        if step.op == "PUSH":
            steps.append("U")
            height += 1
        elif step.op == "BYPASS":
            steps.append("H")
        else:
            steps.append("D" * height)
            height = 0
    return "".join(steps)


def is_motzkin(m: str) -> bool:
    height = 0
    for c in m:
        if c == "U":
            height += 1
        elif c == "D":
            height -= 1
            if height < 0:
                return False
        elif c != "H":
            return False
    return height == 0


def path_to_word(m: str) -> str:
    """Invert :func:`word_to_path`; every descent must reach the axis and be
    followed by an up step or the end of the path."""
    if not is_motzkin(m):
        raise ParseError(f"{m!r} is not a Motzkin path")
    if "HD" in m or "DH" in m:
        raise ParseError(f"{m!r} has a level step next to a descent")
    if m and m[0] != "U":
        raise ParseError(f"{m!r} does not start with an up step")
    letters = []
    height = 0
    i = 0
    while i < len(m):
        c = m[i]
        if c == "U":
            letters.append("0")
            height += 1
            i += 1
        elif c == "H":
            letters.append("1")
            i += 1
        else:
            j = i
            while j < len(m) and m[j] == "D":
                j += 1
            if j - i != height:
                raise ParseError(f"descent at step {i} of {m!r} stops above the axis")
            height = 0
            if j == len(m):
                break
            if m[j] != "U":
                raise ParseError(f"descent at step {i} of {m!r} is not followed by an up step")
            letters.append("2")
            height = 1
            i = j + 1
    if height:
        raise ParseError(f"{m!r} does not end with a descent to the axis")
    return "".join(letters)


def path_in_M(m: str) -> bool:
    """Starts with U, ends with D, no H next to a D, every descent runs to the axis."""
    if not m:
        return True
    if not is_motzkin(m) or m[0] != "U" or m[-1] != "D":
        return False
    if "HD" in m or "DH" in m:
        return False
    height = 0
    for i, c in enumerate(m):
        height += {"U": 1, "D": -1, "H": 0}[c]
        if c == "D" and height > 0 and m[i + 1] != "D":
            return False
    return True


# -- enumeration -------------------------------------------------------------------

def words_W(n: int) -> Iterator[str]:
    """All words of W of length n, built letter by letter (lexicographic)."""
    if n == 0:
        yield ""
        return

    def grow(prefix: str) -> Iterator[str]:
        if len(prefix) == n:
            if prefix[-1] != "1":
                yield prefix
            return
        for c in "012":
            if c == "2" and prefix[-1] == "1":
                continue
            yield from grow(prefix + c)

    yield from grow("0")


def paths_M(n: int) -> Iterator[str]:
    """All paths of M with n up-or-horizontal steps, generated step by step."""
    if n == 0:
        yield ""
        return

    def grow(path: str, height: int, flat: int) -> Iterator[str]:
        last = path[-1] if path else ""
        if last == "D" and height > 0:
            yield from grow(path + "D", height - 1, flat)
            return
        if flat == n:
            if height > 0 and last != "H":
                yield path + "D" * height
            return
        yield from grow(path + "U", height + 1, flat + 1)
        if height > 0 and last != "D":
            yield from grow(path + "H", height, flat + 1)
        if height > 0 and last not in ("H", ""):
            yield from grow(path + "D", height - 1, flat)

    yield from grow("", 0, 0)


def count_W(n: int, method: str = "recurrence") -> int:
    """|W_n|, either by listing the words or by a transfer count on the last letter."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if method == "enumerate":
        return sum(1 for _ in words_W(n))
    if method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    if n == 0:
        return 1
    end0, end1, end2 = 1, 0, 0
    for _ in range(n - 1):
        end0, end1, end2 = end0 + end1 + end2, end0 + end1 + end2, end0 + end2
    return end0 + end2


def count_M(n: int, method: str = "recurrence") -> int:
    """|M_n| via |M_n| = 2|M_{n-1}| + sum_{i=1}^{n-2} |M_i|, or by listing paths."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if method == "enumerate":
        return sum(1 for _ in paths_M(n))
    if method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    counts = [1, 1]
    for k in range(2, n + 1):
        counts.append(2 * counts[k - 1] + sum(counts[1:k - 1]))
    return counts[n]


def count_rows(max_n: int) -> list[tuple[int, int, int, int]]:
    """(n, |W_n|, |M_n|, F_{2n-1}) for n = 0..max_n."""
    from .enumeration import fib
    return [(n, count_W(n), count_M(n), fib(2 * n - 1)) for n in range(max_n + 1)]

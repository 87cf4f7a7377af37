"""
Preimages under the psb map and the permutations with 0, 1 or 2 preimages.

Writing a preimage as ``L n R`` (n its maximum), PSB outputs ``psb(L)``
when n arrives, after which every entry of R either joins the decreasing
run ``n, n-1, ..., m`` sitting on the stack or bypasses it. Hence
``psb(L n R) = psb(L) B m(m+1)...n`` where B lists the bypassing entries.
:func:`preimages` inverts this one choice at a time and checks every
candidate with :func:`popsort.machines.psb_map`.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .machines import psb_map
from .perms import (Perm, all_permutations, check_guard, ltr_maxima, max_suffix_decomposition,
                    standardize)

__all__ = [
    "preimages", "brute_preimages", "preimage_table", "preimage_histogram",
    "in_C0", "in_C1", "in_C2", "in_C2_amended", "c0", "c1", "c2", "c2_amended", "count_rows",
]

BRUTE_LIMIT = 9


def _insert_run(bypass: tuple[int, ...], run: tuple[int, ...], forbid_after: int | None):
    """Interleavings of ``bypass`` with the decreasing ``run`` (keeping both
    orders) in which ``forbid_after`` does not follow the last run entry."""
    out = []

    def go(i: int, j: int, acc: list[int]):
        if i == len(bypass) and j == len(run):
            out.append(tuple(acc))
            return
        if i < len(bypass):
            b = bypass[i]
            if not (b == forbid_after and j == len(run)):
                acc.append(b)
                go(i + 1, j, acc)
                acc.pop()
        if j < len(run):
            acc.append(run[j])
            go(i, j + 1, acc)
            acc.pop()

    go(0, 0, [])
    return out


@lru_cache(maxsize=None)
def _preimages(s: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    if not s:
        return frozenset({()})
    top = max(s)
    if s[-1] != top:
        return frozenset()
    found = set()
    tail = max_suffix_decomposition(s).final_run
    for cut in range(len(tail)):
        # the entries m..n that end on the stack; n is placed first
        stacked = tail[cut:]
        m = stacked[0]
        head = s[:len(s) - len(stacked)]
        below = tuple(reversed(stacked[:-1]))
        for split in range(len(head) + 1):
            left, bypass = head[:split], head[split:]
            if left and left[-1] != max(left):
                continue
            # m-1 right after m would be pushed too
            rights = _insert_run(bypass, below, m - 1 if m - 1 in bypass else None)
            for lpre in _preimages(left):
                for r in rights:
                    found.add(lpre + (top,) + r)
    return frozenset(found)


def preimages(s: Sequence[int]) -> set[tuple[int, ...]]:
    """All sequences pi with psb(pi) = s; values are kept as given.

    >>> sorted(preimages((1, 3, 2, 4)))
    [(1, 3, 4, 2), (3, 1, 4, 2)]
    """
    s = tuple(s)
    out = {p for p in _preimages(s) if psb_map(p) == s}
    return out


def brute_preimages(s: Sequence[int], force: bool = False) -> set[Perm]:
    """{pi in S_n : psb(pi) = s} by running psb on all of S_n."""
    s = tuple(s)
    check_guard(len(s), BRUTE_LIMIT, force, "brute-force preimage sweep")
    if not s or s[-1] != len(s):
        return set() if s else {()}
    return {p for p in all_permutations(len(s)) if psb_map(p) == s}


def preimage_table(n: int, force: bool = False) -> dict[Perm, list[Perm]]:
    """Every image of S_n mapped to its preimages, from a single sweep."""
    check_guard(n, BRUTE_LIMIT, force, "brute-force preimage sweep")
    table: dict[Perm, list[Perm]] = {}
    for p in all_permutations(n):
        table.setdefault(psb_map(p), []).append(p)
    return table


def preimage_histogram(n: int, method: str = "brute", force: bool = False) -> Counter:
    """How many permutations of size n have exactly k preimages, for each k."""
    if method == "brute":
        table = preimage_table(n, force)
        hist = Counter(len(v) for v in table.values())
        hist[0] += factorial(n) - len(table)
        return hist
    if method == "algorithm":
        return Counter(len(preimages(p)) for p in all_permutations(n))
    raise ValueError(f"unknown method {method!r}")


# -- characterizations ------------------------------------------------------------

def in_C0(p: Sequence[int]) -> bool:
    """No preimage: p does not end with its maximum."""
    return bool(p) and p[-1] != max(p)


def _spread(positions: Sequence[int]) -> bool:
    return all(b - a > 1 for a, b in zip(positions, positions[1:]))


def in_C1(p: Sequence[int]) -> bool:
    """Ends with n, its left-to-right maxima are n-k..n and no two are adjacent."""
    n = len(p)
    if n == 0 or p[-1] != n:
        return False
    ltr = ltr_maxima(p)
    values = [v for _, v in ltr]
    return values == list(range(n - len(values) + 1, n + 1)) and _spread([i for i, _ in ltr])


def in_C2(p: Sequence[int]) -> bool:
    """Ends with n; apart from p_1 the left-to-right maxima are n-k..n, spread
    out, and p_1 is not n-k-1 (p_1 may sit next to the second maximum)."""
    n = len(p)
    if n == 0 or p[-1] != n:
        return False
    ltr = ltr_maxima(p)
    if len(ltr) < 2:
        return False
    rest = [v for _, v in ltr[1:]]
    if rest != list(range(n - len(rest) + 1, n + 1)):
        return False
    return p[0] != rest[0] - 1 and _spread([i for i, _ in ltr[1:]])


def in_C2_amended(p: Sequence[int]) -> bool:
    """in_C2 plus the family it misses: p_2 = p_1 + 1 and p_2..p_n is in C1.

    Such a p has exactly the two preimages obtained from the unique
    preimage of p_2..p_n by inserting p_1 either before or after p_2.
    Agrees with brute force for every n <= 8.
    """
    p = tuple(p)
    if in_C2(p):
        return True
    return len(p) >= 2 and p[1] == p[0] + 1 and in_C1(standardize(p[1:]))


# -- counting formulas --------------------------------------------------------------

def _direct(n: int, k: int) -> int:
    return preimage_histogram(n)[k]


def c0(n: int) -> int:
    """Permutations of size n with no preimage: (n-1)(n-1)!."""
    if n < 1:
        return 0
    return (n - 1) * factorial(n - 1)


def c1(n: int) -> int:
    """Permutations of size n with exactly one preimage."""
    if n < 3:
        return _direct(n, 1)
    return sum(factorial(n - k) * comb(n - k - 1, k - 2) for k in range(2, (n + 1) // 2 + 1))


def c2(n: int) -> int:
    """Permutations of size n with exactly two preimages."""
    if n < 4:
        return _direct(n, 2)
    total = Fraction(0)
    for k in range(3, n + 1):
        for j in range(1, n - k + 1):
            total += Fraction(n - k - j + 1, j) * factorial(n - k) * comb(n - j - k, k - 3)
    if total.denominator != 1:
        raise ArithmeticError(f"two-preimage count at n={n} is not an integer: {total}")
    return int(total)


def c2_amended(n: int) -> int:
    """Exact two-preimage count: c2(n) + c1(n-1), one term per family of in_C2_amended."""
    if n < 4:
        return _direct(n, 2)
    return c2(n) + c1(n - 1)


def count_rows(max_n: int, force: bool = False) -> list[tuple[int, ...]]:
    """(n, c0, c1, c2, brute c0, brute c1, brute c2) for n = 1..max_n."""
    rows = []
    for n in range(1, max_n + 1):
        hist = preimage_histogram(n, force=force)
        rows.append((n, c0(n), c1(n), c2(n), hist[0], hist[1], hist[2]))
    return rows

"""
Permutations, classical and barred patterns, and the structural
decompositions used by the sorting machines.

Permutations are plain tuples of distinct positive integers in one-line
notation. Most functions also accept arbitrary sequences of distinct
integers, which are compared by relative order.

>>> contains((3, 5, 1, 4, 2), (2, 1, 3))
True
>>> direct_sum((3, 1, 4, 2), (4, 2, 3, 1, 5))
(3, 1, 4, 2, 8, 6, 7, 5, 9)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Perm", "ParseError", "GuardError", "check_guard", "BarredPattern", "PatternBasis", "Run",
    "RunDecomposition", "MaxSuffixDecomposition",
    "parse_permutation", "format_permutation", "is_permutation", "identity",
    "standardize", "occurrences", "contains", "contains_barred", "avoids",
    "ltr_maxima", "direct_sum", "reverse", "inverse", "shuffles",
    "is_simple", "run_decomposition", "max_suffix_decomposition",
    "all_permutations", "pattern_le",
]

Perm = tuple[int, ...]


class ParseError(ValueError):
    """Raised on malformed permutation, pattern, word or path text."""


class GuardError(RuntimeError):
    """Raised when an exhaustive computation exceeds its size guard."""


def check_guard(n: int, limit: int, force: bool = False, what: str = "sweep") -> None:
    if n > limit and not force:
        raise GuardError(f"{what} at size {n} exceeds the guard of {limit}; force to override")


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_permutation(seq: Sequence[int]) -> bool:
    return sorted(seq) == list(range(1, len(seq) + 1))


def all_permutations(n: int) -> Iterator[Perm]:
    """S_n in lexicographic order."""
    return permutations(range(1, n + 1))


def standardize(seq: Sequence[int]) -> Perm:
    """Rescale a sequence of distinct integers to a permutation of 1..n."""
    rank = {v: i + 1 for i, v in enumerate(sorted(seq))}
    return tuple(rank[v] for v in seq)


_SPLIT = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Perm:
    """Read ``"3 6 5 1 4 2"``, ``"3,6,5,1,4,2"`` or the compact ``"365142"``."""
    text = text.strip()
    if not text:
        return ()
    if _SPLIT.search(text):
        tokens = _SPLIT.split(text)
    elif text.isdigit():
        tokens = list(text)
    else:
        tokens = [text]
    values = []
    for tok in tokens:
        if not tok.isdigit() or int(tok) == 0:
            raise ParseError(f"invalid entry {tok!r} in {text!r}")
        values.append(int(tok))
    seen = set()
    for tok, v in zip(tokens, values):
        if v in seen:
            raise ParseError(f"duplicate value {tok!r} in {text!r}")
        seen.add(v)
    n = len(values)
    for tok, v in zip(tokens, values):
        if v > n:
            raise ParseError(f"value {tok!r} exceeds size {n} (gap in 1..{n})")
    return tuple(values)


def format_permutation(p: Sequence[int], compact: bool = False) -> str:
    if compact and all(v < 10 for v in p):
        return "".join(map(str, p))
    return " ".join(map(str, p))


# -- pattern containment -------------------------------------------------------

_NEG, _POS = float("-inf"), float("inf")


@lru_cache(maxsize=None)
def _compile(pattern: Perm) -> tuple[tuple[int, int], ...]:
    # For each pattern index, the earlier indices holding the closest smaller
    # and closest larger value (-1 when absent).
    bounds = []
    for j, v in enumerate(pattern):
        lo = hi = -1
        for i in range(j):
            w = pattern[i]
            if w < v and (lo < 0 or w > pattern[lo]):
                lo = i
            if w > v and (hi < 0 or w < pattern[hi]):
                hi = i
        bounds.append((lo, hi))
    return tuple(bounds)


def occurrences(p: Sequence[int], q: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Yield the position tuples (0-based, increasing) of every occurrence of q in p."""
    q = standardize(q)
    k, n = len(q), len(p)
    if k == 0:
        yield ()
        return
    if k > n:
        return
    bounds = _compile(q)
    chosen = [0] * k
    vals = [0] * k

    def extend(j: int, start: int) -> Iterator[tuple[int, ...]]:
        lo, hi = bounds[j]
        lo_v = vals[lo] if lo >= 0 else _NEG
        hi_v = vals[hi] if hi >= 0 else _POS
        for pos in range(start, n - (k - j) + 1):
            v = p[pos]
            if v < lo_v or v > hi_v:
                continue
            chosen[j] = pos
            vals[j] = v
            if j + 1 == k:
                yield tuple(chosen)
            else:
                yield from extend(j + 1, pos + 1)

    yield from extend(0, 0)


def contains(p: Sequence[int], q: Sequence[int]) -> bool:
    """True iff some subsequence of p is order-isomorphic to q."""
    q = standardize(q)
    k, n = len(q), len(p)
    if k == 0:
        return True
    if k > n:
        return False
    bounds = _compile(q)
    vals = [0] * k

    def search(j: int, start: int) -> bool:
        lo, hi = bounds[j]
        lo_v = vals[lo] if lo >= 0 else _NEG
        hi_v = vals[hi] if hi >= 0 else _POS
        for pos in range(start, n - (k - j) + 1):
            v = p[pos]
            if v < lo_v or v > hi_v:
                continue
            vals[j] = v
            if j + 1 == k or search(j + 1, pos + 1):
                return True
        return False

    return search(0, 0)


def pattern_le(q: Sequence[int], p: Sequence[int]) -> bool:
    """The pattern order: q <= p."""
    return contains(p, q)


@dataclass(frozen=True)
class BarredPattern:
    """A pattern with some entries barred (0-based positions in ``barred``).

    p avoids the barred pattern when every occurrence of the unbarred
    entries extends to an occurrence of the whole pattern.
    """
    entries: Perm
    barred: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if not is_permutation(self.entries):
            raise ValueError(f"not a permutation: {self.entries}")
        if any(not 0 <= b < len(self.entries) for b in self.barred):
            raise ValueError(f"barred positions out of range: {sorted(self.barred)}")
        if len(self.barred) >= len(self.entries):
            raise ValueError("a barred pattern needs at least one unbarred entry")

    @property
    def unbarred_positions(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.entries)) if i not in self.barred)

    @property
    def unbarred(self) -> Perm:
        return standardize([self.entries[i] for i in self.unbarred_positions])

    def __str__(self) -> str:
        sep = "" if len(self.entries) < 10 else " "
        return sep.join(f"{v}!" if i in self.barred else str(v)
                        for i, v in enumerate(self.entries))

    @classmethod
    def parse(cls, text: str) -> "BarredPattern":
        """Parse ``"35!241"``: a ``!`` after an entry bars it."""
        text = text.strip()
        if " " in text or "," in text:
            tokens = _SPLIT.split(text)
        else:
            tokens = re.findall(r"\d!?", text)
            if "".join(tokens) != text:
                raise ParseError(f"invalid barred pattern {text!r}")
        barred = frozenset(i for i, tok in enumerate(tokens) if tok.endswith("!"))
        entries = parse_permutation(" ".join(tok.rstrip("!") for tok in tokens))
        return cls(entries, barred)


def contains_barred(p: Sequence[int], q: BarredPattern) -> bool:
    """True iff some occurrence of q's unbarred entries in p does not extend to q."""
    if not q.barred:
        return contains(p, q.entries)
    keep = q.unbarred_positions
    extendable = {tuple(occ[i] for i in keep) for occ in occurrences(p, q.entries)}
    return any(occ not in extendable for occ in occurrences(p, q.unbarred))


@dataclass(frozen=True)
class PatternBasis:
    classical: frozenset[Perm] = frozenset()
    barred: frozenset[BarredPattern] = frozenset()

    @classmethod
    def of(cls, *patterns: Sequence[int] | str | BarredPattern) -> "PatternBasis":
        """Build a basis from tuples, compact strings (``"35!241"``) or BarredPatterns."""
        classical, barred = set(), set()
        for pat in patterns:
            if isinstance(pat, str):
                pat = BarredPattern.parse(pat)
            if isinstance(pat, BarredPattern):
                if pat.barred:
                    barred.add(pat)
                else:
                    classical.add(pat.entries)
            else:
                pat = tuple(pat)
                if not is_permutation(pat):
                    raise ValueError(f"not a permutation: {pat}")
                classical.add(pat)
        return cls(frozenset(classical), frozenset(barred))

    def __len__(self) -> int:
        return len(self.classical) + len(self.barred)

    def sorted_patterns(self) -> list[Perm | BarredPattern]:
        """Classical patterns by (length, lex), then barred ones likewise."""
        out: list[Perm | BarredPattern] = sorted(self.classical, key=lambda t: (len(t), t))
        out += sorted(self.barred, key=lambda b: (len(b.entries), b.entries, sorted(b.barred)))
        return out

    def lines(self) -> list[str]:
        """One pattern per line; barred entries carry a trailing ``!``."""
        return [str(pat) if isinstance(pat, BarredPattern) else format_permutation(pat, compact=len(pat) < 10)
                for pat in self.sorted_patterns()]

    def is_antichain(self) -> bool:
        pats = list(self.classical)
        return not any(a != b and contains(b, a) for a in pats for b in pats)

    def redundant(self) -> set[Perm]:
        """Classical patterns that contain another pattern of the basis."""
        return {b for b in self.classical
                if any(a != b and contains(b, a) for a in self.classical)}


def avoids(p: Sequence[int], basis: PatternBasis | Iterable[Sequence[int]]) -> bool:
    if not isinstance(basis, PatternBasis):
        basis = PatternBasis.of(*basis)
    return (not any(contains(p, q) for q in basis.classical)
            and not any(contains_barred(p, q) for q in basis.barred))


# -- elementary operations ------------------------------------------------------

def ltr_maxima(p: Sequence[int]) -> list[tuple[int, int]]:
    """(position, value) of the left-to-right maxima, positions 1-based."""
    out = []
    best = None
    for i, v in enumerate(p, 1):
        if best is None or v > best:
            best = v
            out.append((i, v))
    return out


def direct_sum(a: Sequence[int], b: Sequence[int]) -> Perm:
    n = len(a)
    return tuple(a) + tuple(v + n for v in b)


def reverse(p: Sequence[int]) -> Perm:
    return tuple(reversed(p))


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p, 1):
        inv[v - 1] = i
    return tuple(inv)


def shuffles(a: Sequence[int], b: Sequence[int]) -> set[tuple[int, ...]]:
    """All interleavings of a and b keeping each one's internal order."""
    if set(a) & set(b):
        raise ValueError(f"shuffled sequences share values: {sorted(set(a) & set(b))}")
    n = len(a) + len(b)
    out = set()
    for slots in combinations(range(n), len(a)):
        ia, ib = iter(a), iter(b)
        chosen = set(slots)
        out.add(tuple(next(ia) if i in chosen else next(ib) for i in range(n)))
    return out


def is_simple(p: Sequence[int]) -> bool:
    """No contiguous block of 2..n-1 positions holds a contiguous range of values.

    Sizes 0, 1 and 2 count as simple.
    """
    n = len(p)
    for i in range(n - 1):
        lo = hi = p[i]
        for j in range(i + 1, n):
            v = p[j]
            if v < lo:
                lo = v
            elif v > hi:
                hi = v
            size = j - i + 1
            if size == n:
                break
            if hi - lo + 1 == size:
                return False
    return True


# -- decompositions ------------------------------------------------------------

@dataclass(frozen=True)
class Run:
    """One left-to-right maximum with the block A that follows it.

    ``length`` counts the maximum plus the consecutive values
    maximum-1, maximum-2, ... found in decreasing order inside the block;
    ``bypassers`` are the other entries of the block.
    """
    maximum: int
    length: int
    bypassers: tuple[int, ...]
    block: tuple[int, ...]

    @property
    def drop(self) -> int:
        return self.length - 1

    @property
    def stacked(self) -> tuple[int, ...]:
        return tuple(range(self.maximum, self.maximum - self.length, -1))


@dataclass(frozen=True)
class RunDecomposition:
    runs: tuple[Run, ...]

    def concat(self) -> tuple[int, ...]:
        return tuple(v for r in self.runs for v in (r.maximum, *r.block))

    def psb_image(self) -> tuple[int, ...]:
        """P_1 (m_1-j_1)..m_1 P_2 ... P_k (m_k-j_k)..m_k."""
        out: list[int] = []
        for r in self.runs:
            out.extend(r.bypassers)
            out.extend(reversed(r.stacked))
        return tuple(out)


def run_decomposition(p: Sequence[int]) -> RunDecomposition:
    maxima = [pos - 1 for pos, _ in ltr_maxima(p)]
    runs = []
    for idx, start in enumerate(maxima):
        end = maxima[idx + 1] if idx + 1 < len(maxima) else len(p)
        m = p[start]
        block = tuple(p[start + 1:end])
        want = m - 1
        bypass = []
        for v in block:
            if v == want:
                want -= 1
            else:
                bypass.append(v)
        runs.append(Run(m, m - want, tuple(bypass), block))
    return RunDecomposition(tuple(runs))


@dataclass(frozen=True)
class MaxSuffixDecomposition:
    """``mus[i]`` are the maximal factors of left-to-right maxima that are both
    adjacent and consecutive; ``blocks[i]`` is the (possibly empty) factor
    following ``mus[i]``. The last block is empty iff p ends with a
    left-to-right maximum.
    """
    mus: tuple[tuple[int, ...], ...]
    blocks: tuple[tuple[int, ...], ...]

    def concat(self) -> tuple[int, ...]:
        return tuple(v for mu, b in zip(self.mus, self.blocks) for v in (*mu, *b))

    @property
    def final_run(self) -> tuple[int, ...]:
        """The suffix of consecutive left-to-right maxima (empty if p does not end with one)."""
        if not self.mus or self.blocks[-1]:
            return ()
        return self.mus[-1]


def max_suffix_decomposition(p: Sequence[int]) -> MaxSuffixDecomposition:
    is_max = [False] * len(p)
    for pos, _ in ltr_maxima(p):
        is_max[pos - 1] = True
    mus: list[list[int]] = []
    blocks: list[list[int]] = []
    for i, v in enumerate(p):
        if is_max[i]:
            extend = (mus and not blocks[-1] and i > 0 and is_max[i - 1]
                      and p[i - 1] == v - 1)
            if extend:
                mus[-1].append(v)
            else:
                mus.append([v])
                blocks.append([])
        else:
            blocks[-1].append(v)
    return MaxSuffixDecomposition(tuple(map(tuple, mus)), tuple(map(tuple, blocks)))

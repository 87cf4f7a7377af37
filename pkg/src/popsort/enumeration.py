"""
Exact counting: Fibonacci targets, avoidance and sortability counts,
rational generating functions, and the sequence reports built from them.

Sweeps over S_n can be split across processes by first entry; set
``POPSORT_WORKERS`` (or pass ``workers``) to use more than one. Results
never depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from itertools import permutations
from typing import Callable, Iterator, Sequence

from .classes import composition_basis, composition_machines, composition_name, psbp_basis
from .machines import MachineConfig, dfs_sortable, image
from .perms import PatternBasis, Perm, avoids, check_guard, identity, inverse, is_simple

__all__ = [
    "fib", "RationalGF", "poly_mul", "gf_expand", "FIBONACCI_GF", "BUB_PSB_GF",
    "PSB_BUB_GF", "PSBP_GF", "SequenceReport", "worker_count", "sweep_count",
    "count_av", "count_sortable_by", "count_inverse_sortable", "class_members",
    "composition_counts", "PRINTED", "conjecture_value", "conjecture_simple_psbp",
    "reports_csv",
]

SWEEP_LIMIT = 10


def fib(n: int) -> int:
    """Fibonacci numbers with F_0 = 0, F_1 = 1 and F_{-1} = 1."""
    if n < -1:
        raise ValueError("fib is defined for n >= -1")
    if n == -1:
        return 1
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


# -- rational generating functions ---------------------------------------------------

def poly_mul(*polys: Sequence[int]) -> list[int]:
    out = [1]
    for p in polys:
        prod = [0] * (len(out) + len(p) - 1)
        for i, a in enumerate(out):
            for j, b in enumerate(p):
                prod[i + j] += a * b
        out = prod
    return out


@dataclass(frozen=True)
class RationalGF:
    """numerator / denominator with coefficients listed from x^0 up."""
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        if not self.denominator or self.denominator[0] == 0:
            raise ValueError("the denominator needs a nonzero constant term")

    def expand(self, count: int, method: str = "recurrence") -> list[int]:
        return gf_expand(self, count, method)


def _integer(c: Fraction, k: int, g: RationalGF) -> int:
    if c.denominator != 1:
        raise ArithmeticError(f"coefficient {k} of {g.label or g} is not an integer: {c}")
    return int(c)


def gf_expand(g: RationalGF, count: int, method: str = "recurrence") -> list[int]:
    """First ``count`` Taylor coefficients, exactly.

    ``recurrence`` solves d_0 a_k = n_k - sum_{i>=1} d_i a_{k-i};
    ``division`` runs polynomial long division on the running remainder.
    """
    num, den = g.numerator, g.denominator
    if method == "recurrence":
        out: list[int] = []
        for k in range(count):
            acc = Fraction(num[k] if k < len(num) else 0)
            for i in range(1, min(k, len(den) - 1) + 1):
                acc -= den[i] * out[k - i]
            out.append(_integer(acc / den[0], k, g))
        return out
    if method == "division":
        rem = [Fraction(c) for c in num] + [Fraction(0)] * (count + len(den))
        out = []
        for k in range(count):
            q = rem[k] / den[0]
            out.append(_integer(q, k, g))
            if q:
                for i, d in enumerate(den):
                    rem[k + i] -= q * d
        return out
    raise ValueError(f"unknown method {method!r}")


FIBONACCI_GF = RationalGF((0, 1, -1), (1, -3, 1), "x(1-x)/(1-3x+x^2)")
BUB_PSB_GF = RationalGF(
    tuple(poly_mul((-1, 3), (-1, 2, 1), (1, -1), (1, -1))),
    (1, -8, 22, -24, 6, 5),
    "(3x-1)(x^2+2x-1)(x-1)^2/(5x^5+6x^4-24x^3+22x^2-8x+1)")
PSB_BUB_GF = RationalGF((1, -3), (1, -4, 2), "(1-3x)/(1-4x+2x^2)")
PSBP_GF = RationalGF(tuple(poly_mul((1, -1), (1, -2), (1, -4))), (1, -8, 20, -18, 3),
                     "(1-x)(1-2x)(1-4x)/(1-8x+20x^2-18x^3+3x^4)")


# -- reports ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SequenceReport:
    """Computed terms against reference terms over their common prefix.
    ``start`` is the size of the first term."""
    label: str
    computed: tuple[int, ...]
    reference: tuple[int, ...]
    start: int = 1

    @property
    def first_divergence(self) -> int | None:
        for i, (a, b) in enumerate(zip(self.computed, self.reference)):
            if a != b:
                return i + self.start
        return None

    @property
    def agree(self) -> bool:
        return self.first_divergence is None

    def rows(self) -> list[tuple[str, int, int, int | str, bool | str]]:
        out = []
        for i, c in enumerate(self.computed):
            ref = self.reference[i] if i < len(self.reference) else ""
            out.append((self.label, i + self.start, c, ref, c == ref if ref != "" else ""))
        return out


def reports_csv(reports: Sequence[SequenceReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "n", "computed", "reference", "match"])
    for r in reports:
        w.writerows(r.rows())
    return buf.getvalue()


# -- sweeps ----------------------------------------------------------------------------

def worker_count(workers: int | None = None) -> int:
    if workers is None:
        workers = int(os.environ.get("POPSORT_WORKERS", "1"))
    if workers < 1:
        raise ValueError("worker count must be >= 1")
    return workers


def _with_first(n: int, first: int) -> Iterator[Perm]:
    rest = [v for v in range(1, n + 1) if v != first]
    for tail in permutations(rest):
        yield (first,) + tail


def _count_shard(pred: Callable[[Perm], bool], n: int, first: int) -> int:
    return sum(1 for p in _with_first(n, first) if pred(p))


def sweep_count(pred: Callable[[Perm], bool], n: int, workers: int | None = None) -> int:
    """Number of p in S_n with pred(p); pred must be picklable for workers > 1."""
    if n == 0:
        return int(bool(pred(())))
    workers = worker_count(workers)
    if workers == 1 or n < 7:
        return sum(_count_shard(pred, n, f) for f in range(1, n + 1))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(partial(_count_shard, pred, n), range(1, n + 1)))


def _avoids(basis: PatternBasis, p: Perm) -> bool:
    return avoids(p, basis)


def _sorted_by(config: MachineConfig, oracle: bool, p: Perm) -> bool:
    if oracle:
        return dfs_sortable(p, config)
    return image(config, p) == identity(len(p))


def _inverse_sorted_by(config: MachineConfig, oracle: bool, p: Perm) -> bool:
    return _sorted_by(config, oracle, inverse(p))


def count_av(basis: PatternBasis, n: int, force: bool = False, workers: int | None = None) -> int:
    """|Av_n(basis)| by scanning S_n; barred patterns allowed."""
    check_guard(n, SWEEP_LIMIT, force, "avoidance count")
    return sweep_count(partial(_avoids, basis), n, workers)


def count_sortable_by(config: MachineConfig, n: int, oracle: bool = False,
                      force: bool = False, workers: int | None = None) -> int:
    """Permutations of size n sorted by the device's algorithm, or by some
    operation sequence when ``oracle`` is set."""
    check_guard(n, SWEEP_LIMIT, force, "sortability count")
    return sweep_count(partial(_sorted_by, config, oracle), n, workers)


def count_inverse_sortable(config: MachineConfig, n: int, oracle: bool = False,
                           force: bool = False, workers: int | None = None) -> int:
    """Permutations whose inverse the device sorts."""
    check_guard(n, SWEEP_LIMIT, force, "sortability count")
    return sweep_count(partial(_inverse_sorted_by, config, oracle), n, workers)


def class_members(basis: PatternBasis, n: int) -> list[Perm]:
    """Av_n(basis) for a classical basis, grown by inserting a new maximum
    into members of size n-1 (valid because the set is closed under patterns)."""
    if basis.barred:
        raise ValueError("class growth needs a classical basis")
    layer: list[Perm] = [()]
    for size in range(1, n + 1):
        nxt = []
        for p in layer:
            for i in range(size):
                q = p[:i] + (size,) + p[i:]
                if avoids(q, basis):
                    nxt.append(q)
        layer = sorted(nxt)
    return layer


# -- compositions --------------------------------------------------------------------

PRINTED = {
    "que∘psb": (1, 2, 6, 23, 101, 480, 2400, 12434, 66142, 359112, 1981904, 11085198),
    "psb∘que": (1, 2, 6, 22, 89, 380, 1679, 7602, 35072, 164266, 779022, 3733444),
    "bub∘psb": (1, 2, 6, 21, 76, 273, 970, 3422, 12027, 42194, 147901, 518206),
}

_GFS = {"bub∘psb": BUB_PSB_GF, "psb∘bub": PSB_BUB_GF}


def _composition_sorts(name: str, invert: bool, p: Perm) -> bool:
    q = inverse(p) if invert else p
    return composition_machines(name)(q).sorted


def composition_counts(name: str, max_n: int, inverse_class: bool = False,
                       force: bool = False, workers: int | None = None) -> list[SequenceReport]:
    """Sweep counts for sizes 1..max_n against the printed terms and, where one
    is known, the generating function (whose coefficient of x^n counts size n).
    With ``inverse_class`` the sweep counts permutations whose inverse is sorted."""
    name = composition_name(name)
    check_guard(max_n, 8, force, "composition sweep")
    counts = tuple(sweep_count(partial(_composition_sorts, name, inverse_class), n, workers)
                   for n in range(1, max_n + 1))
    tag = f"{name} inverse" if inverse_class else name
    reports = []
    if name in PRINTED:
        reports.append(SequenceReport(f"{tag} vs printed", counts, PRINTED[name]))
    if name in _GFS:
        ref = tuple(_GFS[name].expand(max_n + 1)[1:])
        reports.append(SequenceReport(f"{tag} vs generating function", counts, ref))
    if not reports:
        reports.append(SequenceReport(f"{tag} vs basis", counts,
                                      tuple(count_av(composition_basis(name), n, force)
                                            for n in range(1, max_n + 1))))
    return reports


# -- conjecture ------------------------------------------------------------------------

def conjecture_value(n: int) -> int:
    """The conjectured number of simple permutations of size n sorted by two
    parallel pop stacks with bypass."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n <= 1:
        return 1
    if n == 2:
        return 2
    return fib(2 * n - 5) - (1 if n % 2 else 0)


def conjecture_simple_psbp(max_n: int, force: bool = False) -> SequenceReport:
    """Simple permutations of each size 0..max_n avoiding the two-parallel
    basis, next to the conjectured values. Report only."""
    check_guard(max_n, 9, force, "conjecture sweep")
    basis = psbp_basis()
    computed = tuple(sum(1 for p in class_members(basis, n) if is_simple(p))
                     for n in range(max_n + 1))
    reference = tuple(conjecture_value(n) for n in range(max_n + 1))
    return SequenceReport("simple psbp-sortable vs conjecture", computed, reference, start=0)

"""
Pattern bases attached to the pop stack with bypass.

Covers preimages of principal classes under psb (a basis when the class
pattern starts with its maximum, or starts with its second maximum and
ends with its maximum; a witness pair otherwise), the bases of the
compositions with Stacksort, Queuesort and Bubblesort, the parallel
machine bases, and brute-force discovery of minimal unsortable patterns.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .machines import (BUBBLE, PSB, QUEUE, STACK, MachineConfig, compose,
                       dfs_sortable, psb_map)
from .perms import (Perm, PatternBasis, all_permutations, avoids, check_guard,
                    contains, direct_sum, is_permutation, occurrences, shuffles, standardize)

__all__ = [
    "BasisVerdict", "basis_preimage_max_first", "basis_preimage_secondmax_first",
    "preimage_class", "nonclass_witness", "COMPOSITIONS", "composition_basis",
    "composition_machines", "composition_name", "psbp_basis", "parallel_nobypass_basis",
    "discover_basis", "sortable_decomposition", "class_mismatches", "stack_psb_amended",
]

DISCOVER_LIMIT = 8


@dataclass(frozen=True)
class BasisVerdict:
    """Whether psb^{-1}(Av(target)) is a class: its basis if so, otherwise
    a pair sigma <= pi with target <= psb(sigma) and target not <= psb(pi)."""
    target: Perm
    is_class: bool
    basis: PatternBasis | None = None
    witness: tuple[Perm, Perm] | None = None

    def verify(self) -> bool:
        if self.is_class:
            return self.basis is not None
        sigma, pi = self.witness
        return (contains(pi, sigma) and contains(psb_map(sigma), self.target)
                and not contains(psb_map(pi), self.target))


def _check_pattern(rho: Sequence[int]) -> Perm:
    rho = tuple(rho)
    if not is_permutation(rho):
        raise ValueError(f"not a permutation: {rho}")
    return rho


def basis_preimage_max_first(rho: Sequence[int]) -> PatternBasis:
    """Basis of psb^{-1}(Av(rho)) for rho = n alpha:
    n(n+1)alpha together with (n+2) n tau for every tau in (n+1) shuffled
    with alpha other than (n+1)alpha."""
    rho = _check_pattern(rho)
    n = len(rho)
    if n < 2 or rho[0] != n:
        raise ValueError(f"{rho} does not begin with its maximum")
    alpha = rho[1:]
    pats = [(n, n + 1) + alpha]
    for tau in shuffles((n + 1,), alpha):
        if tau != (n + 1,) + alpha:
            pats.append((n + 2, n) + tau)
    return PatternBasis.of(*(standardize(p) for p in pats))


def basis_preimage_secondmax_first(rho: Sequence[int]) -> PatternBasis:
    """Basis of psb^{-1}(Av(rho)) for rho = (n-1) alpha n with n >= 3:
    (n-1) n alpha together with (n+1)(n-1) tau for every tau in n shuffled
    with alpha other than n alpha."""
    rho = _check_pattern(rho)
    n = len(rho)
    if n < 3 or rho[0] != n - 1 or rho[-1] != n:
        raise ValueError(f"{rho} is not of the form (n-1) alpha n with n >= 3")
    alpha = rho[1:-1]
    pats = [(n - 1, n) + alpha]
    for tau in shuffles((n,), alpha):
        if tau != (n,) + alpha:
            pats.append((n + 1, n - 1) + tau)
    return PatternBasis.of(*(standardize(p) for p in pats))


def _witness(rho: Perm) -> tuple[Perm, Perm]:
    n = len(rho)
    top = rho.index(n)
    if rho == (1, 2, 3):
        return (3, 2, 1), (3, 4, 2, 1)
    if 0 < top < n - 1:
        a, b = rho[:top], rho[top + 1:]
        sigma = (n + 1,) + a + (n + 2,) + b + (n,)
        pi = (n + 1, n + 3) + a + (n + 2,) + b + (n,)
        return sigma, pi
    # rho ends with its maximum
    second = rho.index(n - 1)
    a, b = rho[:second], rho[second + 1:-1]
    if b:
        sigma = (n,) + a + (n + 1,) + b + (n - 1,)
        pi = (n, n + 2) + a + (n + 1,) + b + (n - 1,)
        return sigma, pi
    if n < 4:
        raise ValueError(f"no witness template covers {rho}")
    sigma = (n - 1, n + 1, n) + a
    pi = (n - 1, n + 1, n + 2, n) + a
    return sigma, pi


def _is_class_shape(rho: Perm) -> bool:
    n = len(rho)
    return (n >= 2 and rho[0] == n) or (n >= 3 and rho[0] == n - 1 and rho[-1] == n)


def nonclass_witness(rho: Sequence[int]) -> BasisVerdict:
    """Witness that psb^{-1}(Av(rho)) is not closed under patterns.

    >>> nonclass_witness((1, 3, 2)).witness
    ((4, 1, 5, 2, 3), (4, 6, 1, 5, 2, 3))
    """
    rho = _check_pattern(rho)
    if len(rho) < 3:
        raise ValueError(f"{rho} is too short for a witness")
    if _is_class_shape(rho):
        raise ValueError(f"psb^-1(Av({''.join(map(str, rho))})) is a class; "
                         "use basis_preimage_max_first or basis_preimage_secondmax_first")
    return BasisVerdict(rho, False, witness=_witness(rho))


def preimage_class(rho: Sequence[int]) -> BasisVerdict:
    """Basis or witness for psb^{-1}(Av(rho)), whichever applies (|rho| >= 3,
    or rho = 21)."""
    rho = _check_pattern(rho)
    n = len(rho)
    if n >= 2 and rho[0] == n:
        return BasisVerdict(rho, True, basis=basis_preimage_max_first(rho))
    if n >= 3 and rho[0] == n - 1 and rho[-1] == n:
        return BasisVerdict(rho, True, basis=basis_preimage_secondmax_first(rho))
    return nonclass_witness(rho)


def class_mismatches(rho: Sequence[int], basis: PatternBasis, n: int) -> list[Perm]:
    """Permutations of size n on which 'psb(pi) avoids rho' and 'pi avoids basis' disagree."""
    rho = tuple(rho)
    return [p for p in all_permutations(n)
            if (not contains(psb_map(p), rho)) != avoids(p, basis)]


# -- compositions -----------------------------------------------------------------

# "x∘psb" runs PSB first, then x
COMPOSITIONS: dict[str, tuple[MachineConfig, ...]] = {
    "stack∘psb": (PSB, STACK),
    "que∘psb": (PSB, QUEUE),
    "bub∘psb": (PSB, BUBBLE),
    "psb∘que": (QUEUE, PSB),
    "psb∘bub": (BUBBLE, PSB),
}

_COMPOSITION_BASES = {
    "stack∘psb": ("2341", "25314", "52314", "45231", "42531", "35!241"),
    "que∘psb": ("3421", "53241", "53214"),
    "bub∘psb": ("2341", "3421", "3241", "25314", "52314", "53214"),
    "psb∘que": ("4231", "2431", "54213"),
    "psb∘bub": ("2341", "2431", "3241", "4231", "45213", "54213"),
}


def composition_name(name: str) -> str:
    """Canonical name; accepts ``stack-psb``, ``stack.psb``, ``stack_psb`` or ``stack∘psb``."""
    key = name.strip().lower()
    for sep in ("-", ".", "_", "o", " "):
        if key.count(sep) == 1 and "∘" not in key:
            left, right = key.split(sep)
            key = f"{left}∘{right}"
            break
    key = key.replace("queue", "que").replace("bubble", "bub")
    if key not in COMPOSITIONS:
        raise ValueError(f"unknown composition {name!r}; choose from {', '.join(COMPOSITIONS)}")
    return key


def composition_machines(name: str) -> Callable:
    return compose(COMPOSITIONS[composition_name(name)])


def composition_basis(name: str) -> PatternBasis:
    """The avoidance basis of the permutations a composition sorts.

    The stack∘psb set is not a permutation class: its basis includes the
    barred pattern 35!241 (the 5 is barred).
    """
    return PatternBasis.of(*_COMPOSITION_BASES[composition_name(name)])


def stack_psb_amended(p: Sequence[int]) -> bool:
    """Membership test that matches stack∘psb exactly for n <= 8.

    p avoids the five classical patterns of the stack∘psb basis, and every
    occurrence c b d a of 3241 has an entry larger than d somewhere before b,
    so it extends to 35241 or to 53241. The barred pattern 35!241 only
    allows the first of these; 53241 is the smallest permutation it wrongly
    rejects.
    """
    p = tuple(p)
    if not avoids(p, PatternBasis.of(*_COMPOSITION_BASES["stack∘psb"][:5])):
        return False
    for c, b, d, a in occurrences(p, (3, 2, 4, 1)):
        if not any(p[j] > p[d] for j in range(b)):
            return False
    return True


# -- parallel machines ---------------------------------------------------------------

def psbp_basis() -> PatternBasis:
    """Two parallel pop stacks with bypass."""
    return PatternBasis.of("2341", "25314", "42513", "42531", "45213", "45231",
                           "52314", "642135", "642153")


def parallel_nobypass_basis() -> PatternBasis:
    """Two parallel pop stacks without bypass."""
    return PatternBasis.of("2341", "3412", "25314", "42531", "52314", "53124", "53142")


# -- discovery -----------------------------------------------------------------------

def _children(p: Perm) -> set[Perm]:
    return {standardize(p[:i] + p[i + 1:]) for i in range(len(p))}


def discover_basis(config: MachineConfig, max_len: int, force: bool = False,
                   sortable: Callable[[Perm], bool] | None = None) -> set[Perm]:
    """Minimal unsortable patterns of length <= max_len for a device.

    A permutation is tested (with the exhaustive oracle unless ``sortable``
    is given) only when all its one-point deletions are sortable; it is a
    basis element if it fails.
    """
    check_guard(max_len, DISCOVER_LIMIT, force, "basis discovery")
    test = sortable or (lambda p: dfs_sortable(p, config))
    good: set[Perm] = {()}
    basis: set[Perm] = set()
    for n in range(1, max_len + 1):
        layer = set()
        for p in all_permutations(n):
            if not _children(p) <= good:
                continue
            if test(p):
                layer.add(p)
            else:
                basis.add(p)
        good |= layer
    return basis


def sortable_decomposition(p: Sequence[int]) -> list[Perm]:
    """Split a psb-sortable permutation into its direct-sum components.

    Each component begins with its maximum and avoids 231 and 213.

    >>> sortable_decomposition((3, 1, 2, 7, 4, 6, 5))
    [(3, 1, 2), (4, 1, 3, 2)]
    """
    p = tuple(p)
    if psb_map(p) != tuple(sorted(p)):
        raise ValueError(f"{p} is not sortable by psb")
    parts = []
    start, high = 0, 0
    for i, v in enumerate(p, 1):
        high = max(high, v)
        if high == i:
            parts.append(standardize(p[start:i]))
            start = i
    assert direct_sum_all(parts) == p
    return parts


def direct_sum_all(parts: Sequence[Sequence[int]]) -> Perm:
    out: Perm = ()
    for q in parts:
        out = direct_sum(out, q)
    return out

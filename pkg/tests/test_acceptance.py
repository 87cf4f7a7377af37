"""
The eleven acceptance criteria, each checked exhaustively at its stated size.

Every check records a line in the terminal summary. Checks whose stated
expectation disagrees with exhaustive computation are marked
``xfail(strict=True)``: they run unchanged, fail, and are reported as FAIL.
"""

import time
from itertools import permutations

import pytest

from conftest import ACCEPTANCE
from popsort import classes, enumeration, preimage, words
from popsort.machines import (POPSTACK, PSB, PSBP, MachineConfig, dfs_sortable, dfs_sortable_word,
                              greedy_parallel, psb, psb_map, psbp, psbw)
from popsort.perms import PatternBasis, all_permutations, avoids, identity

PSB_BASIS = PatternBasis.of("231", "4213")


def record(num, part, ok, detail=""):
    ACCEPTANCE.setdefault(num, []).append((part, bool(ok), detail))
    print(f"criterion {num} [{part}]: {'PASS' if ok else 'FAIL'} {detail}")
    return ok


def first(items, k=3):
    items = list(items)
    text = ", ".join("".join(map(str, p)) if isinstance(p, tuple) else str(p) for p in items[:k])
    return text + (f" (+{len(items) - k} more)" if len(items) > k else "")


# -- 1 ---------------------------------------------------------------------------------

FIXTURES = [
    ((3, 6, 5, 1, 4, 2), (3, 1, 2, 4, 5, 6)),
    ((3, 1, 2, 7, 4, 6, 5), identity(7)),
    ((6, 3, 5, 2, 4, 7, 1, 9, 8), (3, 2, 4, 5, 6, 1, 7, 8, 9)),
]


def test_criterion_1_fixtures():
    ok = True
    for p, want in FIXTURES:
        got = psb(p).output
        timings = []
        for _ in range(50):
            t = time.perf_counter()
            psb(p)
            timings.append(time.perf_counter() - t)
        fast = sorted(timings)[len(timings) // 2] < 1e-3
        ok &= record(1, f"psb({''.join(map(str, p))})", got == want and fast,
                     f"median {sorted(timings)[25] * 1e6:.0f} us")
    p = (3, 1, 2, 7, 4, 6, 5)
    ok &= record(1, "word", words.perm_to_word(p) == "0102100")
    ok &= record(1, "path", words.perm_to_path(p) == "UHUDDUHUUDDD")
    assert ok


# -- 2 ---------------------------------------------------------------------------------

def test_criterion_2_sortability():
    counts = []
    ok = True
    for n in range(1, 10):
        by_psb = {p for p in all_permutations(n) if psb_map(p) == identity(n)}
        by_av = {p for p in all_permutations(n) if avoids(p, PSB_BASIS)}
        by_dfs = {p for p in all_permutations(n) if dfs_sortable(p, PSB)}
        ok &= by_psb == by_av == by_dfs
        counts.append(len(by_psb))
    want = [1, 2, 5, 13, 34, 89, 233, 610, 1597]
    fibs = [enumeration.fib(2 * n - 1) for n in range(1, 10)]
    assert record(2, "psb = Av(231,4213) = dfs, n<=9", ok and counts == want == fibs, str(counts))


# -- 3 ---------------------------------------------------------------------------------

def test_criterion_3_bijections():
    bad = []
    for n in range(1, 9):
        for p in all_permutations(n):
            if psb_map(p) != identity(n):
                continue
            w = words.perm_to_word(p)
            m = words.perm_to_path(p)
            if not (words.word_in_W(w) and words.word_to_perm(w) == p
                    and words.word_to_path(w) == m and words.path_to_word(m) == w
                    and words.path_in_M(m)):
                bad.append(p)
    for n in range(0, 10):
        for w in words.words_W(n):
            m = words.word_to_path(w)
            if words.perm_to_word(words.word_to_perm(w)) != w or words.path_to_word(m) != w:
                bad.append(w)
    ok = record(3, "round trips", not bad, first(bad))
    counts = [(words.count_W(n, "enumerate"), words.count_M(n, "enumerate"), enumeration.fib(2 * n - 1))
              for n in range(0, 13)]
    ok &= record(3, "|W_n| = |M_n| = F_(2n-1), n<=12", all(a == b == c for a, b, c in counts),
                 str([c[0] for c in counts]))
    assert ok


# -- 4 ---------------------------------------------------------------------------------

FIXTURE_3154267 = {tuple(map(int, s)) for s in (
    "7315642", "7315462", "7315426", "3715642", "3715462", "3715426",
    "3517642", "3517462", "3517426", "3516427")}


def test_criterion_4_algorithm_equals_brute():
    diff = []
    for n in range(0, 9):
        table = preimage.preimage_table(n) if n else {(): [()]}
        diff += [s for s in all_permutations(n) if preimage.preimages(s) != set(table.get(s, []))]
    assert record(4, "algorithm = brute force, n<=8", not diff, first(diff))


@pytest.mark.xfail(strict=True, reason="3154267 has 14 preimages; the listed set has 10")
def test_criterion_4_fixture():
    s = (3, 1, 5, 4, 2, 6, 7)
    got, brute = preimage.preimages(s), preimage.brute_preimages(s)
    extra = sorted(got - FIXTURE_3154267)
    assert record(4, "3154267 fixture", got == brute == FIXTURE_3154267,
                  f"{len(brute)} preimages by brute force; unlisted {first(extra, 4)}")


# -- 5 ---------------------------------------------------------------------------------

def test_criterion_5_c0_c1():
    bad = []
    for n in range(1, 9):
        hist = preimage.preimage_histogram(n)
        if preimage.c0(n) != hist[0] or preimage.c1(n) != hist[1]:
            bad.append(n)
    prefix = [preimage.c1(n) for n in range(1, 8)]
    ok = record(5, "c0, c1 = brute, n<=8", not bad, first(bad))
    ok &= record(5, "c1 prefix", prefix == [1, 0, 1, 2, 8, 36, 198], str(prefix))
    assert ok


@pytest.mark.xfail(strict=True, reason="the two-preimage formula misses c1(n-1) permutations")
def test_criterion_5_c2():
    got = [preimage.c2(n) for n in range(1, 9)]
    want = [preimage.preimage_histogram(n)[2] for n in range(1, 9)]
    assert record(5, "c2 = brute, n<=8", got == want, f"formula {got[3:]} vs brute {want[3:]} (n=4..8)")


# -- 6 ---------------------------------------------------------------------------------

def _class_shapes():
    for k in range(2, 5):
        for rho in all_permutations(k):
            if rho[0] == k or (k >= 3 and rho[0] == k - 1 and rho[-1] == k):
                yield rho


def test_criterion_6_class_preimages():
    bad = []
    shapes = list(_class_shapes())
    for rho in shapes:
        verdict = classes.preimage_class(rho)
        if not verdict.is_class:
            bad.append(rho)
            continue
        for n in range(1, 8):
            if classes.class_mismatches(rho, verdict.basis, n):
                bad.append(rho)
                break
    ok = record(6, f"class equality for {len(shapes)} shapes, n<=7", not bad, first(bad))
    witnesses = [rho for k in range(3, 6) for rho in all_permutations(k)
                 if not classes.preimage_class(rho).is_class]
    failed = [rho for rho in witnesses if not classes.preimage_class(rho).verify()]
    ok &= record(6, f"{len(witnesses)} witness templates", not failed, first(failed))
    assert ok


# -- 7 ---------------------------------------------------------------------------------

def _composition_mismatches(name, max_n=8):
    run = classes.composition_machines(name)
    basis = classes.composition_basis(name)
    return [p for n in range(1, max_n + 1) for p in all_permutations(n)
            if run(p).sorted != avoids(p, basis)]


@pytest.mark.parametrize("name", ["que∘psb", "bub∘psb", "psb∘que", "psb∘bub"])
def test_criterion_7_classical_bases(name):
    bad = _composition_mismatches(name)
    assert record(7, f"{name} = Av(basis), n<=8", not bad, first(bad))


@pytest.mark.xfail(strict=True, reason="53241 is stack∘psb-sortable but contains 3241 without 35241")
def test_criterion_7_stack_psb_basis():
    bad = _composition_mismatches("stack∘psb")
    assert record(7, "stack∘psb = Av(basis), n<=8", not bad, f"{len(bad)} mismatches, e.g. {first(bad)}")


def test_criterion_7_sequences():
    ok = True
    for name, max_n, inverse in (("que∘psb", 7, False), ("psb∘que", 7, False), ("bub∘psb", 7, False),
                                 ("bub∘psb", 7, True), ("psb∘bub", 7, True)):
        for r in enumeration.composition_counts(name, max_n, inverse_class=inverse):
            ok &= record(7, r.label, r.agree, str(list(r.computed)))
    assert ok


# -- 8 ---------------------------------------------------------------------------------

def _parallel_sets(n):
    literal, greedy, dfs, av = set(), set(), set(), set()
    basis = classes.psbp_basis()
    for p in all_permutations(n):
        if psbp(p).sorted:
            literal.add(p)
        if greedy_parallel(p, 2, True).sorted:
            greedy.add(p)
        if dfs_sortable(p, PSBP):
            dfs.add(p)
        if avoids(p, basis):
            av.add(p)
    return literal, greedy, dfs, av


@pytest.fixture(scope="module")
def parallel_sets():
    return {n: _parallel_sets(n) for n in range(1, 9)}


@pytest.mark.xfail(strict=True, reason="PSBP as listed never pops a stack whose top is due, so 1423 fails")
def test_criterion_8_psbp_agrees(parallel_sets):
    counts = {n: len(s[0]) for n, s in parallel_sets.items()}
    missed = sorted((p for s in parallel_sets.values() for p in s[2] - s[0]), key=lambda p: (len(p), p))
    ok = all(s[0] == s[1] == s[2] for s in parallel_sets.values())
    assert record(8, "PSBP = greedy = dfs, n<=8", ok,
                  f"PSBP counts {list(counts.values())}; misses {first(missed)}")


def test_criterion_8_greedy_dfs_basis_gf(parallel_sets):
    gf = enumeration.PSBP_GF.expand(9)
    ok = all(s[1] == s[2] == s[3] and len(s[2]) == gf[n] for n, s in parallel_sets.items())
    assert record(8, "greedy = dfs = Av(9 patterns) = GF, n<=8", ok,
                  str([len(s[2]) for s in parallel_sets.values()]))


def test_criterion_8_nobypass():
    basis = classes.parallel_nobypass_basis()
    config = MachineConfig("parallel-pops", 2, False)
    bad = [p for n in range(1, 8) for p in all_permutations(n)
           if not (greedy_parallel(p, 2, False).sorted == avoids(p, basis) == dfs_sortable(p, config))]
    assert record(8, "no-bypass greedy = Av(7 patterns), n<=7", not bad, first(bad))


# -- 9 ---------------------------------------------------------------------------------

def test_criterion_9_discovery():
    two = MachineConfig("parallel-pops", 2, True)
    ok = record(9, "psb, max_len 6", classes.discover_basis(PSB, 6) == {(2, 3, 1), (4, 2, 1, 3)})
    ok &= record(9, "plain pop stack, max_len 5",
                 classes.discover_basis(POPSTACK, 5) == {(2, 3, 1), (3, 1, 2)})
    want = set(classes.psbp_basis().classical)
    ok &= record(9, "psbp, max_len 6", classes.discover_basis(two, 6) == want)
    ok &= record(9, "psbp, nothing new at length 7", classes.discover_basis(two, 7) == want)
    assert ok


# -- 10 --------------------------------------------------------------------------------

def test_criterion_10_psbw():
    bad = [p for n in range(1, 9) for p in all_permutations(n)
           if psbw([x - 1 for x in p], 1).sorted != dfs_sortable(p, PSB)]
    ok = record(10, "psbw(k=1) = dfs, n<=8", not bad, first(bad))
    # report only: the k=2 claim is not proved
    notes = []
    for m in range(1, 5):
        ws = sorted(set(permutations([x for x in range(m) for _ in range(2)])))
        diff = [w for w in ws if psbw(w, 2).sorted != dfs_sortable_word(w, PSB)]
        notes.append(f"{m} letters: {len(diff)}/{len(ws)} discrepancies" + (f" {first(diff)}" if diff else ""))
    record(10, "report psbw(k=2) vs dfs", True, "; ".join(notes))
    assert ok


# -- 11 --------------------------------------------------------------------------------

def test_criterion_11_conjecture_report():
    r = enumeration.conjecture_simple_psbp(9)
    for n, (a, b) in enumerate(zip(r.computed, r.reference)):
        print(f"criterion 11 report: n={n} computed {a} conjectured {b}")
    # report only: the comparison itself never fails
    record(11, "report", True, f"computed {list(r.computed)}, conjectured {list(r.reference)}")
    assert len(r.computed) == 10

import pytest
from hypothesis import given

from conftest import perms
from popsort.machines import (BUBBLE, POPSTACK, PSB, PSBP, QUEUE, STACK, MachineConfig, Trace,
                              bubblesort, compose, dfs_sortable, dfs_sortable_word,
                              greedy_parallel, is_regular_word, popstack_plain, psb, psb_map,
                              psbp, psbw, queuesort, run, stacksort)
from popsort.perms import PatternBasis, all_permutations, avoids, identity

PSB_BASIS = PatternBasis.of("231", "4213")


@pytest.mark.parametrize("p,out", [
    ((3, 6, 5, 1, 4, 2), (3, 1, 2, 4, 5, 6)),
    ((3, 1, 2, 7, 4, 6, 5), identity(7)),
    ((6, 3, 5, 2, 4, 7, 1, 9, 8), (3, 2, 4, 5, 6, 1, 7, 8, 9)),
    ((), ()),
])
def test_psb_fixtures(p, out):
    assert psb(p).output == out
    assert psb_map(p) == out
    assert psb(p).sorted == (out == identity(len(p)))


def test_psb_trace_figure_two():
    t = psb((3, 1, 2, 7, 4, 6, 5), trace=True).trace
    assert [s.op for s in t.steps] == ["PUSH", "BYPASS", "PUSH", "POP", "PUSH", "BYPASS",
                                       "PUSH", "PUSH", "POP"]
    assert t.replay() == t.output == identity(7)
    assert Trace.from_dict(t.to_dict()) == t


@pytest.mark.parametrize("fn,p,out", [
    (stacksort, (3, 2, 1), (1, 2, 3)),
    (queuesort, (2, 3, 1), (1, 2, 3)),
    (bubblesort, (3, 2, 1), (2, 1, 3)),
    (popstack_plain, (2, 3, 1), (2, 1, 3)),
    (popstack_plain, (5, 4, 3, 2, 1), identity(5)),
    (popstack_plain, (3, 1, 2), (1, 3, 2)),
])
def test_classic_machines(fn, p, out):
    assert fn(p).output == out


@pytest.mark.parametrize("fn,basis", [
    (stacksort, ("231",)), (queuesort, ("321",)), (bubblesort, ("231", "321")),
    (popstack_plain, ("231", "312")), (psb, ("231", "4213")),
])
def test_machine_classes(fn, basis):
    b = PatternBasis.of(*basis)
    for n in range(7):
        for p in all_permutations(n):
            assert fn(p).sorted == avoids(p, b), p


def test_psbp_examples():
    assert not psbp((2, 3, 4, 1)).sorted
    assert all(psbp(p).sorted for p in all_permutations(3))
    assert psbp(identity(6)).output == identity(6)


def test_psbp_literal_misses_due_pops():
    # the listed algorithm never pops a stack whose top is already due
    assert psbp((1, 4, 2, 3)).output == (2, 1, 3, 4)
    assert psbp((1, 4, 2, 3), eager=True).sorted
    assert dfs_sortable((1, 4, 2, 3), PSBP)


def test_psbp_eager_matches_oracle_small():
    for n in range(7):
        for p in all_permutations(n):
            assert psbp(p, eager=True).sorted == dfs_sortable(p, PSBP), p


def test_psbp_trace_replays():
    for p in all_permutations(5):
        out = psbp(p, trace=True, eager=True)
        assert out.trace.replay() == out.output


def test_greedy_examples():
    assert greedy_parallel((2, 3, 1), 1, True).stuck
    assert greedy_parallel((2, 3, 4, 1), 2, True).stuck
    for k in (1, 2, 3):
        for bypass in (True, False):
            assert greedy_parallel(identity(5), k, bypass).output == identity(5)


def test_greedy_one_stack_is_psb():
    for n in range(8):
        for p in all_permutations(n):
            assert greedy_parallel(p, 1, True).sorted == psb(p).sorted


@pytest.mark.parametrize("p,want", [((2, 3, 1), False), ((2, 4, 3, 1), False), ((3, 1, 2), True)])
def test_dfs_psb(p, want):
    assert dfs_sortable(p, PSB) is want


@pytest.mark.parametrize("config", [PSB, STACK, QUEUE, BUBBLE, POPSTACK, PSBP,
                                    MachineConfig("parallel-pops", 2, False)])
def test_dfs_identity(config):
    assert dfs_sortable(identity(6), config)


@pytest.mark.parametrize("config", [PSB, STACK, QUEUE, POPSTACK])
def test_dfs_agrees_with_deterministic(config):
    for n in range(7):
        for p in all_permutations(n):
            assert dfs_sortable(p, config) == run(config, p).sorted, (config, p)


def test_compose():
    assert not compose([PSB, QUEUE])((3, 4, 2, 1)).sorted
    assert not compose([BUBBLE, PSB])((4, 5, 2, 1, 3)).sorted
    assert compose([PSB, STACK])((5, 3, 2, 4, 1)).sorted
    with pytest.raises(ValueError):
        compose([])


@pytest.mark.parametrize("w,out", [("1100", (0, 0, 1, 1)), ("1010", (0, 0, 1, 1)),
                                   ("0011", (0, 0, 1, 1))])
def test_psbw(w, out):
    res = psbw(w, 2)
    assert res.output == out and res.sorted


def test_psbw_errors():
    with pytest.raises(ValueError):
        psbw("1021", 2)
    assert is_regular_word((1, 0, 0, 1), 2)
    assert not is_regular_word((0, 0, 2), 1)


def test_dfs_word_oracle():
    assert dfs_sortable_word("1100", PSB)
    assert not dfs_sortable_word((1, 2, 0), PSB)


@pytest.mark.parametrize("text,name", [
    ("psb", "psb"), ("stack", "classic-stack"), ("queue", "queue-bypass"), ("bubble", "bubble"),
    ("popstack", "popstack-plain"), ("psbp", "parallel-2-bypass"),
    ("parallel-3-nobypass", "parallel-3-nobypass"), ("parallel-2", "parallel-2-bypass"),
])
def test_config_parse(text, name):
    assert MachineConfig.parse(text).name == name


@pytest.mark.parametrize("text", ["foo", "parallel-x", "parallel-2-maybe", "parallel-0"])
def test_config_parse_errors(text):
    with pytest.raises(ValueError):
        MachineConfig.parse(text)


@given(perms(0, 9))
def test_psb_outputs_permutation_and_replays(p):
    out = psb(p, trace=True)
    assert sorted(out.output) == sorted(p)
    assert out.trace.replay() == out.output == psb_map(p)
    assert out.sorted == avoids(p, PSB_BASIS)


@given(perms(0, 7))
def test_psb_sorted_matches_oracle(p):
    assert psb(p).sorted == dfs_sortable(p, PSB)


@given(perms(0, 8))
def test_psbw_k1_is_psb(p):
    assert psbw([x - 1 for x in p], 1).sorted == psb(p).sorted

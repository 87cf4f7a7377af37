from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from conftest import perms
from popsort.machines import psb_map
from popsort.perms import GuardError, all_permutations
from popsort.preimage import (brute_preimages, c0, c1, c2, c2_amended, count_rows, in_C0, in_C1,
                              in_C2, in_C2_amended, preimage_histogram, preimage_table, preimages)

FIXTURE = {(7, 3, 1, 5, 6, 4, 2), (7, 3, 1, 5, 4, 6, 2), (7, 3, 1, 5, 4, 2, 6),
           (3, 7, 1, 5, 6, 4, 2), (3, 7, 1, 5, 4, 6, 2), (3, 7, 1, 5, 4, 2, 6),
           (3, 5, 1, 7, 6, 4, 2), (3, 5, 1, 7, 4, 6, 2), (3, 5, 1, 7, 4, 2, 6),
           (3, 5, 1, 6, 4, 2, 7)}
TARGET = (3, 1, 5, 4, 2, 6, 7)


def test_fixture_members_are_preimages():
    assert all(psb_map(p) == TARGET for p in FIXTURE)


def test_preimages_contain_fixture_and_match_brute():
    got = preimages(TARGET)
    assert FIXTURE <= got
    assert got == brute_preimages(TARGET)
    # the ten listed plus the preimages starting with 531, which 315 also has
    assert got - FIXTURE == {(5, 3, 1, 6, 4, 2, 7), (5, 3, 1, 7, 4, 2, 6),
                             (5, 3, 1, 7, 4, 6, 2), (5, 3, 1, 7, 6, 4, 2)}
    assert preimages((3, 1, 5)) == {(3, 5, 1), (5, 3, 1)}


@pytest.mark.parametrize("s,want", [((1,), {(1,)}), ((2, 1), set()), ((), {()}),
                                    ((1, 3, 2, 4), {(1, 3, 4, 2), (3, 1, 4, 2)})])
def test_small_preimages(s, want):
    assert preimages(s) == want


def test_brute():
    assert brute_preimages((1, 2)) == {(1, 2), (2, 1)}
    assert brute_preimages((2, 3, 1)) == set()
    with pytest.raises(GuardError):
        brute_preimages(tuple(range(1, 11)))


@pytest.mark.parametrize("n", range(0, 8))
def test_algorithm_equals_brute(n):
    table = preimage_table(n)
    for s in all_permutations(n):
        assert preimages(s) == set(table.get(s, [])), s


@given(perms(0, 9))
def test_every_permutation_is_a_preimage_of_its_image(p):
    assert p in preimages(psb_map(p))


def test_characterization_examples():
    assert in_C0((2, 1))
    assert not in_C0((1, 2))
    assert in_C1((2, 1, 3)) and not in_C1((1, 2, 3))
    assert in_C2((1, 3, 2, 4)) and not in_C2((2, 3, 1, 4))
    assert in_C2_amended((2, 3, 1, 4))


def test_histogram_methods_agree():
    for n in range(7):
        assert preimage_histogram(n, "brute") == preimage_histogram(n, "algorithm")
    with pytest.raises(ValueError):
        preimage_histogram(3, "other")


def test_c0_c1():
    assert c0(4) == 18
    assert [c1(n) for n in range(1, 8)] == [1, 0, 1, 2, 8, 36, 198]
    for n in range(1, 9):
        hist = preimage_histogram(n)
        assert c0(n) == hist[0] and c1(n) == hist[1]


def _c2_sympy(n):
    return sum(sympy.Rational(n - k - j + 1, j) * sympy.factorial(n - k) * sympy.binomial(n - j - k, k - 3)
               for k in range(3, n + 1) for j in range(1, n - k + 1))


@pytest.mark.parametrize("n", range(4, 9))
def test_c2_evaluates_its_formula(n):
    assert Fraction(c2(n)) == Fraction(str(_c2_sympy(n)))


@pytest.mark.parametrize("n", range(1, 9))
def test_c2_amended_matches_histogram(n):
    assert c2_amended(n) == preimage_histogram(n)[2]


@pytest.mark.parametrize("n", range(4, 9))
def test_c2_gap_is_c1_one_size_down(n):
    assert preimage_histogram(n)[2] - c2(n) == c1(n - 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_characterizations_against_brute(n):
    table = preimage_table(n)
    for p in all_permutations(n):
        k = len(table.get(p, []))
        assert in_C0(p) == (k == 0)
        assert in_C1(p) == (k == 1)
        assert in_C2_amended(p) == (k == 2)
        if in_C2(p):
            assert k == 2


def test_count_rows():
    assert count_rows(4)[-1] == (4, 18, 2, 1, 18, 2, 2)

import pytest

import oracles
from crosstile.cross import TrivialityKind, classify, gen_example_first, is_cross_tiling, translate_equivalent
from crosstile.search import (
    SearchBudgetExceeded,
    SearchConstraints,
    canonical_instance,
    canonical_pair,
    cardinality_profiles,
    estimate_work,
    search_cross,
)
from crosstile.zn_core import CyclicSet


def keys(n, **kw):
    return [i.key() for i in search_cross(n, **kw)]


def test_n2_contains_canonical_trivial_instance():
    found = list(search_cross(2, SearchConstraints((1, 1, 1, 1))))
    target = [i for i in found if i.key() == ((0,), (0,), (0,), (1,))]
    assert len(target) == 1
    assert classify(target[0]).kind is TrivialityKind.TRIVIAL_XY_OVER_A


@pytest.mark.parametrize("n", [2, 3, 4])
def test_matches_brute_force_enumeration(n):
    expected = oracles.all_cross_tilings(n)
    got = set()
    for inst in search_cross(n):
        got.add(((frozenset(inst.A), frozenset(inst.B)), (frozenset(inst.X), frozenset(inst.Y))))
    assert got == expected


@pytest.mark.parametrize("n", range(2, 8))
def test_kernel_and_python_paths_agree(n):
    assert keys(n) == keys(n, use_kernel=False)


def test_known_counts():
    assert [len(keys(n)) for n in range(2, 8)] == [14, 20, 64, 36, 236, 68]


@pytest.mark.parametrize("n", [5, 6])
def test_results_verified_canonical_and_unique(n):
    found = list(search_cross(n))
    assert len({i.key() for i in found}) == len(found)
    for inst in found:
        assert is_cross_tiling(inst)
        assert canonical_instance(inst) == inst


def test_order_is_profile_then_lexicographic():
    found = list(search_cross(6))
    order = [(i.cardinalities(), i.key()) for i in found]
    assert order == sorted(order)


def test_nontrivial_filter():
    found = list(search_cross(4, SearchConstraints(nontrivial=True)))
    assert found
    assert all(classify(i).kind is TrivialityKind.NON_TRIVIAL for i in found)
    allk = [i for i in search_cross(4) if classify(i).kind is TrivialityKind.NON_TRIVIAL]
    assert [i.key() for i in allk] == [i.key() for i in found]


def test_fixed_a_constraint():
    n = 6
    fixed = CyclicSet.from_members(n, [0, 1, 2])
    found = list(search_cross(n, SearchConstraints(fixed_A=fixed)))
    assert found
    assert all(translate_equivalent(fixed, i.A) is not None for i in found)
    every = [i.key() for i in search_cross(n) if translate_equivalent(fixed, i.A) is not None]
    assert [i.key() for i in found] == every


def test_fixed_x_constraint():
    n = 6
    fixed = CyclicSet.from_members(n, [0, 3])
    found = [i.key() for i in search_cross(n, SearchConstraints(fixed_X=fixed))]
    every = [i.key() for i in search_cross(n) if translate_equivalent(fixed, i.X) is not None]
    assert found == every


def test_impossible_profile_is_empty():
    assert list(search_cross(6, SearchConstraints((1, 2, 1, 2)))) == []


def test_profiles_satisfy_necessary_conditions():
    for n in range(2, 13):
        for a, b, x, y in cardinality_profiles(n):
            assert (a + b) * (x + y) == 2 * n and (a == b or x == y)


def test_canonical_pair_is_orbit_minimum():
    n = 8
    for p in range(0, 1 << n, 7):
        for q in (0, 5, 129):
            c = canonical_pair(n, p, q)
            for t in range(n):
                rp = ((p << t) | (p >> (n - t))) & 0xFF if t else p
                rq = ((q << t) | (q >> (n - t))) & 0xFF if t else q
                assert canonical_pair(n, rp, rq) == c


def test_budget_refusal(monkeypatch):
    with pytest.raises(SearchBudgetExceeded):
        next(search_cross(10000))
    with pytest.raises(SearchBudgetExceeded):
        next(search_cross(12, budget=10))
    monkeypatch.setenv("CROSSTILE_BUDGET", "10")
    with pytest.raises(SearchBudgetExceeded):
        next(search_cross(12))
    assert estimate_work(12) > 10


def test_parallel_matches_serial():
    assert keys(6, jobs=2) == keys(6)


def test_n30_contains_first_family_example():
    target = canonical_instance(gen_example_first(5, 3)).key()
    assert any(i.key() == target for i in search_cross(30, SearchConstraints((5, 5, 3, 3))))

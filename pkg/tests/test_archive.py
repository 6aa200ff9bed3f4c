import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biirp.archive import (
    Dedup,
    EvaluatedSolution,
    ObjectiveVector,
    Outcome,
    ParetoArchive,
    decision_space_duplicate,
    dominates,
    nondominated_filter,
    read_archive_csv,
)
from biirp.encoding import Genotype, Representation

from oracles import nondominated_unique


def sol(z1, z2, tag=0):
    return EvaluatedSolution(Genotype(Representation.FREQUENCY, (tag + 1,)), ObjectiveVector(z1, z2))


def test_dominates_examples():
    assert dominates((1, 1), (2, 2))
    assert not dominates((1, 2), (2, 1)) and not dominates((2, 1), (1, 2))
    assert not dominates((1, 1), (1, 1))
    assert dominates((1, 1), (1, 2))


def test_insert_examples():
    a = ParetoArchive()
    assert a.insert(sol(1, 5)).status is Outcome.ADDED
    a.insert(sol(5, 1, 1))
    out = a.insert(sol(1, 5, 2))
    assert out.status is Outcome.REJECTED_DUPLICATE and len(a) == 2
    out = a.insert(sol(3, 6, 3))
    assert out.status is Outcome.REJECTED_DOMINATED
    out = a.insert(sol(0, 0, 4))
    assert out.status is Outcome.ADDED and out.removed == 2
    assert a.objectives() == [(0, 0)]


def test_duplicate_tolerance():
    a = ParetoArchive()
    a.insert(sol(1.0, 5.0))
    assert a.insert(sol(1.0 + 5e-10, 5.0 - 5e-10, 1)).status is Outcome.REJECTED_DUPLICATE
    assert a.insert(sol(1.0 + 5e-9, 5.0 - 5e-9, 2)).status is Outcome.ADDED


def test_equal_in_one_objective_replaces():
    a = ParetoArchive()
    a.insert(sol(1, 5))
    out = a.insert(sol(1, 4, 1))
    assert out.added and out.removed == 1 and a.objectives() == [(1, 4)]


def test_idempotent_member_insert():
    a = ParetoArchive()
    for k, p in enumerate([(1, 9), (2, 7), (4, 3)]):
        a.insert(sol(*p, k))
    before = a.members
    for m in before:
        assert a.insert(m).status is Outcome.REJECTED_DUPLICATE
    assert a.members == before


def test_decision_dedup_keeps_equal_objectives():
    a = ParetoArchive(Dedup.DECISION)
    a.insert(sol(1, 5, 0))
    assert a.insert(sol(1, 5, 1)).added
    assert a.insert(sol(1, 5, 1)).status is Outcome.REJECTED_DUPLICATE
    assert a.insert(sol(3, 2, 2)).added
    assert len(a) == 3
    out = a.insert(sol(0.5, 4, 3))
    assert out.added and out.removed == 2


def test_decision_space_duplicate():
    g = Genotype(Representation.DATED, (1, 2), (3, 4))
    assert decision_space_duplicate(g, Genotype(Representation.DATED, (1, 2), (3, 4)))
    assert not decision_space_duplicate(g, Genotype(Representation.DATED, (1, 3), (3, 4)))
    assert not decision_space_duplicate(g, Genotype(Representation.DATED, (1, 2), (3, 5)))
    with pytest.raises(ValueError):
        decision_space_duplicate(g, Genotype(Representation.FREQUENCY, (1, 2)))


def test_decision_space_duplicate_ignores_schedules():
    from biirp.encoding import decode
    from biirp.instance import Customer, Instance

    # a customer that never runs out decodes identically for any period
    inst = Instance("x", 4, 0, 0, 10.0, (Customer(1, 1, 1, 1.0, 9.0),))
    a = Genotype(Representation.FREQUENCY, (1,))
    b = Genotype(Representation.FREQUENCY, (2,))
    assert decode(a, inst) == decode(b, inst)
    assert not decision_space_duplicate(a, b)


grid = st.tuples(st.integers(0, 30), st.integers(0, 30))


@given(st.lists(grid, max_size=200))
def test_matches_bruteforce_filter(points):
    a = ParetoArchive()
    for k, p in enumerate(points):
        a.insert(sol(float(p[0]), float(p[1]), k))
    assert [tuple(v) for v in a.objectives()] == nondominated_unique(points)
    assert [tuple(v) for v in nondominated_filter(points)] == nondominated_unique(points)


@given(st.lists(grid, max_size=120))
def test_pairwise_nondominated_and_sorted(points):
    a = ParetoArchive()
    for k, p in enumerate(points):
        a.insert(sol(*p, k))
        objs = a.objectives()
        for x, y in zip(objs, objs[1:]):
            assert x.z1 < y.z1 and x.z2 > y.z2


@given(st.lists(grid, max_size=60, unique=True), st.randoms(use_true_random=False))
def test_order_independence(points, rnd):
    a, b = ParetoArchive(), ParetoArchive()
    for k, p in enumerate(points):
        a.insert(sol(*p, k))
    shuffled = list(points)
    rnd.shuffle(shuffled)
    for k, p in enumerate(shuffled):
        b.insert(sol(*p, k))
    assert sorted(a.objectives()) == sorted(b.objectives())


@given(st.lists(grid, max_size=80))
def test_decision_mode_front_matches_filter(points):
    a = ParetoArchive(Dedup.DECISION)
    for k, p in enumerate(points):
        a.insert(sol(*p, k))
    assert sorted(set(map(tuple, a.objectives()))) == nondominated_unique(points)


def test_csv_dump_round_trip():
    a = ParetoArchive()
    a.insert(EvaluatedSolution(Genotype(Representation.DATED, (1, 2), (3, 4)), ObjectiveVector(0.1, 2.5)))
    a.insert(EvaluatedSolution(Genotype(Representation.DATED, (2, 2), (3, 1)), ObjectiveVector(1.0 / 3, 0.5)))
    text = a.to_csv()
    assert text.splitlines()[0] == "z1,z2,genotype"
    assert text.splitlines()[1] == "0.1,2.5,1;2|3;4"
    rows = read_archive_csv(text)
    assert [(m.objectives, m.genotype) for m in a] == rows

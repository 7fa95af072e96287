import pytest

from holgraph.catalog import catalog_index, expected_counts
from holgraph.gamma import is_aut_equivariant, regular_subgroup, validate
from holgraph.normgraph import build_graph
from holgraph.oracle import (
    Holomorph,
    TooLarge,
    count_by_iso,
    enumerate_regular_subgroups,
    holomorph,
    mutually_normalize_perm,
    normalizes_elementwise,
    oracle_graph,
    verification_report,
)

DESK = [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]


def test_holomorph_is_a_group():
    h = holomorph(2, 3)
    assert h.order == 32
    for a in range(h.order):
        assert h.mul[a, h.inv[a]] == h.identity
        for b in range(0, h.order, 5):
            for x in range(h.m):
                assert h.act(int(h.mul[a, b]), x) == h.act(b, h.act(a, x))


def test_too_large():
    with pytest.raises(TooLarge):
        Holomorph(2, 7)


@pytest.mark.parametrize("p,n", DESK)
def test_subgroups_regular_two_ways(p, n):
    for s in enumerate_regular_subgroups(p, n):
        assert s.order == p**n and s.is_closed()
        assert sorted(s.orbit_map().values()) == list(range(p**n))
        assert s.is_transitive() and s.point_stabilizer() == {s.hol.identity}


@pytest.mark.parametrize("p,n", DESK)
def test_reconstruction_round_trip(p, n):
    index = catalog_index(p, n)
    for s in enumerate_regular_subgroups(p, n):
        gamma = s.gamma()
        assert validate(gamma)
        assert regular_subgroup(gamma) == frozenset(s.holomorph_elements())
        assert gamma in index


@pytest.mark.parametrize("p,n", [(2, 3), (2, 4), (3, 2)])
def test_two_generators_suffice(p, n):
    two = {s.elements for s in enumerate_regular_subgroups(p, n)}
    three = {s.elements for s in enumerate_regular_subgroups(p, n, max_gens=3)}
    assert three == two


@pytest.mark.parametrize("p,n", DESK)
def test_normal_iff_equivariant(p, n):
    for s in enumerate_regular_subgroups(p, n):
        assert s.is_normal() == is_aut_equivariant(s.gamma())


@pytest.mark.parametrize("p,n", [(2, 3), (2, 4), (3, 3)])
def test_generator_test_matches_elementwise(p, n):
    subs = enumerate_regular_subgroups(p, n)
    for a in subs:
        for b in subs:
            both = normalizes_elementwise(a, b) and normalizes_elementwise(b, a)
            assert mutually_normalize_perm(a, b) == both


@pytest.mark.parametrize("p,n", DESK)
def test_counts_by_class(p, n):
    assert count_by_iso(p, n) == expected_counts(p, n).by_iso


def test_n3_count():
    # order 8: two cyclic, two C2 x C4, one quaternion, one dihedral
    assert count_by_iso(2, 3) == {"Cyclic": 2, "DirectProduct": 2, "Quaternion": 1, "Dihedral": 1}


@pytest.mark.parametrize("p,n", DESK)
def test_oracle_graph_matches_engines(p, n):
    truth = oracle_graph(p, n)
    for engine in ("closed_form", "modular", "general"):
        assert build_graph(p, n, engine) == truth


def test_report_lists_each_engine():
    ok, text = verification_report(3, 2)
    assert ok and "PASS" not in text
    for word in ("closed_form", "modular", "general", "catalog vertices"):
        assert word in text

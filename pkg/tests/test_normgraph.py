from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from holgraph.catalog import SubgroupLabel, full_catalog, labeled_gamma
from holgraph.gamma import GammaFunction, is_antihomomorphism
from holgraph.modring import Modulus
from holgraph.normgraph import (
    ClosedFormUnavailable,
    NormalizingGraph,
    a_family_count_direct,
    a_family_count_formula,
    build_graph,
    clique_families,
    edge_key,
    export,
    from_json,
    general_violation,
    h_size_formula,
    is_clique,
    modular_violation,
    mutually_normalize_general,
    mutually_normalize_mod,
    predicted_edge,
    to_dot,
)

AGREEMENT_CASES = [(2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2)]


def L(p, n, *args):
    return SubgroupLabel(p, n, *args)


def g(p, n, *args):
    return labeled_gamma(L(p, n, *args))


def test_named_edges_c16():
    assert mutually_normalize_general(g(2, 4, "G1"), g(2, 4, "G2"))
    assert mutually_normalize_general(g(2, 4, "G5"), g(2, 4, "G6"))
    assert mutually_normalize_mod(g(2, 4, "G2"), g(2, 4, "G3"))
    assert not predicted_edge(L(2, 4, "G1"), L(2, 4, "G5"))


def test_translation_side_versus_p_family_has_witness():
    side, x, y = general_violation(g(2, 4, "G1"), g(2, 4, "P", None, 0))
    assert side in ("N>M", "M>N")
    assert not mutually_normalize_general(g(2, 4, "G1"), g(2, 4, "P", None, 0))
    assert modular_violation(g(2, 4, "G1"), g(2, 4, "P", None, 0)) is not None


def test_modulus_mismatch():
    with pytest.raises(ValueError):
        mutually_normalize_general(GammaFunction.trivial(Modulus(2, 3)), GammaFunction.trivial(Modulus(2, 4)))


def test_cyclic_pair_congruence_on_c128():
    n = 7
    for k in range(2 ** (n - 3)):
        for h in range(2 ** (n - 4)):
            a, b = 4 * (2 * k + 1), 8 * (2 * h + 1)
            want = (a - b) % 2**5 == 0 and (a - b) % 2**4 == 0
            assert predicted_edge(L(2, n, "C", 2, k), L(2, n, "C", 3, h)) == want
            if k < 2 and h < 2:
                assert mutually_normalize_mod(g(2, n, "C", 2, k), g(2, n, "C", 3, h)) == want


@pytest.mark.parametrize("n", [4, 5, 6])
def test_p_m_rule(n):
    for k in range(2 ** (n - 2)):
        for h in range(2 ** (n - 2)):
            want = (k - h - 2 ** (n - 4)) % 2 ** (n - 3) == 0
            assert predicted_edge(L(2, n, "P", None, k), L(2, n, "M", None, h)) == want
            assert mutually_normalize_mod(g(2, n, "P", None, k), g(2, n, "M", None, h)) == want


def test_odd_layers_do_not_mix():
    assert not predicted_edge(L(3, 3, "U", 1, 0, 1), L(3, 3, "U", 2, 0, 1))
    assert not mutually_normalize_general(g(3, 3, "U", 1, 0, 1), g(3, 3, "U", 2, 0, 1))


def test_closed_form_unavailable_at_n3():
    with pytest.raises(ClosedFormUnavailable):
        predicted_edge(L(2, 3, "G1"), L(2, 3, "G2"))
    assert build_graph(2, 3, "closed_form") == build_graph(2, 3, "modular")


@pytest.mark.parametrize("p,n", AGREEMENT_CASES)
def test_engines_agree_pairwise(p, n):
    for a, b in combinations(full_catalog(p, n), 2):
        gen = mutually_normalize_general(a.gamma, b.gamma)
        assert mutually_normalize_mod(a.gamma, b.gamma) == gen, (a.label, b.label)
        assert predicted_edge(a.label, b.label) == gen, (a.label, b.label)


@settings(max_examples=80, deadline=None)
@given(case=st.sampled_from(AGREEMENT_CASES + [(2, 3)]), data=st.data())
def test_symmetry_and_diagonal(case, data):
    entries = full_catalog(*case)
    a = data.draw(st.sampled_from(entries))
    b = data.draw(st.sampled_from(entries))
    assert mutually_normalize_general(a.gamma, b.gamma) == mutually_normalize_general(b.gamma, a.gamma)
    assert mutually_normalize_mod(a.gamma, b.gamma) == mutually_normalize_mod(b.gamma, a.gamma)
    assert mutually_normalize_general(a.gamma, a.gamma)
    assert mutually_normalize_mod(a.gamma, a.gamma)


@pytest.mark.parametrize("p,n", AGREEMENT_CASES + [(2, 3), (3, 4), (5, 3)])
def test_translation_vertex_matches_antihomomorphism(p, n):
    entries = full_catalog(p, n)
    rho = entries[0].gamma
    assert rho == GammaFunction.trivial(Modulus(p, n))
    for e in entries:
        assert mutually_normalize_general(rho, e.gamma) == is_antihomomorphism(e.gamma)


@pytest.mark.parametrize("p,n", AGREEMENT_CASES + [(2, 3), (3, 4)])
def test_graph_invariants(p, n):
    graph = build_graph(p, n, "modular")
    labels = set(graph.labels)
    for a, b in graph.edges:
        assert a != b and a in labels and b in labels
        assert edge_key(a, b) == (a, b) and graph.has_edge(b, a)
    fams = clique_families(p, n)
    covered = set()
    for f in fams:
        assert is_clique(graph, f.members), f.name
        covered |= {edge_key(a, b) for a, b in combinations(f.members, 2)}
    assert covered == graph.edges


@pytest.mark.parametrize("p,n", AGREEMENT_CASES)
def test_families_maximal(p, n):
    graph = build_graph(p, n, "modular")
    for f in clique_families(p, n):
        outside = [v for v in graph.labels if v not in f.members]
        assert not any(is_clique(graph, f.members + [v]) for v in outside), f.name


@pytest.mark.parametrize("p,n", [(2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (3, 3), (3, 4), (3, 5), (5, 3), (7, 3)])
def test_family_sizes(p, n):
    fams = clique_families(p, n)
    h = [f for f in fams if f.kind == "H"]
    assert len(h) == 1 and len(h[0].members) == h_size_formula(p, n)
    a = [f for f in fams if f.kind == "A"]
    assert all(len(f.members) == p ** f.params[0] for f in a)
    assert len(a) == a_family_count_direct(p, n) == a_family_count_formula(p, n)
    if p == 2:
        s = [f for f in fams if f.kind == "S"]
        assert len(s) == 2 ** (n - 3) and all(len(set(f.members)) == 4 for f in s)


def test_s_families_c16():
    fams = {f.name: f.members for f in clique_families(2, 4) if f.kind == "S"}
    P = lambda k: L(2, 4, "P", None, k)
    M = lambda k: L(2, 4, "M", None, k)
    assert fams == {"S(0)": [P(0), M(1), P(2), M(3)], "S(1)": [P(1), M(2), P(3), M(0)]}


def test_c16_edges_are_the_listed_cliques():
    graph = build_graph(2, 4, "modular")
    # 6 + 6 - 1 shared {G3,G4} + 6 - 1 shared {G1,G2} + 2 * 6
    assert len(graph.edges) == 28


def test_json_round_trip_and_schema():
    graph = build_graph(2, 5, "closed_form")
    blob = export(graph, "json")
    assert blob == export(build_graph(2, 5, "closed_form"), "json")
    import json

    doc = json.loads(blob)
    assert set(doc) == {"p", "n", "vertices", "edges", "cliques", "counts"}
    assert set(doc["vertices"][0]) == {"label", "iso", "period"}
    assert doc["counts"]["vertices"] == 28
    assert from_json(blob.decode()) == graph


def test_dot_output():
    graph = build_graph(2, 5, "modular")
    dot = export(graph, "dot").decode()
    assert dot.count("[label=") == 28
    assert dot.count(" -- ") == len(graph.edges)
    empty = NormalizingGraph(2, 4, list(full_catalog(2, 4)), set())
    text = to_dot(empty)
    assert " -- " not in text and text.count("[label=") == 16


def test_unknown_engine():
    with pytest.raises(ValueError):
        build_graph(2, 4, "guess")


def test_jobs_do_not_change_result():
    assert build_graph(2, 5, "general", jobs=4) == build_graph(2, 5, "general")

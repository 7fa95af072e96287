"""Acceptance suite: one pass/fail line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or under pytest, where
the lines are repeated in the terminal summary.
"""

from __future__ import annotations

import time

import numpy as np

from holgraph.catalog import catalog_index, expected_counts, full_catalog
from holgraph.gamma import (
    conjugate,
    is_antihomomorphism,
    orbit,
    orbit_size,
    regular_subgroup,
    stabilizer_size,
    validate,
)
from holgraph.modring import Modulus, is_prime, verify_arith_lemmas
from holgraph.normgraph import (
    build_graph,
    clique_families,
    is_clique,
    mutually_normalize_general,
    mutually_normalize_mod,
)
from holgraph.oracle import count_by_iso, enumerate_regular_subgroups, oracle_graph

RESULTS: dict[int, str] = {}

DESK = [(2, 4), (2, 5), (3, 2), (3, 3), (5, 2)]
SMALL = [(p, n) for p in range(2, 12) if is_prime(p) for n in range(2 if p > 2 else 3, 8) if p**n <= 128]


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_criterion_1_vertex_counts():
    rows, ok = [], True
    for p, n in DESK:
        t = time.perf_counter()
        formula = 3 * 2 ** (n - 2) + 4 if p == 2 else p ** (n - 1)
        cat = len(full_catalog(p, n))
        orc = len(enumerate_regular_subgroups(p, n))
        ok &= cat == orc == formula
        rows.append(f"({p},{n}) {cat}/{orc}/{formula} {time.perf_counter() - t:.2f}s")
    record(1, "vertex counts catalog/oracle/formula", ok, "; ".join(rows))


def test_criterion_2_counts_by_class():
    rows, ok = [], True
    for p, n in DESK:
        got = count_by_iso(p, n)
        if p == 2:
            q = 2 ** (n - 2)
            want = {"Cyclic": q, "DirectProduct": q, "Modular": q, "Semidihedral": 2, "Quaternion": 1, "Dihedral": 1}
        else:
            want = {"Cyclic": p ** (n - 1)}
        ok &= got == want == expected_counts(p, n).by_iso
        rows.append(f"({p},{n}) {dict(sorted(got.items()))}")
    record(2, "oracle counts per class", ok, "; ".join(rows))


def test_criterion_3_graph_equality():
    rows, ok = [], True
    for p, n in DESK + [(2, 3)]:
        truth = oracle_graph(p, n)
        engines = ("modular", "general") if (p, n) == (2, 3) else ("closed_form", "modular", "general")
        same = all(build_graph(p, n, e).edges == truth.edges for e in engines)
        same &= all(build_graph(p, n, e).labels == truth.labels for e in engines)
        ok &= same
        rows.append(f"({p},{n}) {len(truth.edges)} edges {'=' if same else '!='} {'/'.join(engines)}")
    record(3, "engine graphs equal oracle graph", ok, "; ".join(rows))


def _families(p, n):
    graph = build_graph(p, n, "modular")
    fams = clique_families(p, n)
    complete = all(is_clique(graph, f.members) for f in fams)
    by_kind = lambda k: [f for f in fams if f.kind == k]
    return complete, by_kind


def test_criterion_4_clique_families():
    rows, ok = [], True
    want = {
        (2, 5): (4, [4], 4),
        (2, 6): (8, [4, 4], 8),
        (3, 3): (3, [3, 3], 0),
    }
    for (p, n), (h, a_sizes, s_count) in want.items():
        complete, by_kind = _families(p, n)
        got_h = len(by_kind("H")[0].members)
        got_a = [len(f.members) for f in by_kind("A")]
        got_s = by_kind("S")
        good = complete and got_h == h and got_a == a_sizes and len(got_s) == s_count
        good &= all(len(f.members) == 4 for f in got_s)
        ok &= good
        rows.append(f"({p},{n}) |H|={got_h} A={got_a} S={len(got_s)} complete={complete}")
    record(4, "clique families", ok, "; ".join(rows))


def test_criterion_5_functional_equation():
    bad = [(e.label, p, n) for p, n in SMALL for e in full_catalog(p, n) if not validate(e.gamma)]
    trips = 0
    for p, n in [(2, 3)] + DESK:
        index = catalog_index(p, n)
        for s in enumerate_regular_subgroups(p, n):
            g = s.gamma()
            trips += 1
            if not validate(g) or regular_subgroup(g) != frozenset(s.holomorph_elements()) or g not in index:
                bad.append((s.gens, p, n))
    count = sum(len(full_catalog(p, n)) for p, n in SMALL)
    record(5, "functional equation", not bad, f"{count} catalog tables over {SMALL}, {trips} reconstructions, failures {bad[:3]}")


def test_criterion_6_conjugation_action():
    rng = np.random.default_rng(0)
    bad, reps = [], 0
    for p, n in SMALL:
        entries = full_catalog(p, n)
        index = catalog_index(p, n)
        iso = {e.label: e.iso for e in entries}
        units = Modulus(p, n).units()
        m = p**n
        pairs = [(a, b) for a in units for b in units] if m <= 32 else [
            tuple(rng.choice(units, 2)) for _ in range(16)
        ]
        for e in entries:
            reps += 1
            g = e.gamma
            for a, b in pairs:
                if conjugate(conjugate(g, a), b) != conjugate(g, int(a) * int(b) % m):
                    bad.append(("action", e.label, a, b))
            members = orbit(g)
            if orbit_size(g) * stabilizer_size(g) != len(units) or len(members) != orbit_size(g):
                bad.append(("orbit", e.label))
            if any(iso[index[x]] != e.iso for x in members):
                bad.append(("classify", e.label))
    record(6, "conjugation action", not bad, f"{reps} representatives over {SMALL}, failures {bad[:3]}")


def test_criterion_7_arithmetic_lemmas():
    t = time.perf_counter()
    cases = [(2, n) for n in range(4, 15)]
    cases += [(p, n) for p in (3, 5, 7) for n in range(1, 17) if p**n <= 2**16]
    failed = [(p, n, c.name) for p, n in cases for c in verify_arith_lemmas(Modulus(p, n)) if not c.passed]
    elapsed = time.perf_counter() - t
    ok = not failed and elapsed < 30
    record(7, "arithmetic lemmas", ok, f"{len(cases)} moduli in {elapsed:.1f}s, failures {failed[:3]}")


def test_criterion_8_biskew_consistency():
    bad, checked = [], 0
    for p, n in SMALL:
        entries = full_catalog(p, n)
        rho = entries[0].gamma
        assert rho.period == 1
        for e in entries:
            checked += 1
            anti = is_antihomomorphism(e.gamma)
            if mutually_normalize_general(rho, e.gamma) != anti or mutually_normalize_mod(rho, e.gamma) != anti:
                bad.append(e.label)
    record(8, "translation vertex edges = antihomomorphisms", not bad, f"{checked} tables, failures {bad[:3]}")


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failures = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)

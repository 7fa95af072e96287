"""Brute-force ground truth on Hol(Z/p^n).

Regular subgroups are found by closing singletons and pairs of holomorph
elements, with no reference to gamma functions. Holomorph elements are
encoded as ints ``i = unit_index * m + b`` for the map x -> units[i // m]*x + b,
and multiplied through a precomputed table.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .gamma import GammaFunction, HolomorphElement
from .group_id import IsoClass, classify_invariants
from .modring import Modulus

log = logging.getLogger(__name__)

HOL_LIMIT = 4096


class TooLarge(ValueError):
    pass


class Holomorph:
    """Hol(Z/p^n) as an indexed group with a full multiplication table."""

    def __init__(self, p: int, n: int):
        mod = Modulus(p, n)
        self.p, self.n, self.m = p, n, mod.m
        self.units = np.array(mod.units(), dtype=np.int64)
        self.order = len(self.units) * self.m
        if self.order > HOL_LIMIT:
            raise TooLarge(f"|Hol(C_{p}^{n})| = {self.order} exceeds {HOL_LIMIT}")
        m = self.m
        uidx = np.full(m, -1, dtype=np.int64)
        uidx[self.units] = np.arange(len(self.units))
        self._uidx = uidx
        i = np.arange(self.order, dtype=np.int64)
        self.aut = self.units[i // m]
        self.trans = i % m
        # (a1, b1)(a2, b2) = (a1 a2, a2 b1 + b2): left factor acts first
        a = self.aut[:, None] * self.aut[None, :] % m
        b = (self.aut[None, :] * self.trans[:, None] + self.trans[None, :]) % m
        self.mul = (uidx[a] * m + b).astype(np.int32)
        self.identity = self.encode(1, 0)
        self.inv = np.empty(self.order, dtype=np.int64)
        rows, cols = np.nonzero(self.mul == self.identity)
        self.inv[rows] = cols
        self.fixed_points = self._fixed_point_counts()

    def encode(self, a: int, b: int) -> int:
        return int(self._uidx[a % self.m]) * self.m + b % self.m

    def element(self, i: int) -> HolomorphElement:
        return HolomorphElement(int(self.aut[i]), int(self.trans[i]), self.m)

    def act(self, i: int, x):
        return (self.aut[i] * x + self.trans[i]) % self.m

    def _fixed_point_counts(self) -> np.ndarray:
        x = np.arange(self.m, dtype=np.int64)
        images = (self.aut[:, None] * x[None, :] + self.trans[:, None]) % self.m
        return (images == x[None, :]).sum(axis=1)

    def closure(self, gens, limit: int | None = None) -> frozenset[int] | None:
        """Subgroup generated by ``gens``; None once it outgrows ``limit`` or
        picks up a non-identity element with a fixed point."""
        mul, fp, ident = self.mul, self.fixed_points, self.identity
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                row = mul[x]
                for s in gens:
                    y = int(row[s])
                    if y not in seen:
                        if fp[y]:
                            return None
                        seen.add(y)
                        nxt.append(y)
            if limit is not None and len(seen) > limit:
                return None
            frontier = nxt
        return frozenset(seen)


@dataclass(frozen=True)
class PermSubgroup:
    hol: Holomorph = field(repr=False, compare=False, hash=False)
    elements: frozenset[int]
    gens: tuple[int, ...] = field(compare=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def canonical(self) -> tuple[tuple[int, int], ...]:
        h = self.hol
        return tuple(sorted((int(h.aut[i]), int(h.trans[i])) for i in self.elements))

    def holomorph_elements(self) -> list[HolomorphElement]:
        return [self.hol.element(i) for i in sorted(self.elements, key=lambda i: (self.hol.aut[i], self.hol.trans[i]))]

    def orbit_map(self) -> dict[int, int]:
        """Element -> image of 0."""
        return {i: int(self.hol.trans[i]) for i in self.elements}

    def is_transitive(self) -> bool:
        return {int(self.hol.act(i, 0)) for i in self.elements} == set(range(self.hol.m))

    def point_stabilizer(self) -> set[int]:
        return {i for i in self.elements if int(self.hol.act(i, 0)) == 0}

    def is_regular(self) -> bool:
        return self.is_transitive() and self.point_stabilizer() == {self.hol.identity}

    def is_closed(self) -> bool:
        h = self.hol
        el = np.fromiter(self.elements, dtype=np.int64)
        prods = h.mul[np.ix_(el, el)]
        return set(int(x) for x in np.unique(prods)) <= self.elements and all(
            int(h.inv[i]) in self.elements for i in el
        )

    def gamma(self) -> GammaFunction:
        """gamma(g) = aut part of the unique element sending 0 to g."""
        h = self.hol
        table = np.zeros(h.m, dtype=np.int64)
        for i in self.elements:
            table[h.trans[i]] = h.aut[i]
        return GammaFunction(Modulus(h.p, h.n), table)

    def element_orders(self) -> np.ndarray:
        h = self.hol
        out = []
        for i in self.elements:
            x, k = i, 1
            while x != h.identity:
                x = int(h.mul[x, i])
                k += 1
            out.append(k)
        return np.array(out, dtype=np.int64)

    def is_abelian(self) -> bool:
        el = np.fromiter(self.elements, dtype=np.int64)
        prods = self.hol.mul[np.ix_(el, el)]
        return bool(np.array_equal(prods, prods.T))

    def iso_class(self) -> IsoClass:
        return classify_invariants(self.hol.p, self.hol.n, self.element_orders(), self.is_abelian())

    def is_normal(self) -> bool:
        """Normal in Hol(G): conjugating by every holomorph element keeps the set."""
        h = self.hol
        el = np.fromiter(self.elements, dtype=np.int64)
        for g in range(h.order):
            conj = h.mul[h.mul[int(h.inv[g]), el], g]
            if not set(int(x) for x in conj) <= self.elements:
                return False
        return True


@lru_cache(maxsize=16)
def holomorph(p: int, n: int) -> Holomorph:
    return Holomorph(p, n)


def _semiregular_candidates(hol: Holomorph) -> list[int]:
    # an element of a regular subgroup generates a semiregular cyclic subgroup
    out = []
    for i in range(hol.order):
        if i == hol.identity:
            continue
        if hol.closure((i,), limit=hol.m) is not None:
            out.append(i)
    return out


@lru_cache(maxsize=16)
def enumerate_regular_subgroups(p: int, n: int, max_gens: int = 2) -> tuple[PermSubgroup, ...]:
    """Every regular subgroup of Hol(Z/p^n), sorted by canonical element list.

    Generating sets of size up to ``max_gens`` are closed; values above 2 are
    for cross-checking only.
    """
    hol = holomorph(p, n)
    m = hol.m
    cands = _semiregular_candidates(hol)
    log.info("Hol(C_%d^%d): %d elements, %d semiregular candidates", p, n, hol.order, len(cands))
    found: dict[frozenset[int], tuple[int, ...]] = {}
    member_of: dict[int, list[frozenset[int]]] = {}

    def covered(gens) -> bool:
        groups = member_of.get(gens[0], [])
        return any(all(g in grp for g in gens[1:]) for grp in groups)

    def record(elements, gens):
        if elements in found:
            return
        found[elements] = gens
        for x in elements:
            member_of.setdefault(x, []).append(elements)

    if m == 1:
        record(frozenset({hol.identity}), ())
    for size in range(1, max_gens + 1):
        for gens in combinations(cands, size):
            if size > 1 and covered(gens):
                continue
            elements = hol.closure(gens, limit=m)
            if elements is not None and len(elements) == m:
                record(elements, gens)
    subs = [PermSubgroup(hol, el, gens) for el, gens in found.items()]
    subs = [s for s in subs if s.is_regular()]
    return tuple(sorted(subs, key=PermSubgroup.canonical))


def mutually_normalize_perm(a: PermSubgroup, b: PermSubgroup) -> bool:
    """Conjugate generators of each subgroup by generators of the other."""
    h = a.hol
    mul, inv = h.mul, h.inv
    for x in a.gens:
        for y in b.gens:
            if int(mul[mul[inv[x], y], x]) not in b.elements:
                return False
            if int(mul[mul[inv[y], x], y]) not in a.elements:
                return False
    return True


def normalizes_elementwise(a: PermSubgroup, b: PermSubgroup) -> bool:
    """a normalizes b, checked over every pair of elements."""
    h = a.hol
    el_b = np.fromiter(b.elements, dtype=np.int64)
    for x in a.elements:
        conj = h.mul[h.mul[int(h.inv[x]), el_b], x]
        if not set(int(c) for c in conj) <= b.elements:
            return False
    return True


def count_by_iso(p: int, n: int) -> dict[str, int]:
    counts: dict[str, int] = {}
    for s in enumerate_regular_subgroups(p, n):
        key = str(s.iso_class())
        counts[key] = counts.get(key, 0) + 1
    return counts


def oracle_graph(p: int, n: int):
    """Normalizing graph computed in the holomorph, labelled through the catalog.

    Vertices are matched to catalog labels by their reconstructed gamma
    table; a subgroup with no catalog counterpart raises.
    """
    from .catalog import CatalogEntry, catalog_index
    from .normgraph import NormalizingGraph, edge_key

    index = catalog_index(p, n)
    subs = enumerate_regular_subgroups(p, n)
    labelled = []
    for s in subs:
        g = s.gamma()
        if g not in index:
            raise LookupError(f"regular subgroup {s.gens} has no catalog label: {g!r}")
        labelled.append((index[g], s, g))
    labelled.sort(key=lambda t: t[0].sort_key())
    verts = [CatalogEntry(lab, g, s.iso_class()) for lab, s, g in labelled]
    edges = set()
    for (la, sa, _), (lb, sb, _) in combinations(labelled, 2):
        if mutually_normalize_perm(sa, sb):
            edges.add(edge_key(la, lb))
    return NormalizingGraph(p, n, verts, edges, {e: "oracle" for e in edges})


def verification_report(p: int, n: int, engines=("closed_form", "modular", "general")) -> tuple[bool, str]:
    """Compare every engine's graph with the oracle graph; text report."""
    from .catalog import catalog_counts
    from .normgraph import build_graph, first_disagreement

    truth = oracle_graph(p, n)
    lines = [f"Hol(C_{p}^{n}): {len(truth.vertices)} regular subgroups, {len(truth.edges)} edges (oracle)"]
    ok = True
    counts = catalog_counts(p, n)
    same_vertices = counts.total == len(truth.vertices)
    ok &= same_vertices
    lines.append(f"catalog vertices: {counts.total} {'ok' if same_vertices else 'MISMATCH'}")
    for engine in engines:
        g = build_graph(p, n, engine)
        diff = first_disagreement(g, truth)
        if diff is None and g.labels == truth.labels:
            lines.append(f"{engine}: {len(g.edges)} edges, agrees")
        else:
            ok = False
            lines.append(f"{engine}: DISAGREES at {diff}")
    return ok, "\n".join(lines) + "\n"

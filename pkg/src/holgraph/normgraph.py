"""Mutual normalization of regular subgroups and the local normalizing graph.

Three independent deciders are kept side by side:

``general``
    the two holomorph conditions checked literally on gamma tables,
    delta(h) == delta(gamma(g) h + g - delta(h) g) and the symmetric one;
``modular``
    the same conditions reduced modulo the periods q, r of the two tables;
``closed_form``
    arithmetic on the labels alone (the family-by-family classification).
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .catalog import CatalogEntry, SubgroupLabel, canonical, full_catalog, labeled_gamma
from .gamma import GammaFunction, _pairs
from .group_id import classify

log = logging.getLogger(__name__)

ENGINES = ("closed_form", "modular", "general")
PROVENANCE = {"closed_form": "closed_form", "modular": "modular_criterion", "general": "general_criterion"}


def ceil_half(n: int) -> int:
    return (n + 1) // 2


# -- deciders on gamma tables --------------------------------------------


def _same_modulus(gamma: GammaFunction, delta: GammaFunction) -> None:
    if gamma.modulus != delta.modulus:
        raise ValueError(f"modulus mismatch: {gamma.modulus} vs {delta.modulus}")


def general_violation(gamma: GammaFunction, delta: GammaFunction) -> tuple[str, int, int] | None:
    """First (side, g, h) breaking mutual normalization, or None.

    ``side`` is "N>M" when N (from gamma) fails to normalize M (from delta),
    "M>N" for the converse.
    """
    _same_modulus(gamma, delta)
    t, d, m = gamma.table, delta.table, gamma.m
    for g, h in _pairs(m):
        # N normalizes M: delta(h) == delta(h - (g . h) + (h o g))
        bad = d[(t[g] * h + g - d[h] * g) % m] != d[h]
        if bad.any():
            i = int(np.argmax(bad))
            return "N>M", int(g[i]), int(h[i])
        bad = t[(d[g] * h + g - t[h] * g) % m] != t[h]
        if bad.any():
            i = int(np.argmax(bad))
            return "M>N", int(g[i]), int(h[i])
    return None


def mutually_normalize_general(gamma: GammaFunction, delta: GammaFunction) -> bool:
    return general_violation(gamma, delta) is None


def modular_violation(gamma: GammaFunction, delta: GammaFunction) -> tuple[str, int, int] | None:
    """First (congruence, x, y) breaking the period-reduced criterion, or None."""
    _same_modulus(gamma, delta)
    t, d, m = gamma.table, delta.table, gamma.m
    q, r = gamma.period, delta.period
    for x, y in _pairs(m):
        bad = (d[y] * x + y - t[x] * y - x) % m % q != 0
        if bad.any():
            i = int(np.argmax(bad))
            return f"mod {q}", int(x[i]), int(y[i])
        bad = (t[y] * x + y - d[x] * y - x) % m % r != 0
        if bad.any():
            i = int(np.argmax(bad))
            return f"mod {r}", int(x[i]), int(y[i])
    return None


def mutually_normalize_mod(gamma: GammaFunction, delta: GammaFunction) -> bool:
    return modular_violation(gamma, delta) is None


# -- closed form on labels -----------------------------------------------


class ClosedFormUnavailable(ValueError):
    pass


def _cyclic_index(label: SubgroupLabel) -> tuple[int, int] | None:
    """(u, unit) for labels in the cyclic family x -> sigma_{p^u * unit * x + 1}."""
    if label.family == "G1":
        return label.n, 1
    if label.family == "G2":
        return label.n - 1, 1
    if label.family == "C":
        return label.u, 2 * label.k + 1
    if label.family == "U":
        return label.u, label.k * label.p + label.c
    return None


def _cyclic_edge(p: int, n: int, a: tuple[int, int], b: tuple[int, int], ka, kb) -> bool:
    (u, _), (v, _) = a, b
    half = ceil_half(n)
    if u >= half and v >= half:
        return True
    if u != v:
        return False
    # same layer below n/2: indices agree modulo p^(n-2u-1), and c agrees for odd p
    modulus = p ** (n - 2 * u - 1)
    return (ka[0] - kb[0]) % modulus == 0 and ka[1] == kb[1]


def predicted_edge(a: SubgroupLabel, b: SubgroupLabel) -> bool:
    """Decide mutual normalization from the labels alone."""
    if (a.p, a.n) != (b.p, b.n):
        raise ValueError("labels belong to different groups")
    a, b = canonical(a), canonical(b)
    p, n = a.p, a.n
    if p == 2 and n < 4:
        raise ClosedFormUnavailable("closed-form rules need n >= 4 for p = 2")
    if a == b:
        return True
    ca, cb = _cyclic_index(a), _cyclic_index(b)
    if ca and cb:
        ka = (a.k or 0, a.c) if a.family in ("C", "U") else (0, None)
        kb = (b.k or 0, b.c) if b.family in ("C", "U") else (0, None)
        return _cyclic_edge(p, n, ca, cb, ka, kb)
    fams = {a.family, b.family}
    if fams <= {"G1", "G2", "G3", "G4"} or fams <= {"G3", "G4", "G5", "G6"}:
        return True
    if fams <= {"P", "M"}:
        step = 2 ** (n - 3)
        if a.family == b.family:
            return (a.k - b.k) % step == 0
        pk, mk = (a.k, b.k) if a.family == "P" else (b.k, a.k)
        return (pk - mk - 2 ** (n - 4)) % step == 0
    return False


# -- the graph -----------------------------------------------------------


@dataclass
class CliqueFamily:
    kind: str
    members: list[SubgroupLabel]
    params: tuple = ()

    @property
    def name(self) -> str:
        if not self.params:
            return self.kind
        return f"{self.kind}({','.join(map(str, self.params))})"


@dataclass
class NormalizingGraph:
    p: int
    n: int
    vertices: list[CatalogEntry]
    edges: set[tuple[SubgroupLabel, SubgroupLabel]]
    edge_provenance: dict[tuple[SubgroupLabel, SubgroupLabel], str] = field(default_factory=dict)

    @property
    def labels(self) -> list[SubgroupLabel]:
        return [v.label for v in self.vertices]

    def has_edge(self, a: SubgroupLabel, b: SubgroupLabel) -> bool:
        return edge_key(a, b) in self.edges

    def neighbours(self, a: SubgroupLabel) -> set[SubgroupLabel]:
        out = set()
        for x, y in self.edges:
            if x == a:
                out.add(y)
            elif y == a:
                out.add(x)
        return out

    def sorted_edges(self) -> list[tuple[SubgroupLabel, SubgroupLabel]]:
        return sorted(self.edges, key=lambda e: (e[0].sort_key(), e[1].sort_key()))

    def __eq__(self, other):
        if not isinstance(other, NormalizingGraph):
            return NotImplemented
        return (
            (self.p, self.n) == (other.p, other.n)
            and self.labels == other.labels
            and [str(v.iso) for v in self.vertices] == [str(v.iso) for v in other.vertices]
            and self.edges == other.edges
        )


def edge_key(a: SubgroupLabel, b: SubgroupLabel) -> tuple[SubgroupLabel, SubgroupLabel]:
    return (a, b) if a.sort_key() <= b.sort_key() else (b, a)


def decide(a: CatalogEntry, b: CatalogEntry, engine: str) -> bool:
    if engine == "closed_form":
        return predicted_edge(a.label, b.label)
    if engine == "modular":
        return mutually_normalize_mod(a.gamma, b.gamma)
    if engine == "general":
        return mutually_normalize_general(a.gamma, b.gamma)
    raise ValueError(f"unknown engine {engine!r}")


def build_graph(p: int, n: int, engine: str = "modular", jobs: int = 1) -> NormalizingGraph:
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {ENGINES}")
    if engine == "closed_form" and p == 2 and n < 4:
        log.warning("closed-form rules need n >= 4 for p = 2; using the modular criterion")
        engine = "modular"
    verts = list(full_catalog(p, n))
    pairs = list(combinations(verts, 2))
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            verdicts = list(pool.map(lambda ab: decide(*ab, engine), pairs))
    else:
        verdicts = [decide(a, b, engine) for a, b in pairs]
    edges = {edge_key(a.label, b.label) for (a, b), ok in zip(pairs, verdicts) if ok}
    prov = {e: PROVENANCE[engine] for e in edges}
    return NormalizingGraph(p, n, verts, edges, prov)


def first_disagreement(g1: NormalizingGraph, g2: NormalizingGraph):
    """First edge present in exactly one graph, with a witness pair when possible."""
    diff = sorted(g1.edges ^ g2.edges, key=lambda e: (e[0].sort_key(), e[1].sort_key()))
    if not diff:
        return None
    a, b = diff[0]
    witness = general_violation(labeled_gamma(a), labeled_gamma(b))
    return a, b, (a, b) in g1.edges, witness


# -- clique families -----------------------------------------------------


def clique_families(p: int, n: int) -> list[CliqueFamily]:
    half = ceil_half(n)
    L = lambda *args: SubgroupLabel(p, n, *args)
    fams: list[CliqueFamily] = []
    if p == 2:
        fams.append(CliqueFamily("Normals4", [L(f) for f in ("G1", "G2", "G3", "G4")]))
        if n >= 4:
            fams.append(CliqueFamily("SD4", [L(f) for f in ("G3", "G4", "G5", "G6")]))
        else:
            # at n = 3 the semidihedral pair collapses onto P(0), P(1)
            fams.append(CliqueFamily("SD4", [L("G3"), L("G4"), L("P", None, 0), L("P", None, 1)]))
        h = [L("G1"), L("G2")]
        for u in range(n - 2, max(half, 2) - 1, -1):
            h += [L("C", u, k) for k in range(2 ** (n - u - 1))]
        fams.append(CliqueFamily("H", h))
        for u in range(2, half):
            step = 2 ** (n - 2 * u - 1)
            for t in range(step):
                members = [L("C", u, k) for k in range(t, 2 ** (n - u - 1), step)]
                fams.append(CliqueFamily("A", members, (u, t)))
        if n >= 4:
            q, half_step = 2 ** (n - 2), 2 ** (n - 4)
            for k in range(2 ** (n - 3)):
                ks = [k, k + half_step, k + 2 ** (n - 3), k + 2 ** (n - 3) + half_step]
                members = [L("P", None, ks[0] % q), L("M", None, ks[1] % q), L("P", None, ks[2] % q), L("M", None, ks[3] % q)]
                fams.append(CliqueFamily("S", members, (k,)))
    else:
        h = [L("U", n, 0, 1)]
        for u in range(n - 1, half - 1, -1):
            h += [L("U", u, k, c) for c in range(1, p) for k in range(p ** (n - u - 1))]
        fams.append(CliqueFamily("H", h))
        for u in range(1, half):
            step = p ** (n - 2 * u - 1)
            for c in range(1, p):
                for t in range(step):
                    members = [L("U", u, k, c) for k in range(t, p ** (n - u - 1), step)]
                    fams.append(CliqueFamily("A", members, (u, t, c)))
    return fams


def h_size_formula(p: int, n: int) -> int:
    return p ** (n - ceil_half(n))


def a_family_count_formula(p: int, n: int) -> Fraction:
    """Closed-form number of A families (p = 2 counts only u >= 2)."""
    half = ceil_half(n)
    if p == 2:
        return Fraction(2 ** (n - 3) - Fraction(2) ** (n - 2 * half + 1), 3)
    return Fraction(p ** (n - 1) - Fraction(p) ** (n - 2 * half + 1), p + 1)


def a_family_count_direct(p: int, n: int) -> int:
    half = ceil_half(n)
    if p == 2:
        return sum(2 ** (n - 2 * u - 1) for u in range(2, half))
    return sum(p ** (n - 2 * u - 1) * (p - 1) for u in range(1, half))


def is_clique(graph: NormalizingGraph, members) -> bool:
    return all(graph.has_edge(a, b) for a, b in combinations(members, 2))


# -- export --------------------------------------------------------------

_COLORS = ("black", "red", "blue", "darkgreen", "orange", "purple", "brown", "teal", "magenta", "gray")


def graph_cliques(graph: NormalizingGraph) -> list[CliqueFamily]:
    present = set(graph.labels)
    return [
        f
        for f in clique_families(graph.p, graph.n)
        if len(f.members) > 1 and set(f.members) <= present and is_clique(graph, f.members)
    ]


def graph_counts(graph: NormalizingGraph) -> dict:
    by_iso: dict[str, int] = {}
    for v in graph.vertices:
        by_iso[str(v.iso)] = by_iso.get(str(v.iso), 0) + 1
    kinds: dict[str, int] = {}
    for f in graph_cliques(graph):
        kinds[f.kind] = kinds.get(f.kind, 0) + 1
    return {"vertices": len(graph.vertices), "edges": len(graph.edges), "by_iso": by_iso, "cliques": kinds}


def to_json(graph: NormalizingGraph) -> str:
    doc = {
        "p": graph.p,
        "n": graph.n,
        "vertices": [{"label": str(v.label), "iso": str(v.iso), "period": v.gamma.period} for v in graph.vertices],
        "edges": [[str(a), str(b)] for a, b in graph.sorted_edges()],
        "cliques": [{"kind": f.name, "members": [str(x) for x in f.members]} for f in graph_cliques(graph)],
        "counts": graph_counts(graph),
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def from_json(text: str) -> NormalizingGraph:
    doc = json.loads(text)
    p, n = doc["p"], doc["n"]
    verts = []
    for v in doc["vertices"]:
        label = SubgroupLabel.parse(p, n, v["label"])
        g = labeled_gamma(label)
        iso = classify(g)
        if str(iso) != v["iso"] or g.period != v["period"]:
            raise ValueError(f"vertex {v['label']} does not match its table")
        verts.append(CatalogEntry(label, g, iso))
    edges = {edge_key(SubgroupLabel.parse(p, n, a), SubgroupLabel.parse(p, n, b)) for a, b in doc["edges"]}
    return NormalizingGraph(p, n, verts, edges)


def to_dot(graph: NormalizingGraph) -> str:
    lines = [f'graph "Hol(C_{graph.p}^{graph.n})" {{', "  node [shape=circle];"]
    fams = graph_cliques(graph)
    node_color: dict[SubgroupLabel, str] = {}
    edge_color: dict[tuple, str] = {}
    for i, f in enumerate(fams):
        color = _COLORS[i % len(_COLORS)]
        lines.append(f"  // clique {f.name}: {' '.join(str(x) for x in f.members)} [{color}]")
        for x in f.members:
            node_color.setdefault(x, color)
        for a, b in combinations(f.members, 2):
            edge_color.setdefault(edge_key(a, b), color)
    for v in graph.vertices:
        attrs = f'label="{v.label}", iso="{v.iso}"'
        if v.label in node_color:
            attrs += f", color={node_color[v.label]}"
        lines.append(f'  "{v.label}" [{attrs}];')
    for a, b in graph.sorted_edges():
        color = edge_color.get((a, b))
        suffix = f" [color={color}]" if color else ""
        lines.append(f'  "{a}" -- "{b}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export(graph: NormalizingGraph, fmt: str = "dot") -> bytes:
    if fmt == "dot":
        return to_dot(graph).encode()
    if fmt == "json":
        return to_json(graph).encode()
    raise ValueError(f"unknown format {fmt!r}")

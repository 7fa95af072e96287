"""The normalizing graph of Z/32, three ways, and its clique families."""

from pathlib import Path

from holgraph.normgraph import build_graph, clique_families, export, is_clique

graphs = {e: build_graph(2, 5, e) for e in ("closed_form", "modular", "general")}
for name, g in graphs.items():
    print(f"{name:12s} {len(g.vertices)} vertices {len(g.edges)} edges")
assert graphs["closed_form"] == graphs["modular"] == graphs["general"]

g = graphs["modular"]
for fam in clique_families(2, 5):
    members = " ".join(str(x) for x in fam.members)
    print(f"{fam.name:10s} complete={is_clique(g, fam.members)}  {members}")

# the neighbourhood of one P vertex
v = g.labels[6]
print(v, "->", sorted(str(x) for x in g.neighbours(v)))

out = Path("c32.dot")
out.write_bytes(export(g, "dot"))
print("wrote", out, "(render with: dot -Tsvg c32.dot)")

"""Brute force in Hol(Z/16): find every regular subgroup without gamma tables."""

from collections import Counter

from holgraph.catalog import catalog_index
from holgraph.oracle import enumerate_regular_subgroups, holomorph, oracle_graph, verification_report

hol = holomorph(2, 4)
print("|Hol(Z/16)| =", hol.order)

subs = enumerate_regular_subgroups(2, 4)
print(len(subs), "regular subgroups")
print(Counter(str(s.iso_class()) for s in subs))

# each subgroup hands back a gamma table; all of them are catalog entries
index = catalog_index(2, 4)
for s in subs[:5]:
    g = s.gamma()
    print(index[g], "normal" if s.is_normal() else "", g.table[:8])

truth = oracle_graph(2, 4)
print(len(truth.edges), "edges in the holomorph")

ok, report = verification_report(2, 4)
print(report)

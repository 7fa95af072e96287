"""Gamma tables on Z/16: build one, check it, look at its circle group."""

import numpy as np

from holgraph.catalog import SubgroupLabel, base_gamma, labeled_gamma
from holgraph.gamma import circle, circle_orders, conjugate, orbit, stabilizer, validate
from holgraph.group_id import classify, generators_witness

# the semidihedral table: defined mod 4, values 1, 7, 9, 15
g5 = labeled_gamma(SubgroupLabel(2, 4, "G5"))
print(g5.table[:8], "period", g5.period)
print("functional equation holds:", validate(g5))

# the circle product replaces + on Z/16
print("3 o 5 =", circle(g5, 3, 5), " 5 o 3 =", circle(g5, 5, 3))

orders = circle_orders(g5)
print("circle orders:", dict(zip(*np.unique(orders, return_counts=True))))
print("class:", classify(g5), " generated by", generators_witness(g5))

# the P family: one base table and its conjugates under Aut(Z/16)
p0 = base_gamma(SubgroupLabel(2, 4, "P", None, 0))
print("P(0) stabilizer:", stabilizer(p0), " orbit size:", len(orbit(p0)))
for k in range(4):
    lab = SubgroupLabel(2, 4, "P", None, k)
    same = labeled_gamma(lab) == conjugate(p0, pow(2 * k + 1, -1, 16))
    print(lab, labeled_gamma(lab).table[:4], same)

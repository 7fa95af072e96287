"""Isomorphism type of the circle group (G, o).

Every circle group arising here has order p^n and a cyclic maximal subgroup,
so it falls in one of the Zassenhaus classes. Those are told apart by cheap
invariants: commutativity, the existence of an element of order p^n, and
for nonabelian 2-groups the number of involutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
import numpy as np

from .gamma import GammaFunction, circle_closure, circle_orders, is_circle_abelian


class IsoTag(str, Enum):
    CYCLIC = "Cyclic"
    DIRECT_PRODUCT = "DirectProduct"
    QUATERNION = "Quaternion"
    DIHEDRAL = "Dihedral"
    SEMIDIHEDRAL = "Semidihedral"
    MODULAR = "Modular"
    ODD_SEMIDIRECT = "OddSemidirect"

    def __str__(self):
        return self.value


_MIN_N = {
    IsoTag.QUATERNION: 3,
    IsoTag.DIHEDRAL: 3,
    IsoTag.SEMIDIHEDRAL: 4,
    IsoTag.MODULAR: 4,
    IsoTag.ODD_SEMIDIRECT: 3,
}


class Unclassifiable(Exception):
    """The circle group matched none of the Zassenhaus classes."""


@dataclass(frozen=True)
class IsoClass:
    tag: IsoTag
    p: int
    n: int

    def __post_init__(self):
        if self.n < _MIN_N.get(self.tag, 1):
            raise ValueError(f"{self.tag} needs n >= {_MIN_N[self.tag]}, got {self.n}")
        if self.tag is IsoTag.ODD_SEMIDIRECT and self.p == 2:
            raise ValueError("OddSemidirect only exists for odd p")
        if self.tag in (IsoTag.QUATERNION, IsoTag.DIHEDRAL, IsoTag.SEMIDIHEDRAL, IsoTag.MODULAR) and self.p != 2:
            raise ValueError(f"{self.tag} only exists for p = 2")

    @property
    def order(self) -> int:
        return self.p**self.n

    @property
    def abelian(self) -> bool:
        return self.tag in (IsoTag.CYCLIC, IsoTag.DIRECT_PRODUCT)

    def __str__(self):
        return str(self.tag)


def involution_counts(n: int) -> dict[IsoTag, int]:
    """Number of elements of order 2 in each nonabelian class of order 2^n."""
    counts = {IsoTag.QUATERNION: 1, IsoTag.DIHEDRAL: 2 ** (n - 1) + 1}
    if n >= 4:
        counts[IsoTag.MODULAR] = 3
        counts[IsoTag.SEMIDIHEDRAL] = 2 ** (n - 2) + 1
    return counts


def classify_invariants(p: int, n: int, orders: np.ndarray, abelian: bool) -> IsoClass:
    """Decide the class from the element orders and commutativity of a group of order p^n."""
    m = p**n
    if len(orders) != m:
        raise Unclassifiable(f"group has order {len(orders)}, expected {m}")
    if np.any(orders == m):
        if not abelian:
            raise Unclassifiable("element of full order in a nonabelian group")
        return IsoClass(IsoTag.CYCLIC, p, n)
    if n >= 2 and not np.any(orders == m // p):
        raise Unclassifiable(f"no element of order {m // p}: no cyclic maximal subgroup")
    if abelian:
        return IsoClass(IsoTag.DIRECT_PRODUCT, p, n)
    if p != 2:
        return IsoClass(IsoTag.ODD_SEMIDIRECT, p, n)
    inv = int(np.count_nonzero(orders == 2))
    for tag, count in involution_counts(n).items():
        if inv == count:
            return IsoClass(tag, p, n)
    raise Unclassifiable(f"nonabelian group of order {m} with {inv} involutions")


def classify(gamma: GammaFunction) -> IsoClass:
    mod = gamma.modulus
    return classify_invariants(mod.p, mod.n, circle_orders(gamma), is_circle_abelian(gamma))


def generators_witness(gamma: GammaFunction) -> tuple[int, ...]:
    """A small generating set of (G, o), sorted.

    One element when the circle group is cyclic. Otherwise r, the least
    residue generating a cyclic maximal subgroup, together with the least s
    of smallest circle order such that r and s generate everything (the
    shape of the usual two-generator presentations).
    """
    m, p = gamma.m, gamma.modulus.p
    orders = circle_orders(gamma)
    full = np.nonzero(orders == m)[0]
    if len(full):
        return (int(full[0]),)
    maximal = np.nonzero(orders == m // p)[0]
    if not len(maximal):
        raise Unclassifiable("no cyclic maximal subgroup")
    r = int(maximal[0])
    inside = circle_closure(gamma, (r,))
    for s in sorted(range(1, m), key=lambda x: (int(orders[x]), x)):
        if s not in inside and len(circle_closure(gamma, (r, s))) == m:
            return tuple(sorted((r, s)))
    raise Unclassifiable("circle group needs more than two generators")

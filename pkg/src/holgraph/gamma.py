"""Gamma functions on the cyclic group Z/p^n.

A gamma function is stored as a table of units, one per residue. The
associated regular subgroup of the holomorph consists of the affine maps
``x -> gamma(g)*x + g``; its group law transported to Z/p^n is the circle
product ``g o h = gamma(h)*g + h``.

Holomorph elements compose left factor first, matching right-action exponent
notation: ``(a1, b1)(a2, b2) = (a1*a2, a2*b1 + b2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .modring import Modulus, Residue, UnitAut

EXHAUSTIVE_LIMIT = 4096
SAMPLE_PAIRS = 10_000
SKEW_BRACE_EXHAUSTIVE_LIMIT = 128
_CHUNK = 1 << 20


class GammaFunction:
    """A total map Z/m -> Aut(Z/m), immutable."""

    __slots__ = ("modulus", "table", "period", "_key")

    def __init__(self, modulus: Modulus, table: Iterable[int]):
        m = modulus.m
        t = np.asarray(list(table) if not isinstance(table, np.ndarray) else table, dtype=np.int64) % m
        if t.shape != (m,):
            raise ValueError(f"table must have length {m}, got {t.shape}")
        if np.any(t % modulus.p == 0):
            raise ValueError("table entries must be units")
        t.setflags(write=False)
        self.modulus = modulus
        self.table = t
        self.period = _minimal_period(t, modulus)
        self._key = t.tobytes()

    @classmethod
    def from_callable(cls, modulus: Modulus, f: Callable[[int], int]) -> GammaFunction:
        return cls(modulus, [f(x) for x in range(modulus.m)])

    @classmethod
    def trivial(cls, modulus: Modulus) -> GammaFunction:
        return cls(modulus, np.ones(modulus.m, dtype=np.int64))

    @property
    def m(self) -> int:
        return self.modulus.m

    def __call__(self, x: Residue | int) -> UnitAut:
        return UnitAut(int(self.table[int(x) % self.m]), self.modulus)

    def __eq__(self, other):
        if not isinstance(other, GammaFunction):
            return NotImplemented
        return self.modulus == other.modulus and self._key == other._key

    def __hash__(self):
        return hash((self.modulus.p, self.modulus.n, self._key))

    def __repr__(self):
        head = ", ".join(str(int(a)) for a in self.table[: min(self.period, 8)])
        more = ", ..." if self.period > 8 else ""
        return f"GammaFunction({self.modulus}, period={self.period}, [{head}{more}])"

    def image(self) -> set[int]:
        return set(int(a) for a in np.unique(self.table))


def _minimal_period(t: np.ndarray, mod: Modulus) -> int:
    q = 1
    while q < mod.m:
        if np.array_equal(t, np.tile(t[:q], mod.m // q)):
            return q
        q *= mod.p
    return mod.m


# -- the functional equation ---------------------------------------------


def _gfe_holds(gamma: GammaFunction, g: np.ndarray, h: np.ndarray) -> bool:
    t, m = gamma.table, gamma.m
    lhs = t[(t[h] * g + h) % m]
    rhs = t[g] * t[h] % m
    return bool(np.array_equal(lhs, rhs))


def _pairs(m: int):
    """Yield (g, h) index arrays covering all of G x G in bounded chunks."""
    rows = max(1, _CHUNK // m)
    g = np.arange(m, dtype=np.int64)
    for start in range(0, m, rows):
        h = np.arange(start, min(m, start + rows), dtype=np.int64)
        yield np.tile(g, len(h)), np.repeat(h, m)


def first_gfe_violation(gamma: GammaFunction) -> tuple[int, int] | None:
    """Return some (g, h) breaking the functional equation, or None (exhaustive)."""
    t, m = gamma.table, gamma.m
    for g, h in _pairs(m):
        bad = t[(t[h] * g + h) % m] != t[g] * t[h] % m
        if bad.any():
            i = int(np.argmax(bad))
            return int(g[i]), int(h[i])
    return None


def validate(gamma: GammaFunction, *, rng: np.random.Generator | None = None) -> bool:
    """Check gamma(gamma(h)*g + h) == gamma(g)*gamma(h) for all g, h.

    Exhaustive up to ``EXHAUSTIVE_LIMIT`` residues, otherwise on
    ``SAMPLE_PAIRS`` random pairs.
    """
    m = gamma.m
    if m <= EXHAUSTIVE_LIMIT:
        return first_gfe_violation(gamma) is None
    rng = rng or np.random.default_rng(0)
    g = rng.integers(0, m, SAMPLE_PAIRS)
    h = rng.integers(0, m, SAMPLE_PAIRS)
    return int(gamma.table[0]) == 1 and _gfe_holds(gamma, g, h)


# -- circle group --------------------------------------------------------


def circle(gamma: GammaFunction, g: Residue | int, h: Residue | int) -> int:
    g, h = int(g), int(h)
    return (int(gamma.table[h]) * g + h) % gamma.m


def circle_power(gamma: GammaFunction, g: int, t: int) -> int:
    x = 0
    for _ in range(t):
        x = circle(gamma, x, g)
    return x


def circle_order(gamma: GammaFunction, g: Residue | int) -> int:
    g = int(g)
    x, t = g, 1
    while x:
        x = circle(gamma, x, g)
        t += 1
    return t


def circle_orders(gamma: GammaFunction) -> np.ndarray:
    """Circle orders of every element at once."""
    t, m = gamma.table, gamma.m
    g = np.arange(m, dtype=np.int64)
    x = g.copy()
    order = np.zeros(m, dtype=np.int64)
    order[0] = 1
    k = 1
    while not order.all():
        x = (t[g] * x + g) % m
        k += 1
        done = (x == 0) & (order == 0)
        order[done] = k
        if k > m:
            raise ValueError("circle operation is not a group law")
    return order


def circle_inverse(gamma: GammaFunction, g: int) -> int:
    # g o y = 0  <=>  gamma(y) g = -y; search is fine at desk scale
    m = gamma.m
    y = np.arange(m, dtype=np.int64)
    hits = np.nonzero((gamma.table * g + y) % m == 0)[0]
    return int(hits[0])


def is_circle_abelian(gamma: GammaFunction) -> bool:
    t, m = gamma.table, gamma.m
    for g, h in _pairs(m):
        if np.any((t[h] * g + h) % m != (t[g] * h + g) % m):
            return False
    return True


def circle_closure(gamma: GammaFunction, gens: Iterable[int]) -> set[int]:
    """Subgroup of (G, o) generated by ``gens``."""
    gens = [int(x) % gamma.m for x in gens]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = circle(gamma, x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


# -- automorphism action -------------------------------------------------


def conjugate(gamma: GammaFunction, alpha: UnitAut | int) -> GammaFunction:
    """Gamma function of the conjugate subgroup N^alpha: x -> gamma(alpha^-1 x)."""
    a = alpha.a if isinstance(alpha, UnitAut) else int(alpha)
    m = gamma.m
    ainv = pow(a, -1, m)
    idx = np.arange(m, dtype=np.int64) * ainv % m
    return GammaFunction(gamma.modulus, gamma.table[idx])


def inversion_conjugate(gamma: GammaFunction) -> GammaFunction:
    """Gamma function of N^inv; G is abelian so the inner part drops out."""
    m = gamma.m
    idx = (-np.arange(m, dtype=np.int64)) % m
    return GammaFunction(gamma.modulus, gamma.table[idx])


def stabilizer(gamma: GammaFunction) -> list[int]:
    """Units w with gamma(w*x) == gamma(x) for all x."""
    t, m = gamma.table, gamma.m
    x = np.arange(m, dtype=np.int64)
    return [w for w in gamma.modulus.units() if np.array_equal(t[w * x % m], t)]


def stabilizer_size(gamma: GammaFunction) -> int:
    return len(stabilizer(gamma))


def orbit(gamma: GammaFunction) -> list[GammaFunction]:
    """Distinct conjugates of ``gamma`` under Aut(G), in order of first appearance."""
    seen: dict[GammaFunction, None] = {}
    for a in gamma.modulus.units():
        seen.setdefault(conjugate(gamma, a), None)
    return list(seen)


def orbit_size(gamma: GammaFunction) -> int:
    return gamma.modulus.phi // stabilizer_size(gamma)


# -- predicates ----------------------------------------------------------


def is_antihomomorphism(gamma: GammaFunction) -> bool:
    """gamma(x + y) == gamma(y) gamma(x) for all x, y.

    Equivalent to the subgroup being normalized by the right regular
    representation (bi-skew brace).
    """
    t, m = gamma.table, gamma.m
    for x, y in _pairs(m):
        if np.any(t[(x + y) % m] != t[x] * t[y] % m):
            return False
    return True


def is_aut_equivariant(gamma: GammaFunction) -> bool:
    """gamma(a*x) == gamma(x) for every unit a; with Aut(G) abelian this
    says the subgroup is normal in Hol(G)."""
    return stabilizer_size(gamma) == gamma.modulus.phi


def verify_skew_brace(gamma: GammaFunction, *, rng: np.random.Generator | None = None) -> bool:
    """Check (x + y) o z == (x o z) - z + (y o z).

    Exhaustive over all triples up to ``SKEW_BRACE_EXHAUSTIVE_LIMIT``
    residues, otherwise over random triples.
    """
    t, m = gamma.table, gamma.m
    if m <= SKEW_BRACE_EXHAUSTIVE_LIMIT:
        x, y, z = (a.ravel() for a in np.meshgrid(*(np.arange(m, dtype=np.int64),) * 3, indexing="ij"))
    else:
        rng = rng or np.random.default_rng(0)
        x, y, z = rng.integers(0, m, (3, SAMPLE_PAIRS))
    lhs = (t[z] * ((x + y) % m) + z) % m
    rhs = ((t[z] * x + z) - z + (t[z] * y + z)) % m
    return bool(np.array_equal(lhs, rhs))


def two_of_three(gamma: GammaFunction) -> tuple[bool, bool, bool]:
    """The three conditions of the homomorphism/kernel criterion.

    Returns (gamma kills [G, gamma(G)], gamma is a homomorphism, GFE holds).
    For abelian G the commutator set is {(a - 1)x : x in G, a in gamma(G)}.
    Any two of these imply the third.
    """
    t, m = gamma.table, gamma.m
    x = np.arange(m, dtype=np.int64)
    kills = all(np.all(t[(int(a) - 1) * x % m] == 1) for a in np.unique(t))
    return kills, is_antihomomorphism(gamma), first_gfe_violation(gamma) is None


# -- the regular subgroup ------------------------------------------------


@dataclass(frozen=True, order=True)
class HolomorphElement:
    """The affine map x -> aut*x + trans."""

    aut: int
    trans: int
    m: int

    def __mul__(self, other: HolomorphElement) -> HolomorphElement:
        # left factor acts first
        m = self.m
        return HolomorphElement(self.aut * other.aut % m, (other.aut * self.trans + other.trans) % m, m)

    def inverse(self) -> HolomorphElement:
        ainv = pow(self.aut, -1, self.m)
        return HolomorphElement(ainv, -ainv * self.trans % self.m, self.m)

    def act(self, x: int) -> int:
        return (self.aut * x + self.trans) % self.m

    def __str__(self):
        return f"(sigma_{self.aut}, {self.trans})"


def nu(gamma: GammaFunction, g: Residue | int) -> HolomorphElement:
    g = int(g) % gamma.m
    return HolomorphElement(int(gamma.table[g]), g, gamma.m)


def regular_subgroup(gamma: GammaFunction) -> frozenset[HolomorphElement]:
    return frozenset(nu(gamma, g) for g in range(gamma.m))

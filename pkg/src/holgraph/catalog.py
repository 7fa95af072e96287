"""Explicit gamma-function families and their conjugation orbits.

For p = 2 the named families are

    G1..G4   the four gamma functions with image of size <= 2 (all normal)
    G5, G6   the semidihedral pair, defined modulo 4
    P(k)     x -> sigma_{2(2k+1)x+1}              (C2 x C_{2^(n-1)})
    M(k)     P(k) twisted by 2^(n-2) on odd x     (modular group)
    C(u,k)   x -> sigma_{2^u (2k+1) x + 1}        (cyclic, 2 <= u <= n)

and for odd p the single family U(u,k,c): x -> sigma_{p^u (kp+c) x + 1}.
The index k (and c) names the conjugate under sigma_{2k+1}^-1, resp.
sigma_{kp+c}^-1, so a labelled table is ``base((2k+1) x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gamma import GammaFunction, conjugate, orbit_size, validate
from .group_id import IsoClass, IsoTag, classify
from .modring import Modulus

TWO_FAMILIES = ("G1", "G2", "G3", "G4", "G5", "G6", "P", "M", "C")
ODD_FAMILIES = ("U",)
_FAMILY_RANK = {f: i for i, f in enumerate(TWO_FAMILIES + ODD_FAMILIES)}
_NEEDS_N4 = ("G5", "G6", "M")


class UnsupportedFamily(ValueError):
    pass


@dataclass(frozen=True)
class SubgroupLabel:
    p: int
    n: int
    family: str
    u: int | None = None
    k: int | None = None
    c: int | None = None

    def __str__(self):
        f = lambda v: "-" if v is None else str(v)
        return f"{self.family}[{f(self.u)},{f(self.k)},{f(self.c)}]"

    def sort_key(self):
        # large u first inside C/U: the normal end of the family leads
        u = -(self.u or 0)
        return (_FAMILY_RANK[self.family], u, self.c or 0, self.k or 0)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    @classmethod
    def parse(cls, p: int, n: int, text: str) -> SubgroupLabel:
        family, rest = text.split("[", 1)
        vals = [None if v == "-" else int(v) for v in rest.rstrip("]").split(",")]
        return cls(p, n, family, *vals)


def label_period(label: SubgroupLabel) -> int:
    """Number of distinct k values in the label's orbit (per c for odd p)."""
    p, n, fam, u = label.p, label.n, label.family, label.u
    if fam in ("P", "M"):
        return 2 ** (n - 2)
    if fam == "C":
        return 2 ** (n - u - 1) if u < n else 1
    if fam == "U":
        return p ** (n - u - 1) if u < n else 1
    return 1


def _check_shape(label: SubgroupLabel) -> None:
    p, n, fam = label.p, label.n, label.family
    if p == 2:
        if fam not in TWO_FAMILIES:
            raise UnsupportedFamily(f"family {fam} is not defined for p = 2")
        if n < 3:
            raise UnsupportedFamily("p = 2 catalog needs n >= 3")
        if fam in _NEEDS_N4 and n < 4:
            raise UnsupportedFamily(f"family {fam} needs n >= 4")
        if fam == "C" and not (label.u is not None and 2 <= label.u <= n):
            raise UnsupportedFamily(f"C family needs 2 <= u <= {n}")
        if fam in ("P", "M", "C") and label.k is None:
            raise UnsupportedFamily(f"family {fam} needs k")
    else:
        if fam not in ODD_FAMILIES:
            raise UnsupportedFamily(f"family {fam} is not defined for odd p")
        if label.u is None or not 1 <= label.u <= n or label.k is None or label.c is None:
            raise UnsupportedFamily(f"U family needs 1 <= u <= {n}, k and c")


def is_canonical(label: SubgroupLabel) -> bool:
    _check_shape(label)
    if label.family.startswith("G"):
        return label.u is None and label.k is None and label.c is None
    if label.p == 2 and label.c is not None:
        return False
    if label.family == "C" and label.u is None:
        return False
    if label.family in ("P", "M") and label.u is not None:
        return False
    ok_k = 0 <= label.k < label_period(label)
    if label.family == "U":
        ok_c = 1 <= label.c < label.p and (label.u < label.n or label.c == 1)
        return ok_k and ok_c
    return ok_k


def canonical(label: SubgroupLabel) -> SubgroupLabel:
    """Reduce k (and c) into the orbit's index range."""
    _check_shape(label)
    if label.family.startswith("G"):
        return SubgroupLabel(label.p, label.n, label.family)
    if label.family == "U":
        p, n, u = label.p, label.n, label.u
        if u == n:
            return SubgroupLabel(p, n, "U", n, 0, 1)
        unit = (label.k * p + label.c) % p ** (n - u)
        if unit % p == 0:
            raise UnsupportedFamily("kp + c must be a unit")
        return SubgroupLabel(p, n, "U", u, unit // p, unit % p)
    u = label.u if label.family == "C" else None
    return SubgroupLabel(label.p, label.n, label.family, u, label.k % label_period(label))


def vertex_label(label: SubgroupLabel) -> SubgroupLabel:
    """Canonical label under which a table appears in the vertex set.

    C(n, .) is the trivial gamma function G1 and C(n-1, .) is G2.
    """
    label = canonical(label)
    if label.family == "C" and label.u == label.n:
        return SubgroupLabel(label.p, label.n, "G1")
    if label.family == "C" and label.u == label.n - 1:
        return SubgroupLabel(label.p, label.n, "G2")
    return label


def _base_table(p: int, n: int, family: str, u: int | None) -> np.ndarray:
    m = p**n
    x = np.arange(m, dtype=np.int64)
    h = 2 ** (n - 1) if p == 2 else 0

    def power_of(a):
        # a is an involution, so a^x only depends on x mod 2
        return np.where(x % 2 == 0, 1, a % m)

    if family == "G1":
        return np.ones(m, dtype=np.int64)
    if family == "G2":
        return power_of(h + 1)
    if family == "G3":
        return power_of(h - 1)
    if family == "G4":
        return power_of(m - 1)
    if family == "G5":
        return np.array([1, h - 1, h + 1, m - 1], dtype=np.int64)[x % 4]
    if family == "G6":
        return np.array([1, m - 1, h + 1, h - 1], dtype=np.int64)[x % 4]
    if family == "P":
        return (2 * x + 1) % m
    if family == "M":
        return (2 * x + 1 + np.where(x % 2 == 1, 2 ** (n - 2), 0)) % m
    if family in ("C", "U"):
        return (p**u * x + 1) % m
    raise UnsupportedFamily(family)


def base_gamma(label: SubgroupLabel) -> GammaFunction:
    """The k = 0 (and c = 1) representative of the label's orbit."""
    _check_shape(label)
    return GammaFunction(Modulus(label.p, label.n), _base_table(label.p, label.n, label.family, label.u))


def orbit_unit(label: SubgroupLabel) -> int:
    if label.family == "U":
        return label.k * label.p + label.c
    return 2 * (label.k or 0) + 1


def labeled_gamma(label: SubgroupLabel) -> GammaFunction:
    if not is_canonical(label):
        raise ValueError(f"label {label} is not canonical")
    return _labeled(label)


@lru_cache(maxsize=4096)
def _labeled(label: SubgroupLabel) -> GammaFunction:
    base = base_gamma(label)
    m = base.m
    return conjugate(base, pow(orbit_unit(label), -1, m))


@dataclass(frozen=True)
class CatalogEntry:
    label: SubgroupLabel
    gamma: GammaFunction
    iso: IsoClass


def _vertex_labels(p: int, n: int) -> list[SubgroupLabel]:
    out = []
    if p == 2:
        out += [SubgroupLabel(2, n, f) for f in ("G1", "G2", "G3", "G4")]
        if n >= 4:
            out += [SubgroupLabel(2, n, f) for f in ("G5", "G6")]
            out += [SubgroupLabel(2, n, "P", None, k) for k in range(2 ** (n - 2))]
            out += [SubgroupLabel(2, n, "M", None, k) for k in range(2 ** (n - 2))]
        else:
            out += [SubgroupLabel(2, n, "P", None, k) for k in range(2 ** (n - 2))]
        for u in range(2, n - 1):
            out += [SubgroupLabel(2, n, "C", u, k) for k in range(2 ** (n - u - 1))]
    else:
        out.append(SubgroupLabel(p, n, "U", n, 0, 1))
        for u in range(1, n):
            for k in range(p ** (n - u - 1)):
                out += [SubgroupLabel(p, n, "U", u, k, c) for c in range(1, p)]
    return out


@lru_cache(maxsize=64)
def full_catalog(p: int, n: int) -> tuple[CatalogEntry, ...]:
    """All vertices of the local normalizing graph, sorted by label."""
    if p == 2 and n < 3:
        raise UnsupportedFamily("p = 2 catalog needs n >= 3")
    Modulus(p, n)
    entries = []
    seen: dict[GammaFunction, SubgroupLabel] = {}
    for label in sorted(_vertex_labels(p, n)):
        g = labeled_gamma(label)
        if g in seen:
            raise AssertionError(f"{label} duplicates {seen[g]}")
        seen[g] = label
        entries.append(CatalogEntry(label, g, classify(g)))
    return tuple(entries)


def catalog_index(p: int, n: int) -> dict[GammaFunction, SubgroupLabel]:
    return {e.gamma: e.label for e in full_catalog(p, n)}


@dataclass
class CountRecord:
    total: int
    by_iso: dict[str, int]
    orbit_sizes: dict[str, int]


def expected_counts(p: int, n: int) -> CountRecord:
    """Closed-form vertex counts per isomorphism class and per orbit."""
    if p == 2:
        if n < 3:
            raise UnsupportedFamily("p = 2 needs n >= 3")
        if n == 3:
            # order 8: the G5/G6 tables coincide with P(0)/P(1) and M is not a
            # gamma function; values read off the oracle on Hol(C_8)
            by_iso = {"Cyclic": 2, "DirectProduct": 2, "Quaternion": 1, "Dihedral": 1}
            orbits = {"G1": 1, "G2": 1, "G3": 1, "G4": 1, "P": 2}
            return CountRecord(6, by_iso, orbits)
        q = 2 ** (n - 2)
        by_iso = {
            "Cyclic": q,
            "DirectProduct": q,
            "Modular": q,
            "Semidihedral": 2,
            "Quaternion": 1,
            "Dihedral": 1,
        }
        orbits = {"G1": 1, "G2": 1, "G3": 1, "G4": 1, "G5/G6": 2, "P": q, "M": q}
        orbits.update({f"C{u}": 2 ** (n - u - 1) for u in range(2, n - 1)})
        return CountRecord(3 * q + 4, by_iso, orbits)
    by_iso = {"Cyclic": p ** (n - 1)}
    orbits = {f"U{n}": 1}
    orbits.update({f"U{u}": p ** (n - u) - p ** (n - u - 1) for u in range(1, n)})
    return CountRecord(p ** (n - 1), by_iso, orbits)


def catalog_counts(p: int, n: int) -> CountRecord:
    """The same record, tallied from the constructed catalog."""
    entries = full_catalog(p, n)
    by_iso: dict[str, int] = {}
    for e in entries:
        by_iso[str(e.iso)] = by_iso.get(str(e.iso), 0) + 1
    orbits: dict[str, int] = {}
    for e in entries:
        fam = e.label.family
        key = "G5/G6" if fam in ("G5", "G6") else fam if fam not in ("C", "U") else f"{fam}{e.label.u}"
        if key in orbits:
            continue
        orbits[key] = orbit_size(e.gamma)
    return CountRecord(len(entries), by_iso, orbits)


def check_entry(entry: CatalogEntry) -> bool:
    return validate(entry.gamma)


# -- text serialization --------------------------------------------------


def format_catalog(entries) -> str:
    """One vertex per line: ``p n family u k c period isoclass``."""
    dash = lambda v: "-" if v is None else str(v)
    lines = []
    for e in entries:
        lb = e.label
        lines.append(
            f"{lb.p} {lb.n} {lb.family} {dash(lb.u)} {dash(lb.k)} {dash(lb.c)} {e.gamma.period} {e.iso}"
        )
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> list[tuple[SubgroupLabel, int, str]]:
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        p, n, fam, u, k, c, period, iso = line.split()
        val = lambda v: None if v == "-" else int(v)
        out.append((SubgroupLabel(int(p), int(n), fam, val(u), val(k), val(c)), int(period), iso))
    return out

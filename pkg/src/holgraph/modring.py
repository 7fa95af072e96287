"""Arithmetic in Z/p^n and its unit group.

Residues and units are thin immutable wrappers around Python ints. Bulk work
elsewhere in the package (gamma tables, criteria) uses plain ints or numpy
arrays of representatives; these wrappers exist for the public API and for
checking that operands share a modulus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

MAX_BITS = 62


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Modulus:
    """The ring Z/p^n."""

    p: int
    n: int
    m: int = field(init=False, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.n < 1:
            raise ValueError(f"exponent must be >= 1, got {self.n}")
        m = self.p**self.n
        if m > 2**MAX_BITS:
            raise ValueError(f"{self.p}^{self.n} exceeds 2^{MAX_BITS}")
        object.__setattr__(self, "m", m)

    @property
    def phi(self) -> int:
        """Order of the unit group, p^(n-1) * (p-1)."""
        return self.m // self.p * (self.p - 1)

    def units(self) -> list[int]:
        return [a for a in range(1, self.m) if a % self.p] if self.m > 1 else []

    def residue(self, x: int) -> Residue:
        return Residue(x % self.m, self)

    def unit(self, a: int) -> UnitAut:
        return UnitAut(a % self.m, self)

    def __str__(self):
        return f"Z/{self.p}^{self.n}"


def _same(x: Modulus, y: Modulus) -> None:
    if x != y:
        raise ValueError(f"modulus mismatch: {x} vs {y}")


@dataclass(frozen=True, order=True)
class Residue:
    value: int
    modulus: Modulus = field(compare=False)

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.m:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.modulus.m}")

    def __add__(self, other: Residue) -> Residue:
        _same(self.modulus, other.modulus)
        return self.modulus.residue(self.value + other.value)

    def __sub__(self, other: Residue) -> Residue:
        _same(self.modulus, other.modulus)
        return self.modulus.residue(self.value - other.value)

    def __neg__(self) -> Residue:
        return self.modulus.residue(-self.value)

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value


@dataclass(frozen=True, order=True)
class UnitAut:
    """The automorphism x -> a*x of Z/m, stored as the unit a."""

    a: int
    modulus: Modulus = field(compare=False)

    def __post_init__(self):
        m = self.modulus.m
        if not 0 <= self.a < m or gcd(self.a, m) != 1:
            raise ValueError(f"{self.a} is not a unit mod {m}")

    def __call__(self, x: Residue) -> Residue:
        return apply(self, x)

    def __mul__(self, other: UnitAut) -> UnitAut:
        return compose(self, other)

    def __pow__(self, e: int) -> UnitAut:
        return UnitAut(pow(self.a, e, self.modulus.m), self.modulus)

    def inverse(self) -> UnitAut:
        return UnitAut(pow(self.a, -1, self.modulus.m), self.modulus)

    def order(self) -> int:
        m, x, k = self.modulus.m, self.a, 1
        while x != 1 % m:
            x = x * self.a % m
            k += 1
        return k

    def __str__(self):
        return f"sigma_{self.a}"


def apply(a: UnitAut, x: Residue) -> Residue:
    _same(a.modulus, x.modulus)
    return Residue(a.a * x.value % a.modulus.m, a.modulus)


def compose(a: UnitAut, b: UnitAut) -> UnitAut:
    """Apply ``a`` first, then ``b``. Aut(Z/m) is abelian so order is immaterial."""
    _same(a.modulus, b.modulus)
    return UnitAut(a.a * b.a % a.modulus.m, a.modulus)


def _geometric(a: int, t: int, m: int) -> tuple[int, int]:
    # returns (sum_{i<t} a^i, a^t) mod m, using S(2t) = S(t) * (1 + a^t)
    s, pw = 0, 1 % m
    for bit in bin(t)[2:] if t else "":
        s, pw = s * (1 + pw) % m, pw * pw % m
        if bit == "1":
            s, pw = (s + pw) % m, pw * a % m
    return s, pw


def geometric_sum(a: UnitAut, t: int) -> Residue:
    """Return sum_{i=0}^{t-1} a^i mod m.

    No division by ``a - 1`` takes place, so the result is exact even when
    ``a - 1`` is a zero divisor (the interesting case: a = p^u + 1).
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    s, _ = _geometric(a.a, t, a.modulus.m)
    return Residue(s, a.modulus)


def vanishing_index(a: UnitAut) -> int:
    """Smallest t >= 1 with geometric_sum(a, t) == 0.

    This is the circle order of 1 under the gamma function x -> sigma_{(a-1)x+1}.
    """
    m = a.modulus.m
    s, pw, t = 1 % m, a.a % m, 1
    while s:
        s = (s + pw) % m
        pw = pw * a.a % m
        t += 1
    return t


@dataclass
class LemmaCheck:
    name: str
    passed: bool
    checked: int
    counterexample: dict | None = None

    def __str__(self):
        status = "ok" if self.passed else f"FAIL at {self.counterexample}"
        return f"{self.name}: {status} ({self.checked} cases)"


def _check_two_power_vanishing(mod: Modulus) -> LemmaCheck:
    # (5^k - 1)/2 == 0 mod 2^n  <=>  k = 2^(n-1), for 1 <= k <= 2^(n-1)
    m, n = mod.m, mod.n
    s, pw = 0, 1
    for k in range(1, 2 ** (n - 1) + 1):
        s, pw = (s + pw) % m, pw * 5 % m
        # (5^k - 1)/2 = 2 * sum_{i<k} 5^i
        vanishes = 2 * s % m == 0
        if vanishes != (k == 2 ** (n - 1)):
            return LemmaCheck("five_power_vanishing", False, k, {"k": k})
    return LemmaCheck("five_power_vanishing", True, 2 ** (n - 1))


def _check_two_power_value(mod: Modulus) -> LemmaCheck:
    n, m = mod.n, mod.m
    k = 2 ** (n - 2) + 1
    got = 2 * geometric_sum(mod.unit(5), k).value % m
    want = 2 ** (n - 1) + 2
    if got != want:
        return LemmaCheck("five_power_value", False, 1, {"k": k, "got": got, "want": want})
    return LemmaCheck("five_power_value", True, 1)


def _check_shifted_power_vanishing(mod: Modulus, name: str, u_min: int) -> LemmaCheck:
    # p^-u [(p^u + 1)^k - 1] == 0 mod p^n  <=>  k = p^n, for 1 <= k <= p^n
    p, n, m = mod.p, mod.n, mod.m
    checked = 0
    for u in range(u_min, n):
        a = p**u + 1
        s, pw = 0, 1
        for k in range(1, m + 1):
            s, pw = (s + pw) % m, pw * a % m
            checked += 1
            if (s == 0) != (k == m):
                return LemmaCheck(name, False, checked, {"u": u, "k": k})
    return LemmaCheck(name, True, checked)


def verify_arith_lemmas(mod: Modulus) -> list[LemmaCheck]:
    """Exhaustively check the unit-power vanishing lemmas for ``mod``.

    For p = 2 (requires n >= 4) three facts about powers of 5 and of 2^u + 1
    are swept over their whole range of k and u; for odd p the single
    statement about (p^u + 1)^k is swept over 1 <= u < n, 1 <= k <= p^n.
    """
    if mod.p == 2:
        if mod.n < 4:
            raise ValueError("the p = 2 lemmas need n >= 4")
        return [
            _check_two_power_vanishing(mod),
            _check_two_power_value(mod),
            _check_shifted_power_vanishing(mod, "two_shifted_power_vanishing", 2),
        ]
    return [_check_shifted_power_vanishing(mod, "odd_shifted_power_vanishing", 1)]

"""Exact arithmetic of Dirichlet characters mod q.

A character is stored by its exponents on a fixed generator system of
(Z/q)*, so every value is an exact root of unity chi(n) = zeta_e^k with
e the group exponent.  Real characters therefore evaluate to exact
integers in {-1, 0, 1}, which the sieve sums downstream rely on.

The generator system is deterministic: components ordered by prime, odd
prime powers generated by the smallest primitive root, and the 2-part
(for 8 | q) by the pair (-1, 5).  "Character j mod q" is then the same
object in every run.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import (
    divisors,
    euler_phi,
    factorize,
    is_fundamental_discriminant,
    kronecker_symbol,
)

_LAZY_TABLE_LIMIT = 10_000  # dense per-character value tables only below this q
_MAX_MODULUS = 1_000_000


def _primitive_root(p: int, e: int) -> int:
    """Smallest primitive root mod p^e for an odd prime p."""
    pe = p**e
    order = pe - pe // p
    fac = [f for f, _ in factorize(order)]
    g = 2
    while True:
        if math.gcd(g, p) == 1 and all(pow(g, order // f, pe) != 1 for f in fac):
            return g
        g += 1


@dataclass(frozen=True)
class _Component:
    """One cyclic factor of (Z/q)*: a generator (as residue mod q) and its order."""

    prime_power: int
    gen_local: int  # generator modulo prime_power
    order: int


class UnitGroup:
    """Structure of (Z/q)* with per-component discrete logs."""

    def __init__(self, q: int):
        if q < 1:
            raise ValueError(f"modulus must be positive, got {q}")
        if q > _MAX_MODULUS:
            raise ValueError(f"modulus {q} exceeds supported bound {_MAX_MODULUS}")
        self.q = q
        comps: list[_Component] = []
        for p, e in factorize(q) if q > 1 else []:
            pe = p**e
            if p == 2:
                if e == 1:
                    continue
                if e == 2:
                    comps.append(_Component(4, 3, 2))
                else:
                    comps.append(_Component(pe, pe - 1, 2))
                    comps.append(_Component(pe, 5, 2 ** (e - 2)))
            else:
                comps.append(_Component(pe, _primitive_root(p, e), pe - pe // p))
        self.components = comps
        self.orders = [c.order for c in comps]
        self.exponent = int(np.lcm.reduce(self.orders)) if comps else 1
        self.phi = euler_phi(q)
        self._dlogs: list[dict[int, int]] | None = None
        self._dmat: tuple[np.ndarray, np.ndarray] | None = None

    def _component_dlogs(self) -> list[dict[int, int]]:
        if self._dlogs is None:
            tables = []
            for c in self.components:
                tab: dict[int, int] = {}
                x = 1
                for k in range(c.order):
                    # for the 2-part both components act on residues mod 2^e;
                    # the (-1)-component log of x is recovered from x mod 4
                    tab.setdefault(x, k)
                    x = x * c.gen_local % c.prime_power
                tables.append(tab)
            self._dlogs = tables
        return self._dlogs

    def dlog(self, n: int) -> tuple[int, ...] | None:
        """Exponent vector of n on the generator system, or None if not a unit."""
        n %= self.q
        if self.q == 1:
            return ()
        if math.gcd(n, self.q) != 1:
            return None
        out = []
        i = 0
        comps = self.components
        tables = self._component_dlogs()
        while i < len(comps):
            c = comps[i]
            r = n % c.prime_power
            if c.prime_power % 2 == 0 and c.prime_power % 8 == 0:
                # 2-part with e >= 3: split r = (-1)^a 5^b
                a = 0 if r % 4 == 1 else 1
                r2 = r if a == 0 else (-r) % c.prime_power
                b = tables[i + 1][r2]
                out.append(a)
                out.append(b)
                i += 2
            else:
                out.append(tables[i][r])
                i += 1
        return tuple(out)

    def dlog_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """(logs, unit_mask): logs is (q, ncomp) with zeros on non-units."""
        if self._dmat is None:
            q = self.q
            ncomp = len(self.components)
            logs = np.zeros((q, max(ncomp, 1)), dtype=np.int64)
            unit = np.zeros(q, dtype=bool)
            for n in range(q):
                d = self.dlog(n)
                if d is not None:
                    unit[n] = True
                    logs[n, :ncomp] = d
            self._dmat = (logs, unit)
        return self._dmat

    def generator_residues(self) -> list[int]:
        """CRT lifts of the component generators: g_i mod its prime power, 1 elsewhere."""
        out = []
        for c in self.components:
            pe = c.prime_power
            rest = self.q // pe
            if rest == 1:
                out.append(c.gen_local % self.q)
            else:
                n = (c.gen_local * rest * pow(rest, -1, pe) + pe * pow(pe, -1, rest)) % self.q
                out.append(n)
        return out


@lru_cache(maxsize=256)
def unit_group(q: int) -> UnitGroup:
    return UnitGroup(q)


@dataclass(frozen=True)
class DirichletCharacter:
    """A Dirichlet character mod q, exact on the generator system.

    exps[i] in [0, orders[i]) gives chi(g_i) = exp(2 pi i exps[i] / orders[i]).
    """

    modulus: int
    exps: tuple[int, ...]
    _group: UnitGroup = field(repr=False, compare=False, hash=False, default=None)

    def __post_init__(self):
        g = self._group if self._group is not None else unit_group(self.modulus)
        object.__setattr__(self, "_group", g)
        if len(self.exps) != len(g.orders) or any(
            not 0 <= a < d for a, d in zip(self.exps, g.orders)
        ):
            raise ValueError(f"invalid exponent vector {self.exps} for modulus {self.modulus}")

    # -- indexing ------------------------------------------------------

    @property
    def index(self) -> int:
        """Mixed-radix index; 0 is the principal character."""
        idx = 0
        scale = 1
        for a, d in zip(self.exps, self._group.orders):
            idx += a * scale
            scale *= d
        return idx

    # -- exact values ---------------------------------------------------

    def value_index(self, n: int) -> int | None:
        """k with chi(n) = exp(2 pi i k / e), or None when gcd(n, q) > 1."""
        d = self._group.dlog(n)
        if d is None:
            return None
        e = self._group.exponent
        k = 0
        for a, di, li in zip(self.exps, self._group.orders, d):
            k += a * (e // di) * li
        return k % e

    def value(self, n: int) -> complex:
        k = self.value_index(n)
        if k is None:
            return 0j
        e = self._group.exponent
        if k == 0:
            return 1 + 0j
        if 2 * k == e:
            return -1 + 0j
        return cmath.exp(2j * cmath.pi * k / e)

    def value_int(self, n: int) -> int:
        """Exact value in {-1, 0, 1}; only valid for real characters."""
        if not self.is_real:
            raise ValueError("value_int is defined for real characters only")
        k = self.value_index(n)
        if k is None:
            return 0
        return 1 if k == 0 else -1

    def values(self) -> np.ndarray:
        """Dense complex table over residues 0..q-1."""
        q = self.modulus
        if q > _LAZY_TABLE_LIMIT:
            raise ValueError(f"dense value table refused for q = {q} > {_LAZY_TABLE_LIMIT}")
        e = self._group.exponent
        dmat = self._group.dlog_matrix()
        weights = np.array(
            [a * (e // d) for a, d in zip(self.exps, self._group.orders)] or [0],
            dtype=np.int64,
        )
        k = (dmat @ weights) % e
        roots = np.exp(2j * np.pi * np.arange(e) / e)
        out = roots[k]
        out[np.any(dmat < 0, axis=1)] = 0
        return out

    def values_int(self) -> np.ndarray:
        """Dense exact table in {-1, 0, 1} for a real character."""
        if not self.is_real:
            raise ValueError("values_int is defined for real characters only")
        e = self._group.exponent
        dmat = self._group.dlog_matrix()
        weights = np.array(
            [a * (e // d) for a, d in zip(self.exps, self._group.orders)] or [0],
            dtype=np.int64,
        )
        k = (dmat @ weights) % e
        out = np.where(k == 0, 1, -1).astype(np.int64)
        out[np.any(dmat < 0, axis=1)] = 0
        return out

    # -- classification --------------------------------------------------

    @property
    def is_principal(self) -> bool:
        return all(a == 0 for a in self.exps)

    @property
    def is_real(self) -> bool:
        return all((2 * a) % d == 0 for a, d in zip(self.exps, self._group.orders))

    @property
    def is_even(self) -> bool:
        if self.modulus <= 2:
            return True
        return self.value_index(self.modulus - 1) == 0

    @property
    def is_odd(self) -> bool:
        return not self.is_even

    @property
    def conductor(self) -> int:
        return _conductor(self)

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def conjugate(self) -> "DirichletCharacter":
        exps = tuple((-a) % d for a, d in zip(self.exps, self._group.orders))
        return DirichletCharacter(self.modulus, exps, self._group)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        if other.modulus != self.modulus:
            raise ValueError("can only multiply characters of equal modulus")
        exps = tuple((a + b) % d for a, b, d in zip(self.exps, other.exps, self._group.orders))
        return DirichletCharacter(self.modulus, exps, self._group)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "q": self.modulus,
            "index": self.index,
            "conductor": self.conductor,
            "real": self.is_real,
            "primitive": self.is_primitive,
        }

    def __repr__(self) -> str:
        return f"DirichletCharacter(q={self.modulus}, index={self.index})"


def character(q: int, index: int) -> DirichletCharacter:
    """The character of the given mixed-radix index mod q."""
    g = unit_group(q)
    if not 0 <= index < g.phi:
        raise ValueError(f"index {index} out of range for phi({q}) = {g.phi}")
    exps = []
    for d in g.orders:
        exps.append(index % d)
        index //= d
    return DirichletCharacter(q, tuple(exps), g)


def character_from_json(data: dict) -> DirichletCharacter:
    chi = character(int(data["q"]), int(data["index"]))
    for key, have in (("conductor", chi.conductor), ("real", chi.is_real), ("primitive", chi.is_primitive)):
        if key in data and data[key] != have:
            raise ValueError(f"inconsistent character JSON: {key}={data[key]}, computed {have}")
    return chi


def character_to_json_str(chi: DirichletCharacter) -> str:
    return json.dumps(chi.to_json(), sort_keys=True)


def principal_character(q: int) -> DirichletCharacter:
    g = unit_group(q)
    return DirichletCharacter(q, tuple(0 for _ in g.orders), g)


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    """All phi(q) characters mod q, in index order."""
    return list(iter_characters(q))


def iter_characters(q: int):
    g = unit_group(q)
    for index in range(g.phi):
        yield character(q, index)


def _conductor(chi: DirichletCharacter) -> int:
    """Conductor as the product of local conductors of the component characters."""
    g = chi._group
    cond = 1
    i = 0
    comps = g.components
    while i < len(comps):
        c = comps[i]
        pe = c.prime_power
        if pe % 8 == 0:
            a_minus, a_five = chi.exps[i], chi.exps[i + 1]
            d_five = g.orders[i + 1]
            if a_five != 0:
                order5 = d_five // math.gcd(d_five, a_five)
                cond *= 4 * order5
            elif a_minus != 0:
                cond *= 4
            i += 2
        elif pe == 4:
            if chi.exps[i] != 0:
                cond *= 4
            i += 1
        else:
            p = factorize(pe)[0][0]
            a, d = chi.exps[i], g.orders[i]
            if a != 0:
                order = d // math.gcd(d, a)
                beta = 0
                while order % p == 0:
                    order //= p
                    beta += 1
                cond *= p ** (beta + 1)
            i += 1
    return cond


def conductor_brute_force(chi: DirichletCharacter) -> int:
    """Smallest f | q with chi trivial on units n = 1 (mod f); definitional oracle."""
    q = chi.modulus
    for f in divisors(q):
        if all(
            chi.value_index(n) == 0
            for n in range(1, q + 1, f)
            if math.gcd(n, q) == 1
        ):
            return f
    return q


def conductor_and_primitivize(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    """The conductor f and the primitive character mod f inducing chi."""
    f = chi.conductor
    if f == chi.modulus:
        return f, chi
    gf = unit_group(f)
    exps = []
    q = chi.modulus
    for c in gf.components:
        # lift the generator to a residue coprime to q; chi's value there is
        # the induced character's value
        n = c.gen_local
        if f % 8 == 0 and c.gen_local == c.prime_power - 1:
            n = f - 1
        while math.gcd(n, q) != 1:
            n += f
        k = chi.value_index(n)
        e = chi._group.exponent
        num = k * c.order
        if num % e != 0:
            raise AssertionError("induced value is not a root of unity of the component order")
        exps.append((num // e) % c.order)
    ind = DirichletCharacter(f, tuple(exps), gf)
    return f, ind


def kronecker_character(d: int) -> DirichletCharacter:
    """The real primitive character mod |d| given by the Kronecker symbol (d/.)."""
    if not is_fundamental_discriminant(d):
        raise ValueError(
            f"{d} is not a fundamental discriminant (need d = 1 mod 4 squarefree, "
            "or d = 4m with m = 2, 3 mod 4 squarefree)"
        )
    q = abs(d)
    g = unit_group(q)
    exps = []
    i = 0
    while i < len(g.components):
        c = g.components[i]
        n = c.gen_local
        if c.prime_power % 8 == 0 and n == c.prime_power - 1:
            n = q - 1  # represent the (-1)-generator by the global residue -1
        s = kronecker_symbol(d, n)
        if s == 1:
            exps.append(0)
        elif s == -1:
            if c.order % 2 != 0:
                raise AssertionError(f"component of odd order got value -1 for d={d}")
            exps.append(c.order // 2)
        else:
            raise AssertionError(f"Kronecker symbol vanished on a unit for d={d}")
        i += 1
    chi = DirichletCharacter(q, tuple(exps), g)
    return chi

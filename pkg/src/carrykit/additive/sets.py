"""Finite sets of integers and of residues, with sumsets and representation counts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

import numpy as np

__all__ = [
    "IntSet",
    "ModSet",
    "sumset",
    "rep_count",
    "rep_counts",
    "signed_residue",
    "in_quarter_window",
    "centered_interval",
    "has_unit_differences",
]


@dataclass(frozen=True)
class IntSet:
    """Sorted distinct integers."""

    elements: tuple[int, ...]

    def __init__(self, elements: Iterable[int]):
        object.__setattr__(self, "elements", tuple(sorted(set(int(x) for x in elements))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in set(self.elements)

    def neg(self) -> "IntSet":
        return IntSet(-x for x in self.elements)


@dataclass(frozen=True)
class ModSet:
    """A subset of Z/mZ, stored as sorted residues in 0..m-1."""

    modulus: int
    elements: tuple[int, ...]

    def __init__(self, modulus: int, elements: Iterable[int]):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "elements", tuple(sorted(set(int(x) % modulus for x in elements))))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return int(x) % self.modulus in set(self.elements)

    def neg(self) -> "ModSet":
        return ModSet(self.modulus, (-x for x in self.elements))

    def dilate(self, c: int) -> "ModSet":
        return ModSet(self.modulus, (c * x for x in self.elements))

    def translate(self, d: int) -> "ModSet":
        return ModSet(self.modulus, (x + d for x in self.elements))

    def indicator(self) -> np.ndarray:
        out = np.zeros(self.modulus, dtype=np.int64)
        out[list(self.elements)] = 1
        return out

    def signed(self) -> tuple[int, ...]:
        return tuple(sorted(signed_residue(x, self.modulus) for x in self.elements))


AnySet = Union[IntSet, ModSet]


def _same_ambient(sets) -> int | None:
    kinds = {type(s) for s in sets}
    if len(kinds) != 1:
        raise ValueError("ambient mismatch: cannot mix integer and modular sets")
    if isinstance(sets[0], ModSet):
        mods = {s.modulus for s in sets}
        if len(mods) != 1:
            raise ValueError(f"ambient mismatch: moduli {sorted(mods)}")
        return mods.pop()
    return None


def sumset(a: AnySet, b: AnySet) -> AnySet:
    m = _same_ambient([a, b])
    sums = {x + y for x in a for y in b}
    return IntSet(sums) if m is None else ModSet(m, sums)


def rep_counts(*sets: ModSet) -> np.ndarray:
    """Array n with n[x] = number of ways x = a_1 + ... + a_k, a_i in A_i (mod m)."""
    m = _same_ambient(list(sets))
    if m is None:
        raise ValueError("rep_counts needs modular sets; use rep_count for integers")
    acc = sets[0].indicator()
    for s in sets[1:]:
        nxt = np.zeros(m, dtype=np.int64)
        for a in s.elements:
            nxt += np.roll(acc, a)
        acc = nxt
    return acc


def rep_count(x: int, *sets: AnySet) -> int:
    m = _same_ambient(list(sets))
    if m is not None:
        return int(rep_counts(*sets)[x % m])
    counts = Counter({0: 1})
    for s in sets:
        nxt: Counter = Counter()
        for v, c in counts.items():
            for a in s:
                nxt[v + a] += c
        counts = nxt
    return counts[x]


def signed_residue(x: int, m: int) -> int:
    """The representative of x mod m in (-m/2, m/2]."""
    x %= m
    return x - m if 2 * x > m else x


def in_quarter_window(x: int, m: int) -> bool:
    """Whether x mod m lies in (-m/4, m/4] (exact integer comparison)."""
    s = signed_residue(x, m)
    return 4 * s > -m and 4 * s <= m


def centered_interval(size: int, modulus: int) -> ModSet:
    """{-floor((s-1)/2), ..., ceil((s-1)/2)} reduced mod m."""
    lo = -((size - 1) // 2)
    return ModSet(modulus, range(lo, lo + size))


def has_unit_differences(a: ModSet) -> bool:
    """(x - y, m) = 1 for all distinct x, y in A."""
    el = a.elements
    return all(gcd(x - y, a.modulus) == 1 for i, x in enumerate(el) for y in el[i + 1:])

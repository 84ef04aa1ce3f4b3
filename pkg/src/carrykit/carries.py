"""Carry values, carry tables and carry scores.

For representatives X of H in G and x, y in X, the carry of x*y is
``x12^-1 * x * y`` where ``x12`` is the representative of the coset of ``x*y``.
The integer model (bZ inside Z) works directly on lists of numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groups import CosetSystem, CyclicGroup, GroupError, RepSet, coset_system, make_cyclic

__all__ = [
    "CarryTable",
    "carry",
    "carry_table",
    "carry_score",
    "carry_count",
    "standard_reps",
    "balanced_reps",
    "digit_system",
    "integer_carry_count",
    "sign_count_lower_bound",
    "signed_carry_label",
]


@dataclass(frozen=True, eq=False)
class CarryTable:
    system: CosetSystem
    reps: RepSet
    entries: np.ndarray  # entries[i, j] = carry of reps[i]*reps[j]
    nontrivial_count: int
    distinct_values: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.system.index

    @property
    def score(self) -> Fraction:
        k2 = self.k * self.k
        return Fraction(k2 - self.nontrivial_count, k2)

    def nontrivial_positions(self) -> list[tuple[int, int]]:
        e = self.system.group.identity
        return [(int(i), int(j)) for i, j in np.argwhere(self.entries != e)]


def _as_repset(system: CosetSystem, reps) -> RepSet:
    if isinstance(reps, RepSet):
        if reps.system is not system:
            raise GroupError("representative set belongs to a different coset system")
        return reps
    return system.rep_set(reps)


def _product_indices(system: CosetSystem, reps: RepSet):
    g = system.group
    r = np.array(reps.reps, dtype=np.int64)
    prod = g.table[np.ix_(r, r)]
    target = r[system.coset_of[prod]]  # x_ij, the representative of each product's coset
    return r, prod, target


def carry(system: CosetSystem, reps, x: int, y: int) -> int:
    """The element h of H with ``x*y = x12*h``."""
    reps = _as_repset(system, reps)
    if x not in reps.elements or y not in reps.elements:
        raise GroupError(f"{x} and {y} must both be representatives")
    g = system.group
    xy = g.mul(x, y)
    x12 = reps[int(system.coset_of[xy])]
    return g.mul(g.inv(x12), xy)


def carry_table(system: CosetSystem, reps) -> CarryTable:
    reps = _as_repset(system, reps)
    g = system.group
    _, prod, target = _product_indices(system, reps)
    entries = g.table[g.inverses[target], prod]
    entries.flags.writeable = False
    nontrivial = int(np.count_nonzero(entries != g.identity))
    distinct = tuple(sorted(set(entries.ravel().tolist())))
    return CarryTable(system, reps, entries, nontrivial, distinct)


def carry_count(system: CosetSystem, reps) -> int:
    """Number of ordered pairs (x, y) in X^2 with ``x*y`` outside X."""
    reps = _as_repset(system, reps)
    _, prod, target = _product_indices(system, reps)
    return int(np.count_nonzero(prod != target))


def carry_score(system: CosetSystem, reps) -> Fraction:
    """C(X): fraction of ordered pairs whose product stays in X."""
    k2 = system.index ** 2
    return Fraction(k2 - carry_count(system, reps), k2)


def digit_system(b: int) -> CosetSystem:
    """The coset system b(Z/b^2) inside Z/b^2."""
    if b < 2:
        raise GroupError(f"base must be at least 2, got {b}")
    return coset_system(make_cyclic(b * b), range(0, b * b, b))


def _digit_base(system: CosetSystem) -> int:
    g = system.group
    if not isinstance(g, CyclicGroup):
        raise GroupError("digit representatives need a cyclic group Z/b^2")
    b = system.index
    if b * b != g.modulus or system.subgroup != frozenset(range(0, g.modulus, b)):
        raise GroupError(f"system is not b(Z/b^2) inside Z/b^2 (got {g.spec()}, index {b})")
    return b


def standard_reps(system: CosetSystem) -> RepSet:
    """The usual digits {0, 1, ..., b-1}."""
    b = _digit_base(system)
    return system.rep_set(range(b))


def balanced_reps(system: CosetSystem) -> RepSet:
    """Signed digits n with -b/2 < n <= b/2 (for odd b: 0, +-1, ..., +-(b-1)/2)."""
    b = _digit_base(system)
    m = b * b
    window = range(-((b - 1) // 2), b // 2 + 1)
    return system.rep_set_from_elements(n % m for n in window)


def signed_carry_label(system: CosetSystem, value: int, ascii_only: bool = True) -> str:
    """Render a carry of Z/b^2 as a signed multiple of b: 0, b, -b, 2b, ..."""
    g = system.group
    if not isinstance(g, CyclicGroup):
        return str(value)
    b = system.index
    s = g.signed(value)
    if s % b:
        return str(value)
    t = s // b
    if t == 0:
        return "0"
    mag = "b" if abs(t) == 1 else f"{abs(t)}b"
    if t > 0:
        return mag
    return "-" + mag if ascii_only else mag + "̄"


def integer_carry_count(xs: Sequence, b: int | None = None) -> int:
    """Carries of a representative list in Z: ordered pairs with ``x + y`` not in the list.

    Works for any distinct real numbers; pass ints or Fractions for exactness.
    """
    xs = list(xs)
    if b is not None and len(xs) != b:
        raise ValueError(f"expected {b} representatives, got {len(xs)}")
    members = set(xs)
    if len(members) != len(xs):
        raise ValueError("representatives must be distinct")
    return sum(1 for x in xs for y in xs if x + y not in members)


def sign_count_lower_bound(c: int, b: int) -> int:
    """Carries forced by c positive and b-1-c negative elements."""
    if not 0 <= c <= b - 1:
        raise ValueError(f"need 0 <= c <= b-1, got c={c}, b={b}")
    return (c * (c + 1) + (b - 1 - c) * (b - c)) // 2

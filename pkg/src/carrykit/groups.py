"""Finite groups on dense integer elements, normal subgroups and coset systems.

Every group has elements ``0..order-1``.  Cyclic groups use addition mod m,
product groups encode the pair ``(a, b)`` as ``a * |G2| + b``, and explicit
groups are given by a Cayley table.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "GroupError",
    "FiniteGroup",
    "CyclicGroup",
    "ProductGroup",
    "TableGroup",
    "CosetSystem",
    "RepSet",
    "make_cyclic",
    "make_product",
    "make_from_table",
    "coset_system",
    "read_cayley_table",
]

# full n^3 associativity scan up to this order, Light's test above it
FULL_ASSOCIATIVITY_LIMIT = 256


class GroupError(ValueError):
    """Raised when a table, subgroup or representative set violates the group axioms."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class FiniteGroup:
    """Common interface: ``mul``, ``inv``, ``identity`` and a cached Cayley table."""

    order: int
    identity: int = 0

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def _build_table(self) -> np.ndarray:
        n = self.order
        return np.array([[self.mul(a, b) for b in range(n)] for a in range(n)], dtype=np.int64)

    @cached_property
    def table(self) -> np.ndarray:
        """Read-only ``order x order`` array with ``table[a, b] = a*b``."""
        return _frozen(self._build_table())

    @cached_property
    def inverses(self) -> np.ndarray:
        return _frozen(np.array([self.inv(a) for a in range(self.order)], dtype=np.int64))

    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and 0 <= x < self.order

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return bool(np.array_equal(t, t.T))

    def power(self, g: int, e: int) -> int:
        if e < 0:
            g, e = self.inv(g), -e
        result, base = self.identity, g
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``gens`` (closure under multiplication)."""
        gens = [int(g) for g in gens]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, elements: Iterable[int]) -> bool:
        s = sorted(set(int(x) for x in elements))
        if not s or self.identity not in s:
            return False
        idx = np.array(s, dtype=np.int64)
        member = np.zeros(self.order, dtype=bool)
        member[idx] = True
        if not member[self.table[np.ix_(idx, idx)]].all():
            return False
        return bool(member[self.inverses[idx]].all())

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec()} order={self.order}>"


class CyclicGroup(FiniteGroup):
    """Z/mZ under addition."""

    def __init__(self, modulus: int):
        if modulus < 1:
            raise GroupError(f"cyclic modulus must be positive, got {modulus}")
        self.modulus = int(modulus)
        self.order = self.modulus

    def mul(self, a: int, b: int) -> int:
        return (a + b) % self.modulus

    def inv(self, a: int) -> int:
        return (-a) % self.modulus

    def signed(self, a: int) -> int:
        """Representative of ``a`` in ``(-m/2, m/2]``."""
        a %= self.modulus
        return a - self.modulus if 2 * a > self.modulus else a

    def spec(self) -> str:
        return f"Z/{self.modulus}"

    def _build_table(self) -> np.ndarray:
        r = np.arange(self.modulus, dtype=np.int64)
        return np.add.outer(r, r) % self.modulus

    @cached_property
    def inverses(self) -> np.ndarray:
        return _frozen((-np.arange(self.modulus, dtype=np.int64)) % self.modulus)

    @property
    def is_abelian(self) -> bool:
        return True

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicGroup) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("Z", self.modulus))


class ProductGroup(FiniteGroup):
    """Direct product ``left x right``; the pair (a, b) is stored as ``a*|right| + b``."""

    def __init__(self, left: FiniteGroup, right: FiniteGroup):
        self.left = left
        self.right = right
        self.order = left.order * right.order
        self.identity = self.pair(left.identity, right.identity)

    def pair(self, a: int, b: int) -> int:
        return a * self.right.order + b

    def split(self, x: int) -> tuple[int, int]:
        return divmod(int(x), self.right.order)

    def mul(self, a: int, b: int) -> int:
        a1, a2 = self.split(a)
        b1, b2 = self.split(b)
        return self.pair(self.left.mul(a1, b1), self.right.mul(a2, b2))

    def inv(self, a: int) -> int:
        a1, a2 = self.split(a)
        return self.pair(self.left.inv(a1), self.right.inv(a2))

    def spec(self) -> str:
        return f"{self.left.spec()}x{self.right.spec()}"

    def _build_table(self) -> np.ndarray:
        n2 = self.right.order
        t1, t2 = self.left.table, self.right.table
        # index [a1, a2, b1, b2] -> t1[a1,b1]*n2 + t2[a2,b2]
        full = t1[:, None, :, None] * n2 + t2[None, :, None, :]
        return full.reshape(self.order, self.order)

    @cached_property
    def inverses(self) -> np.ndarray:
        n2 = self.right.order
        inv = self.left.inverses[:, None] * n2 + self.right.inverses[None, :]
        return _frozen(inv.reshape(-1))

    def __eq__(self, other) -> bool:
        return isinstance(other, ProductGroup) and (other.left, other.right) == (self.left, self.right)

    def __hash__(self) -> int:
        return hash(("x", self.left, self.right))


class TableGroup(FiniteGroup):
    """Group given by an explicit Cayley table."""

    def __init__(self, table, *, validate: bool = True, label: str | None = None):
        arr = np.array(table, dtype=np.int64)
        if validate:
            identity = _validate_table(arr)
        else:
            identity = int(np.flatnonzero((arr == np.arange(len(arr))).all(axis=1))[0])
        self.order = len(arr)
        self.identity = identity
        self.label = label
        self.__dict__["table"] = _frozen(arr)
        inv = np.argmax(arr == identity, axis=1)
        self.__dict__["inverses"] = _frozen(inv.astype(np.int64))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def spec(self) -> str:
        return self.label or f"table:<{self.order}>"


def _validate_table(arr: np.ndarray) -> int:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise GroupError("Cayley table must be a non-empty square array")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise GroupError(f"table entries must lie in 0..{n - 1}")
    target = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(arr[i]), target):
            raise GroupError(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(arr[:, i]), target):
            raise GroupError(f"column {i} is not a permutation")
    left_ids = np.flatnonzero((arr == target).all(axis=1))
    right_ids = np.flatnonzero((arr.T == target).all(axis=1))
    common = sorted(set(left_ids.tolist()) & set(right_ids.tolist()))
    if not common:
        raise GroupError("no two-sided identity")
    e = common[0]
    # a Latin square with identity has one-sided inverses in every row and column
    right_inv = np.argmax(arr == e, axis=1)
    if not (arr[right_inv, np.arange(n)] == e).all():
        raise GroupError("missing two-sided inverses")
    bad = _associativity_violation(arr)
    if bad is not None:
        raise GroupError("not associative: (%d*%d)*%d != %d*(%d*%d)" % (bad * 2))
    return int(e)


def _associativity_violation(arr: np.ndarray):
    n = arr.shape[0]
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        middles = range(n)
    else:
        middles = _generating_set(arr)
    # Light's test: (x*g)*y == x*(g*y) for every middle element g
    for g in middles:
        lhs = arr[arr[:, g], :]
        rhs = arr[:, arr[g, :]]
        diff = np.argwhere(lhs != rhs)
        if len(diff):
            x, y = diff[0]
            return int(x), int(g), int(y)
    return None


def _generating_set(arr: np.ndarray) -> list[int]:
    n = arr.shape[0]
    covered = np.zeros(n, dtype=bool)
    gens: list[int] = []
    e = int(np.flatnonzero((arr == np.arange(n)).all(axis=1))[0])
    covered[e] = True
    for g in range(n):
        if covered[g]:
            continue
        gens.append(g)
        # closure of covered set under right multiplication by all gens
        frontier = np.flatnonzero(covered)
        while len(frontier):
            new = np.unique(arr[np.ix_(frontier, gens)].ravel())
            new = new[~covered[new]]
            covered[new] = True
            frontier = new
    return gens


def make_cyclic(m: int) -> CyclicGroup:
    return CyclicGroup(m)


def make_product(g1: FiniteGroup, g2: FiniteGroup) -> ProductGroup:
    return ProductGroup(g1, g2)


def make_from_table(table, label: str | None = None) -> TableGroup:
    """Validate a Cayley table (Latin square, identity, inverses, associativity)."""
    return TableGroup(table, label=label)


def read_cayley_table(path) -> list[list[int]]:
    """Parse the Cayley-table file format: ``n`` then ``n`` rows of ``n`` integers."""
    with open(path) as fh:
        tokens = fh.read().split()
    if not tokens:
        raise GroupError(f"{path}: empty table file")
    n = int(tokens[0])
    values = [int(t) for t in tokens[1:]]
    if len(values) != n * n:
        raise GroupError(f"{path}: expected {n * n} entries after the size line, got {len(values)}")
    return [values[i * n:(i + 1) * n] for i in range(n)]


class CosetSystem:
    """A normal subgroup H of G together with canonical left-coset ids.

    Coset 0 contains the identity; the others are numbered by their least member.
    """

    def __init__(self, group: FiniteGroup, subgroup: Iterable[int]):
        h = sorted(set(int(x) for x in subgroup))
        for x in h:
            if x not in group:
                raise GroupError(f"subgroup element {x} is not in {group.spec()}")
        if not group.is_subgroup(h):
            raise GroupError("not a subgroup")
        t, inv = group.table, group.inverses
        hidx = np.array(h, dtype=np.int64)
        member = np.zeros(group.order, dtype=bool)
        member[hidx] = True
        conj = t[t[:, hidx], inv[:, None]]  # g*h*g^-1
        if not member[conj].all():
            g, j = np.argwhere(~member[conj])[0]
            raise GroupError(f"not normal: conjugating {h[j]} by {int(g)} leaves the subgroup")

        coset_of = np.full(group.order, -1, dtype=np.int64)
        leaders = [group.identity]
        coset_of[t[group.identity, hidx]] = 0
        for g in range(group.order):
            if coset_of[g] < 0:
                coset_of[t[g, hidx]] = len(leaders)
                leaders.append(g)

        self.group = group
        self.subgroup = frozenset(h)
        self.subgroup_sorted = tuple(h)
        self.index = len(leaders)
        self.coset_of = _frozen(coset_of)
        self.leaders = tuple(leaders)
        self._member = _frozen(member)

    def in_subgroup(self, x: int) -> bool:
        return bool(self._member[x])

    @cached_property
    def members(self) -> tuple[tuple[int, ...], ...]:
        """Elements of each coset, ascending."""
        buckets: list[list[int]] = [[] for _ in range(self.index)]
        for g, c in enumerate(self.coset_of.tolist()):
            buckets[c].append(g)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def quotient(self) -> TableGroup:
        """G/H as an explicit table group on coset ids."""
        lead = np.array(self.leaders, dtype=np.int64)
        q = self.coset_of[self.group.table[np.ix_(lead, lead)]]
        return TableGroup(q, validate=False, label=f"{self.group.spec()}/H")

    def rep_set(self, reps: Sequence[int]) -> "RepSet":
        return RepSet(self, reps)

    def rep_set_from_elements(self, elements: Iterable[int]) -> "RepSet":
        """Order an unordered collection of representatives by coset id."""
        elements = [int(x) % self.group.order if isinstance(self.group, CyclicGroup) else int(x)
                    for x in elements]
        reps = [None] * self.index
        for x in elements:
            if x not in self.group:
                raise GroupError(f"{x} is not an element of {self.group.spec()}")
            c = int(self.coset_of[x])
            if reps[c] is not None:
                raise GroupError(f"{reps[c]} and {x} lie in the same coset")
            reps[c] = x
        missing = [i for i, r in enumerate(reps) if r is None]
        if missing:
            raise GroupError(f"no representative for coset(s) {missing}")
        return RepSet(self, reps)

    def __repr__(self) -> str:
        return f"<CosetSystem {self.group.spec()} |H|={len(self.subgroup)} index={self.index}>"


def coset_system(group: FiniteGroup, subgroup: Iterable[int]) -> CosetSystem:
    return CosetSystem(group, subgroup)


class RepSet:
    """One representative per coset; ``reps[i]`` lies in coset ``i``."""

    __slots__ = ("system", "reps")

    def __init__(self, system: CosetSystem, reps: Sequence[int]):
        reps = tuple(int(r) for r in reps)
        if len(reps) != system.index:
            raise GroupError(f"expected {system.index} representatives, got {len(reps)}")
        for i, r in enumerate(reps):
            if r not in system.group:
                raise GroupError(f"{r} is not an element of {system.group.spec()}")
            if system.coset_of[r] != i:
                raise GroupError(f"representative {r} at position {i} lies in coset {int(system.coset_of[r])}")
        self.system = system
        self.reps = reps

    @property
    def elements(self) -> frozenset[int]:
        return frozenset(self.reps)

    def __iter__(self):
        return iter(self.reps)

    def __len__(self) -> int:
        return len(self.reps)

    def __getitem__(self, i: int) -> int:
        return self.reps[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, RepSet) and other.system is self.system and other.reps == self.reps

    def __hash__(self) -> int:
        return hash(self.reps)

    def __repr__(self) -> str:
        return f"RepSet({list(self.reps)})"

"""Recognising the usual digits by their carries.

A representative set A of p(Z/p^2) whose carry table has exactly two distinct
entries is an affine image cA + d (c a unit, d in p(Z/p^2)) of {0..p-1} or {1..p}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from ..approx_hom import InvariantViolation
from ..carries import carry_table, digit_system
from ..groups import CosetSystem, RepSet
from .freiman import smallest_ap_cover
from .rectify import rectify_fourier
from .sets import ModSet

__all__ = [
    "TwoCarryResult",
    "two_carry_classify",
    "canonical_forms",
    "affine_images",
    "endpoint_witness_carries",
    "EXHAUSTIVE_CROSSCHECK_LIMIT",
]

EXHAUSTIVE_CROSSCHECK_LIMIT = 13


@dataclass
class TwoCarryResult:
    distinct_count: int
    distinct_values: tuple
    classified: bool
    form: Optional[str] = None  # "0..p-1" or "1..p"
    c: Optional[int] = None
    d: Optional[int] = None
    info: dict = field(default_factory=dict)


def canonical_forms(p: int) -> dict[str, frozenset]:
    return {"0..p-1": frozenset(range(p)), "1..p": frozenset(range(1, p + 1))}


def affine_images(p: int) -> set[frozenset]:
    """All sets c*F + d with F a canonical form, c a unit mod p^2 and d in p(Z/p^2)."""
    m = p * p
    out = set()
    for form in canonical_forms(p).values():
        for c in range(1, m):
            if gcd(c, m) != 1:
                continue
            for d in range(0, m, p):
                out.add(frozenset((c * x + d) % m for x in form))
    return out


def _scan(elements: frozenset, p: int):
    m = p * p
    forms = canonical_forms(p)
    for c in range(1, m):
        if gcd(c, m) != 1:
            continue
        for d in range(0, m, p):
            image = frozenset((c * x + d) % m for x in elements)
            for name, f in forms.items():
                if image == f:
                    return name, c, d
    return None


def _via_rectification(elements: frozenset, p: int):
    """Rectify, straighten the AP into consecutive residues, then fix the start mod p."""
    m = p * p
    a = ModSet(m, elements)
    rect = rectify_fourier(a, p)
    if not rect.success:
        return None
    ap = smallest_ap_cover(rect.image, p + 1)
    if ap is None or gcd(ap.diff, m) != 1:
        return None
    gamma = pow(ap.diff, -1, m) * rect.c % m
    image = {gamma * x % m for x in elements}
    starts = [x for x in image if (x - 1) % m not in image]
    if len(starts) != 1:
        return None
    u = starts[0]
    if u % p == 0:
        return "0..p-1", gamma, (-u) % m
    if u % p == 1:
        return "1..p", gamma, (1 - u) % m
    raise InvariantViolation(f"interval starting at {u} (residue {u % p} mod {p}) has two carries")


def two_carry_classify(system, reps) -> TwoCarryResult:
    """Classify a representative set whose carry table has exactly two distinct entries.

    ``system`` may be a CosetSystem for p(Z/p^2) or the prime p itself.
    """
    if not isinstance(system, CosetSystem):
        system = digit_system(int(system))
    p = system.index
    tab = carry_table(system, reps if isinstance(reps, RepSet) else system.rep_set_from_elements(reps))
    elements = frozenset(tab.reps.reps)
    distinct = tab.distinct_values
    info: dict = {}
    if p == 2:
        # 2x2 tables: every set is an affine image of {0, 1}
        found = _scan(elements, p)
        info["note"] = "p = 2 classified as {0, 1} regardless of the carry count"
        name, c, d = found
        return TwoCarryResult(len(distinct), distinct, True, name, c, d, info)
    if len(distinct) != 2:
        return TwoCarryResult(len(distinct), distinct, False, info=info)

    via = _via_rectification(elements, p)
    info["rectification"] = via
    if p <= EXHAUSTIVE_CROSSCHECK_LIMIT:
        scan = _scan(elements, p)
        info["scan"] = scan
        if scan is None or via is None:
            raise InvariantViolation(f"two-carry set {sorted(elements)} not classified "
                                     f"(scan={scan}, rectification={via})")
        name, c, d = scan
    else:
        if via is None:
            raise InvariantViolation(f"two-carry set {sorted(elements)} not classified by rectification")
        name, c, d = via
    # whichever route produced (c, d), it must map A onto the named form
    m = p * p
    if frozenset((c * x + d) % m for x in elements) != canonical_forms(p)[name]:
        raise InvariantViolation("classification transform does not reproduce the canonical form")
    return TwoCarryResult(2, distinct, True, name, c, d, info)


def endpoint_witness_carries(p: int, u: int) -> tuple[int, int, int]:
    """Carries of three sums in A = {u, ..., u+p-1} when u = i (mod p), 2 <= i <= p-1:
    (u+p-1)+(u+p-1), u+u and (u+p-1)+u.  Returns them from the carry table."""
    i = u % p
    if not 2 <= i <= p - 1:
        raise ValueError("the endpoint argument needs u = i (mod p) with 2 <= i <= p-1")
    system = digit_system(p)
    m = p * p
    reps = system.rep_set_from_elements(range(u, u + p))
    tab = carry_table(system, reps)
    coset = system.coset_of
    top, bottom = (u + p - 1) % m, u % m
    pick = lambda x, y: int(tab.entries[coset[x], coset[y]])
    return pick(top, top), pick(bottom, bottom), pick(top, bottom)

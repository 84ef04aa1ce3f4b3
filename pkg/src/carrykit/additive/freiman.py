"""Freiman-type structure checks: the 3k-3 theorem in Z, the 2.4 theorem in Z/p,
and Freiman isomorphism testing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .sets import IntSet, ModSet, sumset

__all__ = [
    "AP",
    "FreimanResult",
    "smallest_ap_cover",
    "freiman_3k3_check",
    "freiman_24_check",
    "freiman_iso_check",
    "is_prime",
]


@dataclass(frozen=True)
class AP:
    start: int
    diff: int
    length: int
    modulus: Optional[int] = None

    def elements(self) -> tuple[int, ...]:
        vals = [self.start + t * self.diff for t in range(self.length)]
        if self.modulus is not None:
            vals = [v % self.modulus for v in vals]
        return tuple(vals)


@dataclass
class FreimanResult:
    applicable: bool
    k: int
    sumset_size: int
    excess: int  # b in |A+A| = 2k - 1 + b
    ap: Optional[AP] = None
    counterexample: bool = False

    @property
    def bound_length(self) -> int:
        return self.k + self.excess


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def smallest_ap_cover(a: Sequence[int], max_length: int) -> Optional[AP]:
    """First AP (by common difference, smallest first) of length <= max_length containing A."""
    el = sorted(set(a))
    if len(el) == 1:
        return AP(el[0], 1, 1)
    lo, span = el[0], el[-1] - el[0]
    for d in range(1, span + 1):
        if all((x - lo) % d == 0 for x in el):
            length = span // d + 1
            if length <= max_length:
                return AP(lo, d, length)
    return None


def freiman_3k3_check(a) -> FreimanResult:
    """If |A+A| = 2k-1+b <= 3k-4, exhibit an AP of length at most k+b containing A."""
    a = a if isinstance(a, IntSet) else IntSet(a)
    k = len(a)
    if k < 3:
        raise ValueError("Freiman's 3k-3 theorem needs |A| >= 3")
    size = len(sumset(a, a))
    excess = size - (2 * k - 1)
    if size > 3 * k - 4:
        return FreimanResult(False, k, size, excess)
    ap = smallest_ap_cover(a.elements, k + excess)
    return FreimanResult(True, k, size, excess, ap, counterexample=ap is None)


def _cyclic_cover(residues: Sequence[int], p: int) -> tuple[int, int]:
    """Shortest cyclic interval of Z/p containing the residues: (start, length)."""
    el = sorted(set(residues))
    if len(el) == 1:
        return el[0], 1
    gaps = [((el[(i + 1) % len(el)] - el[i]) % p, i) for i in range(len(el))]
    gap, i = max(gaps, key=lambda t: (t[0], -t[1]))
    start = el[(i + 1) % len(el)]
    return start, p - gap + 1


def freiman_24_check(a, p: int) -> FreimanResult:
    """For |A| = k <= p/35 and |A+A| = 2k-1+b <= 2.4k - 3, exhibit an AP of Z/p of
    length at most k+b containing A."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = a if isinstance(a, ModSet) else ModSet(p, a)
    if a.modulus != p:
        raise ValueError("set modulus differs from p")
    k = len(a)
    size = len(sumset(a, a))
    excess = size - (2 * k - 1)
    # k <= p/35 and size <= 12k/5 - 3, both cross-multiplied
    if 35 * k > p or 5 * size > 12 * k - 15:
        return FreimanResult(False, k, size, excess)
    for d in range(1, p):
        inv = pow(d, -1, p)
        start, length = _cyclic_cover([inv * x % p for x in a.elements], p)
        if length <= k + excess:
            return FreimanResult(True, k, size, excess, AP(start * d % p, d, length, p))
    return FreimanResult(True, k, size, excess, None, counterexample=True)


def freiman_iso_check(a: Sequence[int], b: Sequence[int], mapping: Mapping[int, int] | Sequence[int],
                      modulus_a: int | None = None, modulus_b: int | None = None) -> bool:
    """Whether ``mapping`` is a Freiman isomorphism: x+y = z+w in A iff the images
    satisfy the same relation in B.  ``None`` moduli mean the integers."""
    a = list(a)
    if not isinstance(mapping, Mapping):
        mapping = dict(zip(a, mapping))
    if len(set(a)) != len(a) or set(mapping) != set(a):
        raise ValueError("mapping must be defined exactly on the distinct elements of A")
    images = [mapping[x] for x in a]
    if len(set(images)) != len(images) or set(images) != set(b):
        raise ValueError("mapping is not a bijection onto B")

    def add(x, y, m):
        return x + y if m is None else (x + y) % m

    # the quadruple relation holds in both iff pair sums induce the same partition of A^2
    forward: dict = {}
    backward: dict = {}
    for x in a:
        for y in a:
            s = add(x, y, modulus_a)
            t = add(mapping[x], mapping[y], modulus_b)
            if forward.setdefault(s, t) != t or backward.setdefault(t, s) != s:
                return False
    return True

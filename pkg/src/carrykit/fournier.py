"""Sym sets and near-subgroup extraction for finite subsets of a finite group.

``Sym_{1-eps}(A) = {x : |A ∩ Ax| >= (1-eps)|A|}``.  Overlaps |A ∩ Ax| for every x
are computed at once from the Cayley table; all threshold comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .approx_hom import InvariantViolation
from .groups import FiniteGroup

__all__ = [
    "as_fraction",
    "overlaps",
    "c_score_set",
    "sym_set",
    "SymProfile",
    "sym_profile",
    "FournierReport",
    "fournier_extract",
    "sym_product_check",
    "DELTA_MAX",
]

DELTA_MAX = Fraction(1, 60)
ETA = Fraction(1, 20)


def as_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, decimal string or float (via its shortest repr)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _member(a: Iterable[int], g: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    idx = np.array(sorted(set(int(x) for x in a)), dtype=np.int64)
    if idx.size == 0:
        raise ValueError("set must be non-empty")
    if idx[0] < 0 or idx[-1] >= g.order:
        raise ValueError(f"set elements must lie in 0..{g.order - 1}")
    member = np.zeros(g.order, dtype=bool)
    member[idx] = True
    return idx, member


def overlaps(a: Iterable[int], g: FiniteGroup) -> np.ndarray:
    """``out[x] = |A ∩ Ax|`` for every x in G."""
    idx, member = _member(a, g)
    return member[g.table[idx, :]].sum(axis=0)


def c_score_set(a: Iterable[int], g: FiniteGroup) -> Fraction:
    """C(A) = |{(a1, a2) in A^2 : a1 a2 in A}| / |A|^2."""
    idx, member = _member(a, g)
    good = int(member[g.table[np.ix_(idx, idx)]].sum())
    return Fraction(good, len(idx) ** 2)


def _threshold_mask(ov: np.ndarray, size: int, eps: Fraction) -> np.ndarray:
    if not 0 <= eps <= 1:
        raise ValueError(f"epsilon must lie in [0, 1], got {eps}")
    # ov >= (1 - eps) * size, cross-multiplied
    return ov * eps.denominator >= (eps.denominator - eps.numerator) * size


def sym_set(a: Iterable[int], epsilon, g: FiniteGroup) -> frozenset[int]:
    a = list(a)
    eps = as_fraction(epsilon)
    ov = overlaps(a, g)
    size = len(set(a))
    return frozenset(int(x) for x in np.flatnonzero(_threshold_mask(ov, size, eps)))


@dataclass
class SymProfile:
    base: frozenset
    sets: dict  # epsilon -> frozenset
    overlap_with_base: dict  # epsilon -> |A ∩ Sym|

    def sizes(self) -> dict:
        return {e: len(s) for e, s in self.sets.items()}


def sym_profile(a: Iterable[int], grid: Iterable, g: FiniteGroup) -> SymProfile:
    a = frozenset(int(x) for x in a)
    ov = overlaps(a, g)
    sets, inter = {}, {}
    for e in grid:
        eps = as_fraction(e)
        s = frozenset(int(x) for x in np.flatnonzero(_threshold_mask(ov, len(a), eps)))
        sets[eps] = s
        inter[eps] = len(s & a)
    return SymProfile(a, sets, inter)


@dataclass
class FournierReport:
    delta: Fraction
    in_regime: bool
    subgroup: Optional[tuple] = None
    checks: dict = field(default_factory=dict)
    eta: Fraction = ETA
    size: Optional[int] = None
    overlap: Optional[int] = None


def fournier_extract(a: Iterable[int], g: FiniteGroup, eta=ETA) -> FournierReport:
    """Extract the subgroup K = Sym_{1-2 eta}(A) when delta = 1 - C(A) is small.

    With the default eta = 1/20 the regime is delta <= 1/60 and the guarantees are
    |K| <= 10|A|/9 and |A ∩ K| >= (1 - 5 delta)|A|.  Other values of eta are for
    exploration: the regime becomes delta < eta (1 - 1/(2 (1 - 5 eta))), the size
    bound |A|/(1 - 2 eta) and the overlap bound (1 - delta/(4 eta))|A|.
    """
    a = frozenset(int(x) for x in a)
    eta = as_fraction(eta)
    n = len(a)
    delta = 1 - c_score_set(a, g)
    if eta == ETA:
        in_regime = delta <= DELTA_MAX
    else:
        if not 0 < eta < Fraction(1, 10):
            raise ValueError("eta must lie in (0, 1/10)")
        in_regime = delta < eta * (1 - 1 / (2 * (1 - 5 * eta)))
    if not in_regime:
        return FournierReport(delta, False, eta=eta)

    ov = overlaps(a, g)
    k_mask = _threshold_mask(ov, n, 2 * eta)
    wide_mask = _threshold_mask(ov, n, 4 * eta)
    k_set = frozenset(int(x) for x in np.flatnonzero(k_mask))
    overlap = len(k_set & a)
    checks = {
        "stable": bool(np.array_equal(k_mask, wide_mask)),
        "subgroup": g.is_subgroup(k_set),
        # |K| <= |A| / (1 - 2 eta)
        "size_ok": len(k_set) * (1 - 2 * eta) <= n,
        # |A ∩ K| >= (1 - delta / (4 eta)) |A|
        "overlap_ok": overlap >= (1 - delta / (4 * eta)) * n,
    }
    if not all(checks.values()):
        failed = [k for k, ok in checks.items() if not ok]
        raise InvariantViolation(f"near-subgroup extraction failed {failed} at delta={delta}")
    return FournierReport(delta, True, tuple(sorted(k_set)), checks, eta, len(k_set), overlap)


def sym_product_check(a: Iterable[int], eps1, eps2, g: FiniteGroup) -> bool:
    """Whether Sym_{1-eps1}(A) * Sym_{1-eps2}(A) lies inside Sym_{1-eps1-eps2}(A)."""
    e1, e2 = as_fraction(eps1), as_fraction(eps2)
    if e1 + e2 > 1:
        raise ValueError("need eps1 + eps2 <= 1")
    a = list(a)
    s1 = np.array(sorted(sym_set(a, e1, g)), dtype=np.int64)
    s2 = np.array(sorted(sym_set(a, e2, g)), dtype=np.int64)
    target = np.zeros(g.order, dtype=bool)
    target[list(sym_set(a, e1 + e2, g))] = True
    if s1.size == 0 or s2.size == 0:
        return True
    return bool(target[g.table[np.ix_(s1, s2)]].all())

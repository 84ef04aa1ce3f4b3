"""Rectification of small-doubling representative sets of p(Z/p^2) in Z/p^2.

Goal: a unit c and a translation d with every element of cA + d in (-p^2/4, p^2/4],
so that A behaves like a set of integers.  Two independent routes:

* ``fourier``: dilate by the frequency of the largest nonzero Fourier coefficient,
  translate so the densest half-circle arc sits around 0, then extend from the
  part already inside the window to all of A via the AP structure of that part.
* ``exhaustive``: scan every (c, d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

import numpy as np

from ..approx_hom import InvariantViolation
from .fourier import SLACK, arc_concentration, fourier_profile
from .freiman import smallest_ap_cover
from .sets import ModSet, in_quarter_window, signed_residue, sumset

__all__ = [
    "HypothesisNotMet",
    "RectifyResult",
    "rectify",
    "rectify_fourier",
    "rectify_exhaustive",
    "concentration_bound",
    "is_rep_set",
    "extension_dichotomy",
]


class HypothesisNotMet(ValueError):
    """The input does not satisfy |A+A| <= 2|A| for a representative set."""


@dataclass
class RectifyResult:
    success: bool
    c: Optional[int]
    d: Optional[int]  # signed residue
    image: Optional[tuple]  # signed elements of cA + d, ascending
    method: str
    info: dict = field(default_factory=dict)


def concentration_bound(p: int) -> float:
    """(p/2) (1 + sqrt((p - 2) / (2 (p - 1))))."""
    return p / 2 * (1 + math.sqrt((p - 2) / (2 * (p - 1))))


def is_rep_set(a: ModSet, p: int) -> bool:
    return a.modulus == p * p and len(a) == p and len({x % p for x in a.elements}) == p


def _check_input(a: ModSet, p: int) -> int:
    if not is_rep_set(a, p):
        raise HypothesisNotMet(f"not a set of coset representatives of {p}(Z/{p * p})")
    s = len(sumset(a, a))
    if s > 2 * len(a):
        raise HypothesisNotMet(f"|A+A| = {s} exceeds 2|A| = {2 * len(a)}")
    return s


def _image(a: ModSet, c: int, d: int) -> tuple[int, ...]:
    m = a.modulus
    return tuple(sorted(signed_residue(c * x + d, m) for x in a.elements))


def _all_inside(a: ModSet, c: int, d: int) -> bool:
    m = a.modulus
    return all(in_quarter_window(c * x + d, m) for x in a.elements)


def rectify_exhaustive(a: ModSet, p: int) -> RectifyResult:
    """Scan all units c (ascending); for the first c that works pick the most centred d."""
    doubling = _check_input(a, p)
    m = p * p
    el = np.array(a.elements, dtype=np.int64)
    units = np.array([c for c in range(1, m) if gcd(c, m) == 1], dtype=np.int64)
    ds = np.arange(m, dtype=np.int64)
    vals = (units[:, None, None] * el[None, None, :] + ds[None, :, None]) % m
    signed = np.where(2 * vals > m, vals - m, vals)
    inside = ((4 * signed > -m) & (4 * signed <= m)).all(axis=2)
    ok_c = np.flatnonzero(inside.any(axis=1))
    if len(ok_c) == 0:
        return RectifyResult(False, None, None, None, "exhaustive", {"doubling": doubling})
    ci = int(ok_c[0])
    c = int(units[ci])
    spread = np.abs(signed[ci]).max(axis=1)
    cands = [int(d) for d in np.flatnonzero(inside[ci])]
    d = min(cands, key=lambda d: (int(spread[d]), signed_residue(d, m)))
    d = signed_residue(d, m)
    return RectifyResult(True, c, d, _image(a, c, d), "exhaustive",
                         {"doubling": doubling, "feasible_pairs": int(inside.sum())})


def extension_dichotomy(m: int, doubling: int, ell: int) -> dict:
    """The two escape clauses when the best window count ell is below |A|:
    ell < (|2A| + 4)/3, or m <= 6(|2A| - ell)."""
    return {"small_ell": 3 * ell < doubling + 4, "small_modulus": m <= 6 * (doubling - ell)}


def rectify_fourier(a: ModSet, p: int) -> RectifyResult:
    doubling = _check_input(a, p)
    m = p * p
    info: dict = {"doubling": doubling}
    if p == 2:
        x0, x1 = a.elements
        c = pow((x1 - x0) % m, -1, m)
        d = signed_residue(-c * x0, m)
        return RectifyResult(_all_inside(a, c, d), c, d, _image(a, c, d), "fourier", info)

    prof = fourier_profile(a)
    r = prof.r_star
    info.update(r_star=r, magnitude=prof.magnitude)
    if r % p == 0:
        raise InvariantViolation(f"largest nonzero Fourier coefficient at r={r}, a multiple of p")
    c = r % m
    dilated = [c * x % m for x in a.elements]
    points = [complex(math.cos(2 * math.pi * x / m), math.sin(2 * math.pi * x / m)) for x in dilated]
    arc = arc_concentration(points, math.pi)
    info.update(arc_count=arc.count, arc_bound=(p + arc.resultant) / 2,
                concentration_bound=concentration_bound(p))
    if arc.count < (p + arc.resultant) / 2 - SLACK:
        raise InvariantViolation("half-circle arc holds fewer points than the arc lemma guarantees")
    # centre the arc on 0: offsets from the arc's first point span at most m/2
    in_arc = [dilated[i] for i in arc.indices]
    start = min(in_arc, key=lambda x: abs((2 * math.pi * x / m - arc.start_angle + math.pi)
                                          % (2 * math.pi) - math.pi))
    offsets = [(x - start) % m for x in in_arc]
    span = max(offsets)
    d = signed_residue(-(start + span // 2), m)
    inside = [x for x in a.elements if in_quarter_window(c * x + d, m)]
    info["concentration"] = len(inside)
    if len(inside) < concentration_bound(p) - SLACK:
        raise InvariantViolation(f"concentration {len(inside)} below {concentration_bound(p):.4f}")

    rounds = 0
    while len(inside) < p:
        ell = len(inside)
        info.setdefault("dichotomy", extension_dichotomy(m, doubling, ell))
        block = [signed_residue(c * x + d, m) for x in inside]
        ap = smallest_ap_cover(block, m)
        if ap is None or gcd(ap.diff, m) != 1:
            break
        g_inv = pow(ap.diff, -1, m)
        half = (ap.length - 1) // 2
        c = g_inv * c % m
        d = signed_residue(g_inv * (d - ap.start) - half, m)
        grown = [x for x in a.elements if in_quarter_window(c * x + d, m)]
        rounds += 1
        if len(grown) <= ell:
            break
        inside = grown
    info["extension_rounds"] = rounds
    ok = len(inside) == p
    return RectifyResult(ok, c if ok else None, d if ok else None,
                         _image(a, c, d) if ok else None, "fourier", info)


def rectify(a, p: int, method: str = "both") -> RectifyResult:
    """Rectify ``a``; with ``method="both"`` run both routes and require agreement."""
    if not isinstance(a, ModSet):
        a = ModSet(p * p, a)
    if method == "exhaustive":
        return rectify_exhaustive(a, p)
    if method == "fourier":
        return rectify_fourier(a, p)
    if method != "both":
        raise ValueError(f"unknown rectification method {method!r}")
    fr = rectify_fourier(a, p)
    ex = rectify_exhaustive(a, p)
    if fr.success != ex.success:
        raise InvariantViolation(f"rectification routes disagree on {a.elements}: "
                                 f"fourier={fr.success}, exhaustive={ex.success}")
    fr.info["exhaustive"] = (ex.c, ex.d)
    return fr

"""Pollard's truncated representation sums, its maximum-multiplicity corollary,
Cauchy-Davenport, and solution counts for a1 + a2 = a3."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .sets import ModSet, centered_interval, has_unit_differences, rep_counts, sumset

__all__ = [
    "pollard_S",
    "PollardVerdict",
    "pollard_check",
    "max_rep_check",
    "solution_count",
    "cauchy_davenport_check",
    "interval_max_rep",
]


def _modsets(sets, modulus=None) -> list[ModSet]:
    out = []
    for s in sets:
        if isinstance(s, ModSet):
            out.append(s)
        elif modulus is None:
            raise ValueError("plain element lists need an explicit modulus")
        else:
            out.append(ModSet(modulus, s))
    return out


def pollard_S(sets: Sequence[ModSet], r: int) -> int:
    """S(A_1, ..., A_k, r) = sum over x of min(r, n(x, A_1, ..., A_k))."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    return int(np.minimum(rep_counts(*sets), r).sum())


def _intervals_like(sets: Sequence[ModSet]) -> list[ModSet]:
    return [centered_interval(len(s), s.modulus) for s in sets]


def _check_hypothesis(sets: Sequence[ModSet]) -> int:
    good = sum(1 for s in sets if has_unit_differences(s))
    if good < len(sets) - 1:
        raise ValueError(f"only {good} of {len(sets)} sets have pairwise differences coprime "
                         f"to the modulus; at least {len(sets) - 1} are required")
    return good


@dataclass
class PollardVerdict:
    value: int
    interval_value: int
    holds: bool
    hypothesis_sets: int


def pollard_check(sets: Sequence, r: int, modulus: int | None = None) -> PollardVerdict:
    """Compare S for the given sets with S for centered intervals of the same sizes."""
    sets = _modsets(sets, modulus)
    good = _check_hypothesis(sets)
    s = pollard_S(sets, r)
    s_int = pollard_S(_intervals_like(sets), r)
    return PollardVerdict(s, s_int, s >= s_int, good)


def max_rep_check(sets: Sequence, modulus: int | None = None) -> PollardVerdict:
    """max_x n(x, A_1..A_k) <= max_x n(x, A'_1..A'_k) for centered intervals A'_i."""
    sets = _modsets(sets, modulus)
    good = _check_hypothesis(sets)
    top = int(rep_counts(*sets).max())
    top_int = int(rep_counts(*_intervals_like(sets)).max())
    return PollardVerdict(top, top_int, top <= top_int, good)


def interval_max_rep(p: int) -> Fraction:
    """(3p^2 + 1)/4, the largest representation count of three centered p-intervals."""
    return Fraction(3 * p * p + 1, 4)


def solution_count(a1: Iterable[int], a2: Iterable[int], a3: Iterable[int], modulus: int | None = None) -> int:
    """Number of (x, y, z) in A1 x A2 x A3 with x + y = z, computed as n(0; A1, A2, -A3)."""
    s1, s2, s3 = _modsets([a1, a2, a3], modulus)
    return int(rep_counts(s1, s2, s3.neg())[0])


def cauchy_davenport_check(a, b, p: int | None = None) -> tuple[int, int, bool]:
    """|A + B| against min(p, |A| + |B| - 1); returns (size, bound, holds)."""
    a, b = _modsets([a, b], p)
    p = a.modulus
    size = len(sumset(a, b))
    bound = min(p, len(a) + len(b) - 1)
    return size, bound, size >= bound

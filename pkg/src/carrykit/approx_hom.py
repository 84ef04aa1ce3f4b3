"""Approximate homomorphisms: exact epsilon, plurality repair and split detection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .carries import carry_score
from .groups import CosetSystem, FiniteGroup, RepSet

__all__ = [
    "SEVEN_NINTHS",
    "InvariantViolation",
    "ApproxHomReport",
    "SplitReport",
    "epsilon_of",
    "tau",
    "tau_limit",
    "bclr_repair",
    "is_homomorphism",
    "split_detector",
]

SEVEN_NINTHS = Fraction(7, 9)


class InvariantViolation(AssertionError):
    """A check that a proven statement guarantees has failed."""


def _as_map(f, g1: FiniteGroup, g2: FiniteGroup) -> np.ndarray:
    arr = np.asarray(f, dtype=np.int64)
    if arr.shape != (g1.order,):
        raise ValueError(f"map must list one value per element of G1 ({g1.order}), got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= g2.order):
        raise ValueError(f"map values must lie in 0..{g2.order - 1}")
    return arr


def _agreement_matrix(f: np.ndarray, g1: FiniteGroup, g2: FiniteGroup) -> np.ndarray:
    lhs = g2.table[f[:, None], f[None, :]]
    rhs = f[g1.table]
    return lhs == rhs


def epsilon_of(f: Sequence[int], g1: FiniteGroup, g2: FiniteGroup) -> Fraction:
    """Fraction of pairs (g, g') with f(g) f(g') = f(g g')."""
    f = _as_map(f, g1, g2)
    good = int(_agreement_matrix(f, g1, g2).sum())
    return Fraction(good, g1.order ** 2)


def is_homomorphism(f: Sequence[int], g1: FiniteGroup, g2: FiniteGroup) -> bool:
    f = _as_map(f, g1, g2)
    return bool(_agreement_matrix(f, g1, g2).all())


def tau(epsilon) -> float:
    """Smaller root of 3x - 6x^2 = 1 - epsilon, for 7/9 < epsilon <= 1."""
    eps = Fraction(epsilon) if not isinstance(epsilon, float) else epsilon
    if eps <= SEVEN_NINTHS:
        raise ValueError(f"tau needs epsilon > 7/9, got {epsilon}")
    if eps > 1:
        raise ValueError(f"epsilon is a probability, got {epsilon}")
    e = float(eps)
    t = (3 - math.sqrt(24 * e - 15)) / 12
    residual = 3 * t - 6 * t * t - (1 - e)
    if abs(residual) >= 1e-12:
        raise ArithmeticError(f"tau residual {residual} too large at epsilon={epsilon}")
    return t


def tau_limit() -> float:
    """Supremum of tau over epsilon > 7/9: (3 - sqrt(11/3)) / 12."""
    return (3 - math.sqrt(11 / 3)) / 12


@dataclass
class ApproxHomReport:
    epsilon: Fraction
    phi: tuple
    well_defined: bool
    is_homomorphism: bool
    agreement: Fraction
    tie_points: tuple
    threshold_met: bool
    tau_float: Optional[float] = None

    @property
    def disagreement(self) -> Fraction:
        return 1 - self.agreement


def bclr_repair(f: Sequence[int], g1: FiniteGroup, g2: FiniteGroup) -> ApproxHomReport:
    """Repair f by taking, at each g, the most frequent value of f(g g') f(g')^-1.

    Ties go to the smallest element id and are recorded in ``tie_points``.
    """
    f = _as_map(f, g1, g2)
    n1, n2 = g1.order, g2.order
    votes = g2.table[f[g1.table], g2.inverses[f][None, :]]  # votes[g, g'] = f(gg') f(g')^-1
    counts = np.zeros((n1, n2), dtype=np.int64)
    rows = np.repeat(np.arange(n1), n1)
    np.add.at(counts, (rows, votes.ravel()), 1)
    phi = counts.argmax(axis=1)
    top = counts[np.arange(n1), phi]
    ties = tuple(int(g) for g in np.flatnonzero((counts == top[:, None]).sum(axis=1) > 1))
    eps = epsilon_of(f, g1, g2)
    agree = Fraction(int((phi == f).sum()), n1)
    met = eps > SEVEN_NINTHS
    return ApproxHomReport(
        epsilon=eps,
        phi=tuple(int(x) for x in phi),
        well_defined=not ties,
        is_homomorphism=is_homomorphism(phi, g1, g2),
        agreement=agree,
        tie_points=ties,
        threshold_met=met,
        tau_float=tau(eps) if met else None,
    )


@dataclass
class SplitReport:
    score: Fraction
    threshold_met: bool
    complement: Optional[tuple] = None
    checks: dict = field(default_factory=dict)
    repair: Optional[ApproxHomReport] = None

    @property
    def verdict(self) -> str:
        if self.complement is not None:
            return "split-verified"
        return "no-guarantee"


def _complement_checks(system: CosetSystem, k_set: frozenset) -> dict:
    g = system.group
    kk = sorted(k_set)
    h = system.subgroup_sorted
    hk = set(g.table[np.ix_(np.array(h), np.array(kk))].ravel().tolist())
    return {
        "subgroup": g.is_subgroup(kk),
        "trivial_intersection": k_set & system.subgroup == {g.identity},
        "size": len(kk) == system.index,
        "hk_equals_g": len(hk) == g.order,
    }


def split_detector(system: CosetSystem, reps) -> SplitReport:
    """Look for a complement K of H using the section coset -> representative.

    Above C(X) = 7/9 the repaired section must be a homomorphism whose image is
    a complement; any failed check raises :class:`InvariantViolation`.
    """
    if not isinstance(reps, RepSet):
        reps = system.rep_set(reps)
    score = carry_score(system, reps)
    if score <= SEVEN_NINTHS:
        return SplitReport(score, False)
    quotient = system.quotient
    f = np.array(reps.reps, dtype=np.int64)
    report = bclr_repair(f, quotient, system.group)
    if report.epsilon != score:
        raise InvariantViolation(f"section epsilon {report.epsilon} differs from C(X) {score}")
    if not report.is_homomorphism:
        raise InvariantViolation("repaired section is not a homomorphism although C(X) > 7/9")
    k_set = frozenset(report.phi)
    checks = _complement_checks(system, k_set)
    if not all(checks.values()):
        failed = [name for name, ok in checks.items() if not ok]
        raise InvariantViolation(f"image of the repaired section fails {failed}")
    if float(report.disagreement) > report.tau_float:
        raise InvariantViolation(f"disagreement {report.disagreement} exceeds tau {report.tau_float}")
    return SplitReport(score, True, tuple(sorted(k_set)), checks, report)

"""Fourier coefficients of subsets of Z/m and the two analytic lemmas used for
rectification: a large nonzero coefficient, and concentration of unit-circle
points on an arc."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .sets import ModSet, sumset

__all__ = [
    "SLACK",
    "FourierProfile",
    "fourier",
    "fourier_profile",
    "max_nonzero_fourier",
    "large_fourier_bound_check",
    "ArcResult",
    "arc_concentration",
    "best_arc",
]

# float comparisons against analytic bounds lean this far toward the theorem
SLACK = 1e-9


def fourier(a: ModSet, r: int) -> complex:
    """Â(r) = sum over a in A of exp(2 pi i r a / m)."""
    m = a.modulus
    return sum(cmath.exp(2j * math.pi * ((r * x) % m) / m) for x in a.elements)


def _coefficients(a: ModSet) -> np.ndarray:
    # numpy's inverse DFT carries the +i sign and a 1/m factor
    return np.fft.ifft(a.indicator().astype(float)) * a.modulus


@dataclass
class FourierProfile:
    modulus: int
    set: ModSet
    coefficients: np.ndarray
    r_star: int
    magnitude: float

    def parseval_error(self) -> float:
        """Relative error of (1/m) sum |Â(r)|^2 = |A|."""
        lhs = float(np.sum(np.abs(self.coefficients) ** 2)) / self.modulus
        n = len(self.set)
        return abs(lhs - n) / max(n, 1)

    def rows(self):
        for r, c in enumerate(self.coefficients):
            yield r, float(c.real), float(c.imag), float(abs(c))


def _argmax_nonzero(mags: np.ndarray) -> int:
    if len(mags) < 2:
        raise ValueError("Z/1 has no nonzero frequency")
    top = mags[1:].max()
    # conjugate frequencies tie exactly in theory; take the smallest r within rounding
    return int(np.flatnonzero(mags[1:] >= top - SLACK)[0]) + 1


def fourier_profile(a: ModSet) -> FourierProfile:
    coeffs = _coefficients(a)
    mags = np.abs(coeffs)
    r = _argmax_nonzero(mags)
    return FourierProfile(a.modulus, a, coeffs, r, float(mags[r]))


def max_nonzero_fourier(a: ModSet) -> tuple[int, float]:
    """(r*, |Â(r*)|) maximising over r != 0, smallest r on ties."""
    prof = fourier_profile(a)
    return prof.r_star, prof.magnitude


def large_fourier_bound_check(a: ModSet) -> dict:
    """max_{r != 0} |Â(r)| >= |A| sqrt(alpha1 (1 - alpha2) / (alpha2 (1 - alpha1)))."""
    m, n = a.modulus, len(a)
    if n == 0 or n == m:
        raise ValueError("need a non-empty proper subset of Z/m")
    alpha1 = n / m
    alpha2 = len(sumset(a, a)) / m
    bound = n * math.sqrt(alpha1 * (1 - alpha2) / (alpha2 * (1 - alpha1)))
    r, actual = max_nonzero_fourier(a)
    return {"alpha1": alpha1, "alpha2": alpha2, "bound": bound, "actual": actual,
            "r_star": r, "holds": actual >= bound - SLACK}


@dataclass
class ArcResult:
    start_angle: float
    length: float
    count: int
    indices: tuple
    resultant: float  # |z_1 + ... + z_m|
    threshold: float  # 2n - m + 2(m - n) cos(phi/2)
    hypothesis: bool  # resultant > threshold
    n: int

    @property
    def found(self) -> bool:
        return self.count > self.n

    @property
    def refuted(self) -> bool:
        return self.hypothesis and not self.found


def _angles(points: Sequence[complex]) -> np.ndarray:
    z = np.asarray(points, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1) > SLACK):
        raise ValueError("all points must lie on the unit circle")
    return np.mod(np.angle(z), 2 * math.pi)


def best_arc(points: Sequence[complex], phi: float) -> tuple[float, int, tuple]:
    """Closed arc of length phi holding the most points: (start angle, count, indices).

    Sweeps windows starting at each point angle; an optimal arc can always be
    rotated to start at a point.
    """
    ang = _angles(points)
    m = len(ang)
    order = np.argsort(ang, kind="stable")
    sorted_ang = ang[order]
    ext = np.concatenate([sorted_ang, sorted_ang + 2 * math.pi])
    best = (0.0, 0, ())
    j = 0
    for i in range(m):
        j = max(j, i)
        while j + 1 < i + m and ext[j + 1] - ext[i] <= phi + SLACK:
            j += 1
        count = j - i + 1
        if count > best[1]:
            idx = tuple(sorted(int(order[t % m]) for t in range(i, j + 1)))
            best = (float(sorted_ang[i]), count, idx)
    return best


def arc_concentration(points: Sequence[complex], phi: float = math.pi, n: int | None = None) -> ArcResult:
    """If |sum z| > 2n - m + 2(m - n) cos(phi/2), some arc of length phi holds more than n points.

    With phi = pi and n omitted, n is the largest integer below (m + |sum z|)/2,
    so a found arc holds at least half of (m + |sum z|) points.
    """
    m = len(points)
    resultant = abs(complex(np.sum(np.asarray(points, dtype=complex))))
    if n is None:
        if not math.isclose(phi, math.pi):
            raise ValueError("n may only be omitted for arcs of length pi")
        n = math.ceil((m + resultant) / 2 - SLACK) - 1
    threshold = 2 * n - m + 2 * (m - n) * math.cos(phi / 2)
    start, count, idx = best_arc(points, phi)
    return ArcResult(start, phi, count, idx, resultant, threshold, resultant > threshold, n)

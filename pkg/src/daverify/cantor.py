"""Middle-thirds Cantor measure on the circle: Fourier coefficients, the
weighted square-summability witness, and Riesz energy estimates.

The measure sigma is the self-similar probability measure on [0, 1) (read as
the circle R/Z) satisfying sigma = (1/2) sigma S_0^{-1} + (1/2) sigma S_1^{-1}
with S_0(t) = t/3 and S_1(t) = t/3 + 2/3. Its Fourier coefficients

    sigma_hat(n) = integral exp(-2 pi i n t) dsigma(t)
                 = prod_{j>=1} (1 + exp(-4 pi i n / 3^j)) / 2

are real, and sigma_hat(3n) = sigma_hat(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

Placement = Literal["midpoint", "left"]

# First absolute moment of sigma about a cell's barycenter is at most the
# cell half-width; about the left endpoint it is the measure's mean, 1/2,
# scaled by the cell width. These drive the a-priori table tolerances below.
_MEAN = 0.5
_VARIANCE = 0.125  # E[(t - 1/2)^2] under sigma

_MAX_LEVEL = 24  # 2^24 atoms is the largest table we allow in memory


def _check_level(level: int) -> None:
    if not 0 <= level <= _MAX_LEVEL:
        raise ValueError(f"level must be in [0, {_MAX_LEVEL}], got {level}")


def atoms(level: int, placement: Placement = "midpoint") -> np.ndarray:
    """The 2^level equal-weight atom positions of the level-`level` IFS
    discretization, as float64 in [0, 1).

    "left" places each atom at its cell's left endpoint (the image of 0 under
    the digit maps); "midpoint" places it at the cell barycenter, which
    cancels the first-order term of the discretization error and is the
    default everywhere accuracy matters.
    """
    _check_level(level)
    if placement not in ("midpoint", "left"):
        raise ValueError(f"unknown placement {placement!r}")
    idx = np.arange(2 ** level, dtype=np.int64)
    t = np.zeros(len(idx), dtype=np.float64)
    for j in range(level):
        digit = (idx >> j) & 1          # 0 or 1; 1 selects the offset 2/3 branch
        t += (2.0 * digit) * 3.0 ** (-(j + 1))
    if placement == "midpoint":
        t += 0.5 * 3.0 ** (-level)
    return t


def circle_atoms(level: int, placement: Placement = "midpoint") -> np.ndarray:
    """Atom positions pushed onto the unit circle, exp(2 pi i t)."""
    return np.exp(2j * np.pi * atoms(level, placement))


def support_measure_zero(level: int) -> float:
    """Lebesgue measure of the level-`level` cover of the support, (2/3)^level.

    Tends to 0, witnessing that sigma is singular."""
    if level < 0:
        raise ValueError("level must be >= 0")
    return (2.0 / 3.0) ** level


def recursion_depth(n: int, eps: float) -> int:
    """Depth k such that truncating the product at scale |n|/3^k changes the
    value by at most eps; uses the first-moment bound |sigma_hat(x) - 1|
    <= 2 pi |x| * 1/2."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    k = 0
    x = abs(float(n))
    while math.pi * x > eps:
        x /= 3.0
        k += 1
    return k


def fourier_coeff(n: int, eps: float = 1e-12) -> complex:
    """sigma_hat(n) by the self-similarity recursion, to additive accuracy eps.

    sigma_hat(xi) = (1 + exp(-4 pi i xi / 3)) / 2 * sigma_hat(xi / 3); the
    recursion stops once pi |xi| <= eps, where sigma_hat(xi) = 1 + O(eps).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    v = 1.0 + 0j
    x = float(n)
    while math.pi * abs(x) > eps:
        v *= 0.5 * (1.0 + np.exp(-4j * np.pi * (x / 3.0)))
        x /= 3.0
    return complex(v)


@dataclass(frozen=True)
class FourierTable:
    """sigma_hat(n) for |n| <= max_n, with the builder's accuracy estimate."""

    max_n: int
    coeffs: dict[int, complex]
    tolerance: float
    source: str

    def __getitem__(self, n: int) -> complex:
        try:
            return self.coeffs[n]
        except KeyError:
            raise ValueError(f"|n| = {abs(n)} outside table range {self.max_n}")

    def symmetry_defect(self) -> float:
        """max |sigma_hat(-n) - conj(sigma_hat(n))| over the table."""
        return max(
            abs(self.coeffs[-n] - self.coeffs[n].conjugate())
            for n in range(self.max_n + 1)
        )

    def max_abs(self) -> float:
        return max(abs(v) for v in self.coeffs.values())

    def csv_rows(self) -> list[list]:
        rows = []
        for n in range(-self.max_n, self.max_n + 1):
            v = self.coeffs[n]
            rows.append([n, v.real, v.imag, abs(v)])
        return rows


def fourier_table_recursion(max_n: int, eps: float = 1e-10) -> FourierTable:
    """Table of sigma_hat(n), |n| <= max_n, by the vectorized recursion."""
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    if eps <= 0:
        raise ValueError("eps must be positive")
    ns = np.arange(-max_n, max_n + 1, dtype=np.int64)
    x = ns.astype(np.float64)
    v = np.ones(len(ns), dtype=np.complex128)
    depth = recursion_depth(max_n, eps)
    for _ in range(depth):
        v *= 0.5 * (1.0 + np.exp(-4j * np.pi * (x / 3.0)))
        x /= 3.0
    coeffs = {int(n): complex(val) for n, val in zip(ns, v)}
    return FourierTable(max_n=max_n, coeffs=coeffs, tolerance=eps, source="recursion")


def fourier_table_ifs(max_n: int, level: int = 14,
                      placement: Placement = "midpoint") -> FourierTable:
    """Table of sigma_hat(n), |n| <= max_n, by direct summation over the
    level-`level` atomic discretization. Independent of the recursion route.

    The a-priori accuracy estimate is first order in the cell width for
    left-endpoint atoms and second order for midpoint atoms.
    """
    if max_n < 0:
        raise ValueError("max_n must be >= 0")
    _check_level(level)
    t = atoms(level, placement)
    ns = np.arange(-max_n, max_n + 1, dtype=np.int64)
    coeffs: dict[int, complex] = {}
    block = 64
    for start in range(0, len(ns), block):
        chunk = ns[start:start + block]
        phases = np.exp(-2j * np.pi * chunk[:, None].astype(np.float64) * t[None, :])
        vals = phases.mean(axis=1)
        for n, val in zip(chunk, vals):
            coeffs[int(n)] = complex(val)
    width = 3.0 ** (-level)
    if placement == "midpoint":
        tol = 0.5 * (2.0 * np.pi * max_n * width) ** 2 * _VARIANCE
    else:
        tol = 2.0 * np.pi * max_n * width * _MEAN
    return FourierTable(max_n=max_n, coeffs=coeffs, tolerance=float(tol),
                        source=f"ifs-level-{level}-{placement}")


def _abs_sq_table(n_max: int, eps: float) -> np.ndarray:
    """|sigma_hat(n)|^2 for n = 0..n_max, vectorized recursion in one pass."""
    x = np.arange(n_max + 1, dtype=np.float64)
    v = np.ones(n_max + 1, dtype=np.complex128)
    depth = recursion_depth(n_max, eps)
    for _ in range(depth):
        v *= 0.5 * (1.0 + np.exp(-4j * np.pi * (x / 3.0)))
        x /= 3.0
    return np.abs(v) ** 2


def weighted_fourier_sum(N: int, eps: float = 1e-9) -> float:
    """Partial sum S(N) = sum_{n=0..N} |sigma_hat(n)|^2 / (n+1)^(1/2).

    The full series converges because the energy dimension of sigma exceeds
    1/2; the partial sums are the computable witness of that.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    sq = _abs_sq_table(N, eps)
    weights = (np.arange(N + 1, dtype=np.float64) + 1.0) ** -0.5
    return float(np.sum(sq * weights))


def weighted_fourier_partials(Ns: list[int], eps: float = 1e-9) -> dict[int, float]:
    """S(N) for each N in Ns, sharing one coefficient table (single pass)."""
    if not Ns:
        return {}
    if any(N < 0 for N in Ns):
        raise ValueError("all N must be >= 0")
    n_max = max(Ns)
    sq = _abs_sq_table(n_max, eps)
    weights = (np.arange(n_max + 1, dtype=np.float64) + 1.0) ** -0.5
    csum = np.cumsum(sq * weights)
    return {N: float(csum[N]) for N in Ns}


@dataclass(frozen=True)
class EnergyEstimate:
    level: int
    lower: float
    upper: float

    def to_json(self) -> dict:
        return {"level": self.level, "lower": self.lower, "upper": self.upper}


# Pair distances within one level-L cell scale by 1/3 while pair mass scales
# by 1/4 per level, so the omitted same-cell energy at level L is a geometric
# fraction q^L of the total with q = 2 * 3^(1/2) / 4 = sqrt(3)/2.
_ENERGY_Q = math.sqrt(3.0) / 2.0


def riesz_energy(level: int, placement: Placement = "midpoint") -> EnergyEstimate:
    """Riesz 1/2-energy I(sigma) = double integral |x - y|^(-1/2) dsigma dsigma
    over the circle embedding, estimated from the level-`level` atoms.

    lower: the pair sum over distinct atoms with chordal distance in the
    plane and weight 4^(-level) per ordered pair. It omits the same-atom
    diagonal, hence underestimates.
    upper: closes the omitted contribution by the self-similar geometric
    model lower / (1 - q^level), q = sqrt(3)/2.
    """
    if level < 1:
        raise ValueError("level must be >= 1")
    _check_level(level)
    pts = circle_atoms(level, placement)
    m = len(pts)
    w = 4.0 ** (-level)
    total = 0.0
    block = 2048
    for start in range(0, m, block):
        seg = pts[start:start + block]
        dist = np.abs(seg[:, None] - pts[None, :])
        for i in range(len(seg)):
            dist[i, start + i] = np.inf
        total += float(np.sum(dist ** -0.5))
    lower = w * total
    upper = lower / (1.0 - _ENERGY_Q ** level)
    return EnergyEstimate(level=level, lower=lower, upper=upper)

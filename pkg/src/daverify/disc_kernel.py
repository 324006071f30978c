"""The weighted-disc kernel sequence a_n = 1/||r(z)^n||^2 and its kernel sums.

For d = 2 the weights are the central binomial ratios (2n)! / (4^n (n!)^2),
i.e. the Taylor coefficients of (1 - x)^(-1/2), so the disc space is a
Dirichlet-type space with a divergent kernel on the boundary diagonal.
For d = 4 the weights decay like (n+1)^(-3/2) and the kernel sum converges
everywhere on the closed disc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import format_rational
from .norms import r_power_norm_sq

SUPPORTED_DIMS = (2, 4)


def _check_dim(d: int) -> None:
    if d not in SUPPORTED_DIMS:
        raise ValueError(f"d must be one of {SUPPORTED_DIMS}, got {d}")


@dataclass(frozen=True)
class KernelSequence:
    """Exact and floating views of the weight sequence a_n, n = 0..N."""

    d: int
    N: int
    a_exact: tuple[Fraction, ...]
    a_float: tuple[float, ...]

    def __post_init__(self):
        _check_dim(self.d)
        if self.N < 0 or len(self.a_exact) != self.N + 1 or len(self.a_float) != self.N + 1:
            raise ValueError("inconsistent sequence lengths")

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "N": self.N,
            "a_exact": [format_rational(q) for q in self.a_exact],
            "a_float": list(self.a_float),
        }

    def csv_rows(self) -> list[list]:
        """Rows (n, a_exact, a_float, a_times_power) where the last column is
        a_n (n+1)^((d-1)/2), the bounded normalization."""
        rows = []
        p = (self.d - 1) / 2.0
        for n in range(self.N + 1):
            rows.append([
                n,
                format_rational(self.a_exact[n]),
                self.a_float[n],
                self.a_float[n] * (n + 1.0) ** p,
            ])
        return rows


def build_kernel_sequence(d: int, N: int) -> KernelSequence:
    """Exact a_n = 1/r_power_norm_sq(d, n) for n <= N, with float shadows.

    The exact values are built by the one-step recurrence
    a_{n+1} = a_n * prod_{j=1..d}(dn + j) / (d^d (n+1)^d), which keeps the
    intermediate integers small; a spot check against the closed form guards
    the recurrence.
    """
    _check_dim(d)
    if N < 0:
        raise ValueError("N must be >= 0")
    a: list[Fraction] = [Fraction(1)]
    dd = d ** d
    for n in range(N):
        num = 1
        for j in range(1, d + 1):
            num *= d * n + j
        a.append(a[n] * Fraction(num, dd * (n + 1) ** d))
    if a[min(N, 3)] * r_power_norm_sq(d, min(N, 3)) != 1:
        raise AssertionError("kernel sequence recurrence drifted from the closed form")
    return KernelSequence(d=d, N=N, a_exact=tuple(a), a_float=tuple(float(q) for q in a))


def float_coeff_sequence(d: int, n_max: int) -> np.ndarray:
    """a_n for n = 0..n_max in float64 via the same recurrence, O(n_max)."""
    _check_dim(d)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    out = np.empty(n_max + 1, dtype=np.float64)
    a = 1.0
    dd = float(d ** d)
    for n in range(n_max + 1):
        out[n] = a
        num = 1.0
        for j in range(1, d + 1):
            num *= d * n + j
        a *= num / (dd * (n + 1.0) ** d)
    return out


def dirichlet_coeff_check(n: int) -> bool:
    """For d = 2: a_n equals (-1)^n * binom(-1/2, n), the Taylor coefficient
    of (1 - x)^(-1/2). Exact comparison."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a_n = Fraction(1) / r_power_norm_sq(2, n)
    # binom(-1/2, n) = prod_{j=1..n} (-1/2 - (j-1)) / n!
    num = Fraction(1)
    for j in range(n):
        num *= Fraction(-1, 2) - j
    binom = num / math.factorial(n)
    return a_n == (-1) ** n * binom


@dataclass(frozen=True)
class PartialSum:
    d: int
    N: int
    partial: float
    tail_estimate: float

    def to_json(self) -> dict:
        return {"d": self.d, "N": self.N, "partial": self.partial,
                "tail_estimate": self.tail_estimate}


def sum_a_partial(d: int, N: int) -> PartialSum:
    """Partial sum of the weights, sum_{n<=N} a_n, with a tail estimate.

    d = 4: the tail is estimated by integral comparison against
    C (n+1)^(-3/2) with C read off at n = N. d = 2: the sum diverges like
    2 sqrt(N) / sqrt(pi); the "tail estimate" reports the next increment,
    a_{N+1}, as a divergence-rate witness.
    """
    seq = float_coeff_sequence(d, N + 1)
    partial = float(np.sum(seq[: N + 1]))
    if d == 4:
        c = float(seq[N]) * (N + 1.0) ** 1.5
        tail = 2.0 * c / math.sqrt(N + 1.0)
    else:
        tail = float(seq[N + 1])
    return PartialSum(d=d, N=N, partial=partial, tail_estimate=tail)


@dataclass(frozen=True)
class KernelValue:
    value: complex
    n_terms: int
    tail_bound: float
    rigorous: bool

    def to_json(self) -> dict:
        return {
            "value": {"re": self.value.real, "im": self.value.imag},
            "n_terms": self.n_terms,
            "tail_bound": self.tail_bound,
            "rigorous": self.rigorous,
        }


def kernel_eval(seq: KernelSequence, z: complex, w: complex) -> KernelValue:
    """Partial kernel sum K_N(z, w) = sum_{n<=N} a_n (z conj(w))^n.

    For d = 2 the full kernel is (1 - z conj(w))^(-1/2); it requires
    |z conj(w)| < 1 (ValueError otherwise) and the returned tail bound
    a_{N+1} rho^(N+1) / (1 - rho) is rigorous since a_n is nonincreasing.
    For d = 4 the tail is an integral-comparison estimate of sum_{n>N} a_n
    and is flagged non-rigorous.
    """
    u = complex(z) * complex(w).conjugate()
    rho = abs(u)
    if seq.d == 2 and rho >= 1.0:
        raise ValueError("d = 2 kernel sum diverges for |z conj(w)| >= 1")

    value = 0j
    upow = 1.0 + 0j
    for n in range(seq.N + 1):
        value += seq.a_float[n] * upow
        upow *= u

    # one extra weight past the stored range
    a_next = float(float_coeff_sequence(seq.d, seq.N + 1)[seq.N + 1])
    if seq.d == 2:
        tail = a_next * rho ** (seq.N + 1) / (1.0 - rho)
        rigorous = True
    else:
        c = seq.a_float[seq.N] * (seq.N + 1.0) ** 1.5
        tail = 2.0 * c / math.sqrt(seq.N + 1.0)
        if rho < 1.0:
            tail = min(tail, a_next * rho ** (seq.N + 1) / (1.0 - rho))
        rigorous = rho < 1.0
    return KernelValue(value=value, n_terms=seq.N + 1, tail_bound=tail, rigorous=rigorous)

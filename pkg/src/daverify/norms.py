"""Drury-Arveson norms of monomials and polynomials, exactly.

The space H^2_d on the unit ball of C^d has reproducing kernel
1/(1 - <z,w>), and the monomials are orthogonal with

    ||z^alpha||^2 = alpha! / |alpha|!

All norm computations here return Fractions; floating point appears only in
the asymptotic-ratio helpers, which exist to be compared against their exact
counterparts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .exact import (
    MultiIndex,
    Polynomial,
    QComplex,
    ScalarLike,
    validate_multi_index,
)

# The ring maps z -> r(z) are built from c * z_1...z_d with c^2 = d^d.
# For d in {2, 4} the scale c = d^(d/2) is an integer, so r has exact
# integer coefficients: r = 2 z1 z2 and r = 16 z1 z2 z3 z4.
_DISC_SCALE = {2: 2, 4: 16}


def disc_map_scale(d: int) -> int:
    """Integer c with c^2 = d^d, defined for d in {2, 4}."""
    try:
        return _DISC_SCALE[d]
    except KeyError:
        raise ValueError(f"disc map scale is defined for d in {{2, 4}}, got {d}")


@lru_cache(maxsize=None)
def monomial_norm_sq(alpha: MultiIndex) -> Fraction:
    """Exact squared H^2_d norm of z^alpha: alpha!/|alpha|!."""
    a = validate_multi_index(alpha)
    num = 1
    for ai in a:
        num *= math.factorial(ai)
    return Fraction(num, math.factorial(sum(a)))


def da_inner(p: Polynomial, q: Polynomial) -> QComplex:
    """Exact H^2_d inner product <p, q> = sum_alpha p_a conj(q_a) ||z^a||^2."""
    if p.dimension != q.dimension:
        raise ValueError(f"dimension mismatch: {p.dimension} vs {q.dimension}")
    small, big = (p.terms, q.terms) if len(p.terms) <= len(q.terms) else (q.terms, p.terms)
    total = QComplex()
    for alpha in small:
        if alpha in big:
            c = p.terms[alpha] * q.terms[alpha].conjugate()
            total = total + c * monomial_norm_sq(alpha)
    return total


def r_power_norm_sq(d: int, n: int) -> Fraction:
    """Exact ||r(z)^n||^2 in H^2_d where r = c * z_1...z_d with c^2 = d^d.

    Equals d^(d n) * (n!)^d / (d n)!.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if n < 0:
        raise ValueError("n must be >= 0")
    return Fraction(d ** (d * n) * math.factorial(n) ** d, math.factorial(d * n))


def stirling_ratio(d: int, n: int) -> float:
    """d^(dn) ||(z_1...z_d)^n||^2 / (n+1)^((d-1)/2), a bounded ratio in n.

    Stays in a fixed positive interval for every n; as n grows it approaches
    sqrt(pi) for d = 2 and (2 pi)^(3/2) / 2 for d = 4, and it is identically
    1 for d = 1.
    """
    return float(r_power_norm_sq(d, n)) / float(n + 1) ** ((d - 1) / 2.0)


def stirling_ratio_sweep(d: int, n_max: int) -> np.ndarray:
    """stirling_ratio(d, n) for n = 0..n_max via a float recurrence.

    One multiplicative update per step, so the whole sweep is O(n_max).
    Agrees with the exact-rational route to near machine precision; tests
    pin that down.
    """
    if d < 1 or n_max < 0:
        raise ValueError("need d >= 1 and n_max >= 0")
    vals = np.empty(n_max + 1, dtype=np.float64)
    a = 1.0  # running value of ||r^n||^2
    dd = float(d ** d)
    for n in range(n_max + 1):
        vals[n] = a / (n + 1.0) ** ((d - 1) / 2.0)
        # ||r^(n+1)||^2 / ||r^n||^2 = d^d (n+1)^d / prod_{j=1..d} (dn+j)
        num = dd * (n + 1.0) ** d
        den = 1.0
        for j in range(1, d + 1):
            den *= d * n + j
        a *= num / den
    return vals


def compose_with_r(f_coeffs: Sequence[ScalarLike], d: int) -> Polynomial:
    """Map a one-variable polynomial sum f_n w^n to sum f_n r(z)^n in H^2_d."""
    c = disc_map_scale(d)
    terms = {}
    for n, fn in enumerate(f_coeffs):
        qc = QComplex.from_value(fn)
        if qc.is_zero():
            continue
        terms[(n,) * d] = qc * c ** n
    return Polynomial(d, terms)


@dataclass(frozen=True)
class IsometryReport:
    d: int
    degree: int
    disc_norm_sq: Fraction
    da_norm_sq: Fraction
    equal: bool

    def to_json(self) -> dict:
        from .exact import format_rational

        return {
            "d": self.d,
            "degree": self.degree,
            "disc_norm_sq": format_rational(self.disc_norm_sq),
            "da_norm_sq": format_rational(self.da_norm_sq),
            "equal": self.equal,
        }


def isometry_check(f_coeffs: Sequence[ScalarLike], d: int, a_seq=None) -> IsometryReport:
    """Verify, exactly, that f -> f(r(z)) is isometric from the weighted disc
    space with weights a_n = 1/||r^n||^2 into H^2_d.

    Left side: sum |f_n|^2 / a_n. Right side: ||f(r(z))||^2 computed through
    the multinomial norm route. The two are required to agree as Fractions.

    a_seq, when given, must provide exact weights consistent with d (duck
    typed: needs .d and .a_exact); it is spot-checked against
    r_power_norm_sq before use.
    """
    coeffs = [QComplex.from_value(c) for c in f_coeffs]
    deg = len(coeffs) - 1 if coeffs else 0

    if a_seq is not None:
        if getattr(a_seq, "d", None) != d:
            raise ValueError("weight sequence dimension does not match d")
        a_exact = a_seq.a_exact
        if len(a_exact) < len(coeffs):
            raise ValueError("weight sequence shorter than coefficient list")
        for probe in {0, min(1, deg), deg}:
            if a_exact[probe] * r_power_norm_sq(d, probe) != 1:
                raise ValueError("weight sequence inconsistent with r_power_norm_sq")
        inv_weights = [Fraction(1) / a_exact[n] for n in range(len(coeffs))]
    else:
        inv_weights = [r_power_norm_sq(d, n) for n in range(len(coeffs))]

    lhs = Fraction(0)
    for n, fn in enumerate(coeffs):
        lhs += fn.abs2() * inv_weights[n]

    composed = compose_with_r(coeffs, d)
    rhs_qc = da_inner(composed, composed)
    if rhs_qc.im != 0:
        raise AssertionError("self inner product came out non-real")
    rhs = rhs_qc.re

    return IsometryReport(d=d, degree=deg, disc_norm_sq=lhs, da_norm_sq=rhs, equal=lhs == rhs)


def extension_norm_check(alpha: Sequence[int], d_prime: int) -> bool:
    """Check that z^alpha keeps the same norm when H^2_d sits inside H^2_d'.

    The inclusion pads alpha with zeros; the norm formula alpha!/|alpha|! is
    unchanged because 0! = 1. Returns True when the two exact norms agree.
    """
    a = validate_multi_index(alpha)
    if d_prime < len(a):
        raise ValueError("d_prime must be at least the length of alpha")
    padded = a + (0,) * (d_prime - len(a))
    return monomial_norm_sq(a) == monomial_norm_sq(padded)

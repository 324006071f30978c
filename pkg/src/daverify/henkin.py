"""Measures on the unit sphere that represent evaluation-type functionals on
polynomials without being Henkin in the classical sense.

Two constructions, both pushforwards onto sphere subsets:

  D4: on the sphere of C^4, the image of normalized Haar measure on the
      3-torus under h(zeta) = (zeta_1, zeta_2, zeta_3, conj(zeta_1 zeta_2
      zeta_3)) / 2. Every monomial moment is an exact rational.

  D2: on the sphere of C^2, the image of (Haar on the circle) x (Cantor
      measure sigma) under (zeta, t) -> (zeta, conj(zeta) e^(2 pi i t)) / sqrt(2).
      The free circle phase kills every moment off the diagonal m = n, and
      there r(z) = 2 z1 z2 pushes to e^(2 pi i t), so the diagonal moments
      are Cantor Fourier coefficients scaled by 2^(-n).

For each variant there is a diagonal witness g in H^2_d with
integral(phi dmu) = <phi(z), g> for all polynomials phi, checked exactly
(D4) or to stated tolerance through two independent Fourier routes (D2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

import numpy as np

from .cantor import FourierTable, fourier_coeff
from .disc_kernel import KernelSequence, build_kernel_sequence
from .exact import (
    MultiIndex,
    Polynomial,
    QComplex,
    format_rational,
    multi_indices,
    validate_multi_index,
)
from .norms import da_inner, monomial_norm_sq

Variant = Literal["D4", "D2"]

_CANTOR_SAMPLE_DEPTH = 64  # base-3 digits drawn per Cantor sample; 3^-64 << 1 ulp


def _check_variant(variant: str) -> None:
    if variant not in ("D4", "D2"):
        raise ValueError(f"variant must be 'D4' or 'D2', got {variant!r}")


# ---------------------------------------------------------------------------
# closed-form moments


def moment_d4(alpha: Sequence[int]) -> Fraction:
    """Exact moment integral z^alpha dmu for the D4 measure.

    Nonzero only on the diagonal alpha = (k, k, k, k), where it equals
    2^(-4k): the torus average of zeta^(alpha_1 - alpha_4, ...) kills every
    off-diagonal monomial and the radius 1/2 contributes 2^(-|alpha|).
    """
    a = validate_multi_index(alpha)
    if len(a) != 4:
        raise ValueError("D4 moments take multi-indices of length 4")
    k = a[0]
    if all(ai == k for ai in a):
        return Fraction(1, 2 ** (4 * k))
    return Fraction(0)


def moment_d2(m: int, n: int, table: FourierTable) -> complex:
    """Moment integral z1^m z2^n dmu for the D2 measure.

    Zero unless m = n; on the diagonal it equals 2^(-n) sigma_hat(-n), read
    from the supplied Fourier table (ValueError if the table is too short).
    """
    if m < 0 or n < 0:
        raise ValueError("exponents must be >= 0")
    if m != n:
        return 0j
    if n > table.max_n:
        raise ValueError(f"fourier table covers |n| <= {table.max_n}, need {n}")
    return 2.0 ** (-n) * table[-n]


# ---------------------------------------------------------------------------
# samplers and the pushforward maps


def h_d4(zeta: np.ndarray) -> np.ndarray:
    """Map torus points (rows of a (m, 3) array) onto the C^4 sphere."""
    z4 = np.conj(zeta[:, 0] * zeta[:, 1] * zeta[:, 2])
    return 0.5 * np.column_stack([zeta[:, 0], zeta[:, 1], zeta[:, 2], z4])


def h_d2(zeta: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """Map circle x circle points (zeta, omega) to (zeta, conj(zeta) omega) / sqrt(2)
    on the C^2 sphere. The conjugate pairing makes z1 z2 = omega / 2."""
    return np.column_stack([zeta, np.conj(zeta) * omega]) / math.sqrt(2.0)


def sample_torus(count: int, rng: np.random.Generator, k: int = 3) -> np.ndarray:
    """count independent Haar samples on the k-torus, as unit complex entries."""
    theta = rng.random((count, k))
    return np.exp(2j * np.pi * theta)


def sample_cantor_points(count: int, rng: np.random.Generator,
                         depth: int = _CANTOR_SAMPLE_DEPTH) -> np.ndarray:
    """count independent samples t ~ sigma, via random base-3 digit strings
    with digits in {0, 2} truncated at `depth` digits."""
    digits = 2.0 * rng.integers(0, 2, size=(count, depth))
    scales = 3.0 ** -(np.arange(depth, dtype=np.float64) + 1.0)
    return digits @ scales


def sample_ball(count: int, rng: np.random.Generator, cdim: int,
                radius: float = 1.0) -> np.ndarray:
    """Uniform samples from the complex ball of the given radius in C^cdim."""
    g = rng.standard_normal((count, cdim)) + 1j * rng.standard_normal((count, cdim))
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    directions = g / norms
    # uniform in the real 2*cdim-dimensional ball
    radii = radius * rng.random((count, 1)) ** (1.0 / (2 * cdim))
    return directions * radii


def sample_sphere(count: int, rng: np.random.Generator, cdim: int) -> np.ndarray:
    g = rng.standard_normal((count, cdim)) + 1j * rng.standard_normal((count, cdim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


@dataclass(frozen=True)
class PushforwardMeasure:
    """Handle bundling a variant with the Fourier data the D2 moments need."""

    variant: Variant
    table: Optional[FourierTable] = None

    def __post_init__(self):
        _check_variant(self.variant)
        if self.variant == "D2" and self.table is None:
            raise ValueError("the D2 measure needs a FourierTable for its moments")

    def moment(self, alpha: Sequence[int]):
        if self.variant == "D4":
            return moment_d4(alpha)
        a = validate_multi_index(alpha)
        if len(a) != 2:
            raise ValueError("D2 moments take multi-indices of length 2")
        return moment_d2(a[0], a[1], self.table)

    def sample(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """count points on the sphere distributed according to the measure."""
        if self.variant == "D4":
            return h_d4(sample_torus(count, rng, 3))
        zeta1 = sample_torus(count, rng, 1)[:, 0]
        t = sample_cantor_points(count, rng)
        return h_d2(zeta1, np.exp(2j * np.pi * t))


# ---------------------------------------------------------------------------
# Monte Carlo cross-checks

# A moment whose sampled integrand is constant has zero empirical variance,
# so the 4-sigma window degenerates; the absolute floor keeps the comparison
# meaningful there.
_MC_ABS_FLOOR = 1e-13


@dataclass(frozen=True)
class MomentReport:
    variant: Variant
    alpha: MultiIndex
    closed_form: complex
    closed_form_exact: Optional[str]
    mc_estimate: complex
    mc_stderr: float
    within_4_sigma: bool

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "alpha": list(self.alpha),
            "closed_form": {"re": self.closed_form.real, "im": self.closed_form.imag},
            "closed_form_exact": self.closed_form_exact,
            "mc_estimate": {"re": self.mc_estimate.real, "im": self.mc_estimate.imag},
            "mc_stderr": self.mc_stderr,
            "within_4_sigma": self.within_4_sigma,
        }


def _monomial_values(variant: Variant, alpha: MultiIndex,
                     points: np.ndarray) -> np.ndarray:
    vals = np.ones(len(points), dtype=np.complex128)
    for j, aj in enumerate(alpha):
        if aj:
            vals *= points[:, j] ** aj
    return vals


def _mc_report(variant: Variant, alpha: MultiIndex, points: np.ndarray,
               closed: complex, exact_str: Optional[str]) -> MomentReport:
    vals = _monomial_values(variant, alpha, points)
    est = complex(np.mean(vals))
    m = len(vals)
    var = float(np.var(vals.real) + np.var(vals.imag))
    stderr = math.sqrt(var / m)
    ok = abs(est - closed) <= max(4.0 * stderr, _MC_ABS_FLOOR)
    return MomentReport(variant=variant, alpha=alpha, closed_form=closed,
                        closed_form_exact=exact_str, mc_estimate=est,
                        mc_stderr=stderr, within_4_sigma=ok)


def mc_moment(variant: Variant, alpha: Sequence[int], samples: int, seed: int,
              table: Optional[FourierTable] = None) -> MomentReport:
    """Monte Carlo estimate of one moment against its closed form.

    Requires samples >= 1000 so the standard error is meaningful. The check
    passes when |estimate - closed| <= max(4 stderr, 1e-13).
    """
    _check_variant(variant)
    if samples < 1000:
        raise ValueError("samples must be >= 1000")
    a = validate_multi_index(alpha)
    rng = np.random.default_rng(seed)
    if variant == "D4":
        measure = PushforwardMeasure("D4")
        closed_exact = moment_d4(a)
        closed = complex(float(closed_exact), 0.0)
        exact_str = format_rational(closed_exact)
    else:
        if table is None:
            table = fourier_table_for(max(a))
        measure = PushforwardMeasure("D2", table)
        closed = measure.moment(a)
        exact_str = None
    points = measure.sample(samples, rng)
    return _mc_report(variant, a, points, closed, exact_str)


def fourier_table_for(max_n: int, eps: float = 1e-12) -> FourierTable:
    """Small convenience recursion table sized for moment lookups."""
    from .cantor import fourier_table_recursion

    return fourier_table_recursion(max_n, eps)


def mc_moment_batch(variant: Variant, count: int, samples: int, seed: int,
                    table: Optional[FourierTable] = None,
                    max_exp: int = 6) -> list[MomentReport]:
    """count Monte Carlo moment checks on one shared sample batch.

    Exponents are drawn deterministically from the seeded generator; every
    tenth multi-index is forced onto the diagonal so nonzero closed forms
    are always represented. Sharing one batch keeps 100 checks at 1e5
    samples fast without changing any single check's semantics.
    """
    _check_variant(variant)
    if samples < 1000:
        raise ValueError("samples must be >= 1000")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    dim = 4 if variant == "D4" else 2
    alphas: list[MultiIndex] = []
    for i in range(count):
        if i % 10 == 0:
            k = int(rng.integers(0, max_exp + 1))
            alphas.append((k,) * dim)
        else:
            alphas.append(tuple(int(x) for x in rng.integers(0, max_exp + 1, size=dim)))

    if variant == "D4":
        measure = PushforwardMeasure("D4")
    else:
        if table is None:
            table = fourier_table_for(max_exp)
        measure = PushforwardMeasure("D2", table)
    points = measure.sample(samples, rng)

    reports = []
    for a in alphas:
        if variant == "D4":
            ce = moment_d4(a)
            closed, exact_str = complex(float(ce), 0.0), format_rational(ce)
        else:
            closed, exact_str = measure.moment(a), None
        reports.append(_mc_report(variant, a, points, closed, exact_str))
    return reports


# ---------------------------------------------------------------------------
# the diagonal witness and the Henkin-type identity


@dataclass(frozen=True)
class HenkinWitness:
    """Truncation of the witness g = sum_n a_n c^(2n) conj(moment) (z_1...z_d)^n.

    For D4 the diagonal coefficients g_k = a_k 16^k are exact rationals and
    norm_sq_exact = sum a_k. For D2 the coefficients carry conj(sigma_hat(-n))
    and live in float; norm_sq then equals sum a_n |sigma_hat(n)|^2.
    """

    variant: Variant
    N: int
    diag_exact: Optional[tuple[Fraction, ...]]
    diag_float: tuple[complex, ...]
    norm_sq_exact: Optional[Fraction]
    norm_sq: float
    table_source: Optional[str] = None

    @property
    def dimension(self) -> int:
        return 4 if self.variant == "D4" else 2

    def as_polynomial(self) -> Polynomial:
        """Exact polynomial form; D4 only."""
        if self.variant != "D4":
            raise ValueError("only the D4 witness has exact coefficients")
        terms = {(k, k, k, k): QComplex(self.diag_exact[k]) for k in range(self.N + 1)}
        return Polynomial(4, terms)

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "N": self.N,
            "diag_coeffs": [{"re": c.real, "im": c.imag} for c in self.diag_float],
            "norm_sq": self.norm_sq,
        }
        if self.diag_exact is not None:
            out["diag_coeffs_exact"] = [format_rational(q) for q in self.diag_exact]
            out["norm_sq_exact"] = format_rational(self.norm_sq_exact)
        if self.table_source is not None:
            out["table_source"] = self.table_source
        return out


def build_witness(variant: Variant, N: int,
                  table: Optional[FourierTable] = None) -> HenkinWitness:
    """Witness truncated at diagonal index N.

    D2 requires a Fourier table with max_n >= N; the table used is recorded
    in the report so independent-route checks stay auditable.
    """
    _check_variant(variant)
    if N < 0:
        raise ValueError("N must be >= 0")
    if variant == "D4":
        seq = build_kernel_sequence(4, N)
        diag = tuple(seq.a_exact[k] * Fraction(16 ** k) for k in range(N + 1))
        norm_sq = sum(seq.a_exact, Fraction(0))
        return HenkinWitness(
            variant="D4", N=N,
            diag_exact=diag,
            diag_float=tuple(complex(float(q), 0.0) for q in diag),
            norm_sq_exact=norm_sq, norm_sq=float(norm_sq),
        )
    if table is None or table.max_n < N:
        raise ValueError("D2 witness needs a FourierTable with max_n >= N")
    seq = build_kernel_sequence(2, N)
    diag = []
    norm_sq = 0.0
    for n in range(N + 1):
        s = table[-n]
        diag.append(float(seq.a_exact[n] * Fraction(2 ** n)) * s.conjugate())
        norm_sq += seq.a_float[n] * abs(table[n]) ** 2
    return HenkinWitness(
        variant="D2", N=N, diag_exact=None, diag_float=tuple(diag),
        norm_sq_exact=None, norm_sq=norm_sq, table_source=table.source,
    )


@dataclass(frozen=True)
class HenkinCheckResult:
    variant: Variant
    maxdeg: int
    checked: int
    max_dev: float
    failures: tuple
    passed: bool

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "maxdeg": self.maxdeg,
            "checked": self.checked,
            "max_dev": self.max_dev,
            "failures": [list(f) for f in self.failures],
            "passed": self.passed,
        }


def henkin_identity_check(variant: Variant, maxdeg: int, witness: HenkinWitness,
                          table: Optional[FourierTable] = None,
                          tol: float = 1e-10) -> HenkinCheckResult:
    """Verify integral(z^alpha dmu) = <z^alpha, g> on every monomial.

    D4: all alpha with |alpha| <= maxdeg, compared as exact rationals; tol is
    ignored and max_dev is 0 on success. Requires witness.N >= maxdeg // 4.

    D2: all pairs (m, n) with m, n <= maxdeg. Off-diagonal entries are exact
    zeros on both sides; diagonal entries compare the moment route (through
    `table`, which should come from a builder independent of the witness's)
    against the inner-product route, to tolerance tol. Requires
    witness.N >= maxdeg.
    """
    _check_variant(variant)
    if variant != witness.variant:
        raise ValueError("witness variant does not match")
    if maxdeg < 0:
        raise ValueError("maxdeg must be >= 0")

    failures: list[tuple] = []
    if variant == "D4":
        if witness.N < maxdeg // 4:
            raise ValueError("witness truncation too small for maxdeg")
        g = witness.as_polynomial()
        checked = 0
        for alpha in multi_indices(4, maxdeg):
            lhs = moment_d4(alpha)
            rhs = da_inner(Polynomial.monomial(alpha), g)
            if not (rhs.im == 0 and rhs.re == lhs):
                failures.append(alpha)
            checked += 1
        return HenkinCheckResult(variant="D4", maxdeg=maxdeg, checked=checked,
                                 max_dev=0.0 if not failures else math.inf,
                                 failures=tuple(failures), passed=not failures)

    if witness.N < maxdeg:
        raise ValueError("witness truncation too small for maxdeg")
    if table is None:
        raise ValueError("the D2 check needs a moment-route FourierTable")
    if table.max_n < maxdeg:
        raise ValueError("moment-route table too short for maxdeg")
    checked = 0
    max_dev = 0.0
    for m in range(maxdeg + 1):
        for n in range(maxdeg + 1):
            if m == n:
                lhs = moment_d2(n, n, table)
                rhs = witness.diag_float[n].conjugate() * float(monomial_norm_sq((n, n)))
                dev = abs(lhs - rhs)
                max_dev = max(max_dev, dev)
                if dev > tol:
                    failures.append((m, n))
            else:
                # both routes vanish identically; record the comparison
                if moment_d2(m, n, table) != 0:
                    failures.append((m, n))
            checked += 1
    return HenkinCheckResult(variant="D2", maxdeg=maxdeg, checked=checked,
                             max_dev=max_dev, failures=tuple(failures),
                             passed=not failures)


def henkin_identity_on_poly(phi: Polynomial, witness: HenkinWitness,
                            table: Optional[FourierTable] = None):
    """Both sides of the identity for one polynomial: (integral, inner).

    D4 returns a pair of QComplex, exactly. D2 returns a pair of complex.
    """
    if witness.variant == "D4":
        if phi.dimension != 4:
            raise ValueError("D4 takes 4-variable polynomials")
        integral = QComplex()
        for alpha, c in phi.terms.items():
            integral = integral + c * moment_d4(alpha)
        inner = da_inner(phi, witness.as_polynomial())
        return integral, inner
    if phi.dimension != 2:
        raise ValueError("D2 takes 2-variable polynomials")
    if table is None:
        raise ValueError("the D2 route needs a FourierTable")
    integral = 0j
    inner = 0j
    for (m, n), c in phi.terms.items():
        integral += complex(c) * moment_d2(m, n, table)
        if m == n and n <= witness.N:
            inner += complex(c) * witness.diag_float[n].conjugate() \
                * float(monomial_norm_sq((n, n)))
    return integral, inner


# ---------------------------------------------------------------------------
# failure of the classical Henkin property


@dataclass(frozen=True)
class NonHenkinReport:
    n_max: int
    integrals_all_one: bool
    integral_failures: tuple[int, ...]
    grid_points: int
    grid_radius: float
    max_base_abs: float
    sup_ball_ok: bool
    n_below_threshold: int
    threshold: float
    max_fn_final: float
    origin_value_final: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "integrals_all_one": self.integrals_all_one,
            "integral_failures": list(self.integral_failures),
            "grid_points": self.grid_points,
            "grid_radius": self.grid_radius,
            "max_base_abs": self.max_base_abs,
            "sup_ball_ok": self.sup_ball_ok,
            "n_below_threshold": self.n_below_threshold,
            "threshold": self.threshold,
            "max_fn_final": self.max_fn_final,
            "origin_value_final": self.origin_value_final,
            "passed": self.passed,
        }


def _r4_values(points: np.ndarray) -> np.ndarray:
    return 16.0 * points[:, 0] * points[:, 1] * points[:, 2] * points[:, 3]


def non_henkin_witness(n_max: int = 50, grid_points: int = 1000,
                       grid_radius: float = 0.9, seed: int = 0,
                       decay_n: int = 1000,
                       threshold: float = 1e-6) -> NonHenkinReport:
    """The sequence f_n = ((1 + r)/2)^n against the D4 measure.

    (i) integral f_n dmu = 1 exactly for n <= n_max, by binomial expansion
        in exact rationals: every power r^j integrates to 1.
    (ii) on a seeded interior sample of the ball of radius grid_radius, the
        sup of |f_n| decreases geometrically (it equals max|f_1|^n) and must
        drop below `threshold` by n = decay_n. Also f_n(0) = 2^(-n) -> 0.
    (iii) on a seeded sample of the closed ball, sup |f_1| <= 1 + 1e-12.

    Together these witness that integral(f_n dmu) fails to converge to 0
    while f_n -> 0 pointwise inside the ball with sup norms at most 1.
    """
    if n_max < 0 or decay_n < 1 or grid_points < 1:
        raise ValueError("bad sizes")
    if not 0.0 < grid_radius < 1.0:
        raise ValueError("grid_radius must lie strictly inside (0, 1)")

    # (i) exact integrals
    failures = []
    for n in range(n_max + 1):
        total = Fraction(0)
        for j in range(n + 1):
            total += math.comb(n, j) * Fraction(16 ** j) * moment_d4((j, j, j, j))
        if total * Fraction(1, 2 ** n) != 1:
            failures.append(n)

    # (ii) interior decay on a fixed seeded grid
    rng = np.random.default_rng(seed)
    interior = sample_ball(grid_points, rng, 4, radius=grid_radius)
    base = 0.5 * (1.0 + _r4_values(interior))
    max_base = float(np.max(np.abs(base)))
    if max_base < 1.0:
        n_star = max(1, math.ceil(math.log(threshold) / math.log(max_base)))
    else:
        n_star = -1
    max_fn_final = max_base ** decay_n

    # (iii) sup certificate on the closed ball (interior plus sphere samples)
    closed_pts = np.vstack([
        sample_ball(grid_points, rng, 4, radius=1.0),
        sample_sphere(grid_points, rng, 4),
    ])
    f1_closed = 0.5 * (1.0 + _r4_values(closed_pts))
    sup_ok = bool(np.max(np.abs(f1_closed)) <= 1.0 + 1e-12)

    passed = (not failures) and sup_ok and 0 < n_star <= decay_n \
        and max_fn_final < threshold
    return NonHenkinReport(
        n_max=n_max, integrals_all_one=not failures,
        integral_failures=tuple(failures), grid_points=grid_points,
        grid_radius=grid_radius, max_base_abs=max_base, sup_ball_ok=sup_ok,
        n_below_threshold=n_star, threshold=threshold,
        max_fn_final=max_fn_final, origin_value_final=2.0 ** (-decay_n),
        passed=passed,
    )


# ---------------------------------------------------------------------------
# peak behaviour of f = (1 + r)/2 on the D4 support


@dataclass(frozen=True)
class PeakReport:
    samples: int
    delta: float
    max_peak_dev: float
    support_dev: float
    kept: int
    rejected: int
    min_margin: float
    all_strictly_inside: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "delta": self.delta,
            "max_peak_dev": self.max_peak_dev,
            "support_dev": self.support_dev,
            "kept": self.kept,
            "rejected": self.rejected,
            "min_margin": self.min_margin,
            "all_strictly_inside": self.all_strictly_inside,
            "passed": self.passed,
        }


def peak_check(samples: int = 10_000, seed: int = 0, delta: float = 1e-2,
               peak_tol: float = 1e-12) -> PeakReport:
    """f = (1 + r)/2 equals 1 on the D4 support and is strictly smaller
    elsewhere on the closed ball.

    On `samples` pushforward points: |f - 1| <= peak_tol and the points sit
    on the sphere to the same tolerance. On `samples` closed-ball points with
    |r(z) - 1| > delta: |f| < 1 strictly; the minimum margin 1 - |f| is
    reported.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if delta <= 0:
        raise ValueError("delta must be positive")
    rng = np.random.default_rng(seed)

    support = PushforwardMeasure("D4").sample(samples, rng)
    support_dev = float(np.max(np.abs(np.sum(np.abs(support) ** 2, axis=1) - 1.0)))
    f_support = 0.5 * (1.0 + _r4_values(support))
    max_peak_dev = float(np.max(np.abs(f_support - 1.0)))

    half = samples // 2
    pts = np.vstack([
        sample_ball(samples - half, rng, 4, radius=1.0),
        sample_sphere(half, rng, 4),
    ])
    r_vals = _r4_values(pts)
    mask = np.abs(r_vals - 1.0) > delta
    f_vals = 0.5 * (1.0 + r_vals[mask])
    margins = 1.0 - np.abs(f_vals)
    min_margin = float(np.min(margins)) if len(margins) else math.inf
    all_inside = bool(np.all(margins > 0.0)) if len(margins) else True

    passed = max_peak_dev <= peak_tol and support_dev <= peak_tol and all_inside
    return PeakReport(samples=samples, delta=delta, max_peak_dev=max_peak_dev,
                      support_dev=support_dev, kept=int(mask.sum()),
                      rejected=int((~mask).sum()), min_margin=min_margin,
                      all_strictly_inside=all_inside, passed=passed)


# ---------------------------------------------------------------------------
# the norm bound |integral(phi dmu)| <= ||phi|| ||g||


@dataclass(frozen=True)
class FunctionalBoundReport:
    variant: Variant
    trials: int
    max_ratio: float
    failures: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "trials": self.trials,
            "max_ratio": self.max_ratio,
            "failures": self.failures,
            "passed": self.passed,
        }


def functional_bound_check(witness: HenkinWitness, trials: int, seed: int,
                           table: Optional[FourierTable] = None,
                           slack: float = 1e-9) -> FunctionalBoundReport:
    """Random polynomials phi with degree inside the witness truncation must
    satisfy |integral(phi dmu)| <= ||phi||_{H^2_d} ||g|| + slack.

    Degrees are capped so the truncated witness is exact for every phi
    tried; the bound is then Cauchy-Schwarz and the slack only absorbs float
    roundoff.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    g_norm = math.sqrt(witness.norm_sq)
    dim = witness.dimension
    if witness.variant == "D2" and table is None:
        raise ValueError("the D2 bound check needs a FourierTable")

    max_ratio = 0.0
    failures = 0
    for _ in range(trials):
        n_terms = int(rng.integers(1, 12))
        coeffs: dict[MultiIndex, complex] = {}
        for _ in range(n_terms):
            if witness.variant == "D4":
                alpha = tuple(int(x) for x in rng.integers(0, witness.N + 1, size=4))
            else:
                alpha = tuple(int(x) for x in rng.integers(0, witness.N + 1, size=2))
            c = complex(rng.standard_normal(), rng.standard_normal())
            coeffs[alpha] = coeffs.get(alpha, 0j) + c
        lhs = 0j
        norm_sq = 0.0
        for alpha, c in coeffs.items():
            if witness.variant == "D4":
                lhs += c * float(moment_d4(alpha))
            else:
                lhs += c * moment_d2(alpha[0], alpha[1], table)
            norm_sq += abs(c) ** 2 * float(monomial_norm_sq(alpha))
        rhs = math.sqrt(norm_sq) * g_norm + slack
        ratio = abs(lhs) / rhs
        max_ratio = max(max_ratio, ratio)
        if abs(lhs) > rhs:
            failures += 1
    return FunctionalBoundReport(variant=witness.variant, trials=trials,
                                 max_ratio=max_ratio, failures=failures,
                                 passed=failures == 0)

"""Finite sections of multiplication operators on H^2_d.

The compression of M_phi to the span of monomials of degree <= N is a
rectangular matrix in the normalized monomial basis e_alpha = z^alpha /
||z^alpha||; its top singular value lower-bounds the multiplier norm of phi.
Computed by power iteration on the Gram matrix with a deterministic start,
no general-purpose eigensolver involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exact import MultiIndex, Polynomial, multi_indices
from .norms import monomial_norm_sq, r_power_norm_sq


@dataclass(frozen=True)
class MultMatrix:
    """Matrix of M_phi from degrees <= N into degrees <= N + deg(phi).

    entry[beta, alpha] = phi_{beta - alpha} * sqrt(nu(beta) / nu(alpha))
    with nu the squared monomial norm; the square root converts between the
    normalized bases on either side.
    """

    phi: Polynomial
    d: int
    N: int
    entries: np.ndarray
    columns: tuple[MultiIndex, ...]
    rows: tuple[MultiIndex, ...]

    def to_json(self) -> dict:
        return {
            "phi": self.phi.to_json(),
            "d": self.d,
            "N": self.N,
            "shape": list(self.entries.shape),
        }


def mult_matrix(phi: Polynomial, N: int) -> MultMatrix:
    """Assemble the finite section of M_phi in the normalized monomial basis."""
    if N < 0:
        raise ValueError("N must be >= 0")
    d = phi.dimension
    cols = multi_indices(d, N)
    rows = multi_indices(d, N + phi.degree())
    row_pos = {beta: i for i, beta in enumerate(rows)}
    A = np.zeros((len(rows), len(cols)), dtype=np.complex128)
    for j, alpha in enumerate(cols):
        nu_alpha = monomial_norm_sq(alpha)
        for gamma, c in phi.terms.items():
            beta = tuple(a + g for a, g in zip(alpha, gamma))
            weight = math.sqrt(float(monomial_norm_sq(beta) / nu_alpha))
            A[row_pos[beta], j] += complex(c) * weight
    return MultMatrix(phi=phi, d=d, N=N, entries=A,
                      columns=tuple(cols), rows=tuple(rows))


def top_singular_value(A: np.ndarray, tol: float = 1e-12,
                       max_iter: int = 20_000) -> float:
    """Largest singular value by power iteration on the Gram matrix A* A.

    Deterministic: starts from the normalized all-ones vector and stops when
    the eigen-residual ||A*A v - lambda v|| drops below tol * lambda. The
    Rayleigh quotient is then accurate to about the residual squared over
    the spectral gap, so the returned sigma is converged well past tol.
    """
    if A.ndim != 2:
        raise ValueError("need a matrix")
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0.0
    ncols = A.shape[1]
    v = np.ones(ncols, dtype=np.complex128) / math.sqrt(ncols)
    lam = 0.0
    for _ in range(max_iter):
        u = A.conj().T @ (A @ v)
        lam = float(np.real(np.vdot(v, u)))
        residual = float(np.linalg.norm(u - lam * v))
        if residual <= tol * max(lam, 1e-300):
            break
        nu = float(np.linalg.norm(u))
        if nu == 0.0:
            return 0.0
        v = u / nu
    return math.sqrt(max(lam, 0.0))


def compression_norm(phi: Polynomial, N: int, tol: float = 1e-12) -> float:
    """Top singular value of the degree-N section of M_phi; a lower bound
    for the multiplier norm, nondecreasing in N."""
    return top_singular_value(mult_matrix(phi, N).entries, tol=tol)


def diagonal_shift_weights(d: int, N: int) -> list[float]:
    """Weights of the diagonal orbit of M_r: the entry taking (z_1...z_d)^n
    to (z_1...z_d)^(n+1) in the normalized basis, for n = 0..N.

    Equals sqrt(||r^(n+1)||^2 / ||r^n||^2) = sqrt(a_n / a_{n+1}); its maximum
    over any section is attained at n = 0.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    return [
        math.sqrt(float(r_power_norm_sq(d, n + 1) / r_power_norm_sq(d, n)))
        for n in range(N + 1)
    ]


def r_polynomial(d: int) -> Polynomial:
    """The sphere-adapted monomial r: 2 z1 z2 for d = 2, 16 z1 z2 z3 z4 for d = 4."""
    from .norms import disc_map_scale

    c = disc_map_scale(d)
    return Polynomial.monomial((1,) * d, c)

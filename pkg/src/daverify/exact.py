"""Exact arithmetic core: Gaussian rationals, multi-indices, sparse polynomials.

Everything downstream that claims an identity holds *exactly* routes through
this module, so nothing here is allowed to touch floating point except the
explicit conversion helpers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

MultiIndex = tuple[int, ...]

RationalLike = Union[int, Fraction]
ScalarLike = Union[int, Fraction, "QComplex"]


def validate_multi_index(alpha: Sequence[int]) -> MultiIndex:
    """Return alpha as a tuple, rejecting negative or non-integer entries."""
    out = tuple(alpha)
    for a in out:
        if not isinstance(a, int) or isinstance(a, bool) or a < 0:
            raise ValueError(f"multi-index entries must be nonnegative integers, got {alpha!r}")
    return out


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def grlex_key(alpha: Sequence[int]) -> tuple:
    """Sort key for graded-lexicographic order (total degree first)."""
    return (sum(alpha), tuple(alpha))


def multi_indices(dimension: int, max_degree: int) -> list[MultiIndex]:
    """All multi-indices in `dimension` variables with total degree <= max_degree,
    in graded-lexicographic order."""
    if dimension < 1:
        raise ValueError("dimension must be >= 1")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")

    def gen(dim: int, cap: int) -> Iterator[MultiIndex]:
        if dim == 1:
            for a in range(cap + 1):
                yield (a,)
            return
        for a in range(cap + 1):
            for rest in gen(dim - 1, cap - a):
                yield (a,) + rest

    return sorted(gen(dimension, max_degree), key=grlex_key)


def format_rational(q: RationalLike) -> str:
    """Serialize a rational as "p/q" in lowest terms with q > 0."""
    f = Fraction(q)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(s: str) -> Fraction:
    """Inverse of format_rational. Accepts "p/q" and bare integers "p"."""
    text = s.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class QComplex:
    """Gaussian rational: complex number with Fraction real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def from_value(x: ScalarLike) -> "QComplex":
        if isinstance(x, QComplex):
            return x
        return QComplex(_as_fraction(x), Fraction(0))

    def __add__(self, other: ScalarLike) -> "QComplex":
        o = QComplex.from_value(other)
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "QComplex":
        o = QComplex.from_value(other)
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> "QComplex":
        return QComplex.from_value(other) - self

    def __mul__(self, other: ScalarLike) -> "QComplex":
        o = QComplex.from_value(other)
        return QComplex(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self) -> "QComplex":
        return QComplex(-self.re, -self.im)

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        if isinstance(other, QComplex):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @staticmethod
    def from_json(obj: Mapping[str, str]) -> "QComplex":
        return QComplex(parse_rational(obj["re"]), parse_rational(obj["im"]))


QC_ZERO = QComplex()
QC_ONE = QComplex(Fraction(1))


class Polynomial:
    """Sparse polynomial in several complex variables with QComplex coefficients.

    Terms are stored as a dict mapping multi-index to coefficient; zero
    coefficients are never stored. Equality and arithmetic are exact.
    """

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms: Mapping[MultiIndex, ScalarLike] | None = None):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        clean: dict[MultiIndex, QComplex] = {}
        for alpha, c in (terms or {}).items():
            a = validate_multi_index(alpha)
            if len(a) != dimension:
                raise ValueError(f"multi-index {a} does not match dimension {dimension}")
            qc = QComplex.from_value(c)
            if not qc.is_zero():
                clean[a] = qc
        self.terms = clean

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff: ScalarLike = 1) -> "Polynomial":
        a = validate_multi_index(alpha)
        return cls(len(a), {a: coeff})

    @classmethod
    def zero(cls, dimension: int) -> "Polynomial":
        return cls(dimension, {})

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree 0 by convention here."""
        if not self.terms:
            return 0
        return max(sum(a) for a in self.terms)

    def sorted_terms(self) -> list[tuple[MultiIndex, QComplex]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coefficient(self, alpha: Sequence[int]) -> QComplex:
        return self.terms.get(tuple(alpha), QC_ZERO)

    def _check_dim(self, other: "Polynomial") -> None:
        if self.dimension != other.dimension:
            raise ValueError(f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_dim(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, QC_ZERO) + c
        return Polynomial(self.dimension, out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + other.scale(-1)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_dim(other)
        out: dict[MultiIndex, QComplex] = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = out.get(key, QC_ZERO) + c * d
        return Polynomial(self.dimension, out)

    def scale(self, c: ScalarLike) -> "Polynomial":
        qc = QComplex.from_value(c)
        return Polynomial(self.dimension, {a: v * qc for a, v in self.terms.items()})

    def pow(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial(self.dimension, {(0,) * self.dimension: 1})
        base = self
        k = n
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def eval_complex(self, z: Sequence[complex]) -> complex:
        """Floating-point evaluation at a point."""
        if len(z) != self.dimension:
            raise ValueError("point dimension mismatch")
        total = 0j
        for a, c in self.terms.items():
            term = complex(c)
            for zi, ai in zip(z, a):
                if ai:
                    term *= zi ** ai
            total += term
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __repr__(self) -> str:
        parts = [f"{c.to_json()}*z^{a}" for a, c in self.sorted_terms()]
        body = " + ".join(parts) if parts else "0"
        return f"Polynomial(dim={self.dimension}, {body})"

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "terms": [
                {"alpha": list(a), "coeff": c.to_json()}
                for a, c in self.sorted_terms()
            ],
        }
